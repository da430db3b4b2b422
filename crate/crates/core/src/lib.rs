//! Reliability, latency and capacity planning for service function chains
//! that are split into parallel lower-capacity subchains.
//!
//! A chain of VNFs can be deployed four ways:
//!
//! * `sc`: one plain chain,
//! * `scb:<b>`: every VNF with `b` cold-standby backups,
//! * `mm1:<l>`: `l` parallel subchains at `1/l` capacity each,
//! * `mmm:<l>`: every VNF split into `l` instances behind one scheduler.
//!
//! [`model`] gives closed-form reliability and resources, [`queueing`] the
//! mean response times, [`planner`] picks the largest `l` that meets the
//! delay SLA, and [`sim`] checks all of it by discrete-event and Monte Carlo
//! simulation. [`bench`] and [`scenario`] drive experiments from scenario
//! files and emit CSV.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run -p sfc-subchain --example analyze_configs
//! ```

pub mod bench;
pub mod error;
pub mod model;
pub mod planner;
pub mod queueing;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
pub use model::{analyze, AnalysisReport, ChainConfig, SfcSpec, VnfSpec};
pub use planner::{plan, PlanRequest, PlanResult, Setting};
pub use scenario::{load_scenario, Scenario};
