//! Discrete-event and Monte Carlo checks for the closed forms.
//!
//! Queueing runs and availability draws are separate experiments: a
//! queueing run has no failures, and an availability trial has no time.

mod availability;
mod engine;
pub mod rng;
pub mod stats;
mod topology;

pub use availability::{estimate_availability, AvailabilityEstimate, MIN_TRIALS};
pub use engine::{
    run_simulation, ReplicationStats, SimConfig, SimResult, DEFAULT_MEASURED_DEPARTURES, DEFAULT_QUEUE_LIMIT,
    DEFAULT_REPLICATIONS, DEFAULT_WARMUP_DEPARTURES, MIN_MEASURED_DEPARTURES,
};
pub use rng::rng_exponential;
pub use topology::{build_topology, Station, Topology};
