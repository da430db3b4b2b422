//! Discrete-event simulation of the queueing network behind each
//! configuration, next to its closed-form mean response time.
//!
//! ```text
//! cargo run --release -p sfc-subchain --example simulate_tandem
//! ```

use sfc_subchain::queueing::sfc_response;
use sfc_subchain::sim::{build_topology, run_simulation, SimConfig};
use sfc_subchain::{ChainConfig, SfcSpec, VnfSpec};

fn main() -> sfc_subchain::Result<()> {
    let sfc = SfcSpec::homogeneous(4, VnfSpec::new(200.0, 0.9, 1.0)?, 100.0, 0.125)?;
    let configs = [
        ChainConfig::Sc,
        ChainConfig::subchain_mm1(2)?,
        ChainConfig::subchain_mm1(3)?,
        ChainConfig::common_scheduler_mmm(3)?,
        ChainConfig::common_scheduler_mmm(6)?,
    ];
    println!("{:>8}  {:>10}  {:>10}  {:>9}  {:>7}", "config", "analytic", "simulated", "ci95", "L/λW");
    for config in configs {
        let cfg = SimConfig::new(build_topology(&sfc, config), sfc.arrival_rate()).with_seed(1);
        let result = run_simulation(&cfg)?;
        let littles = result.mean_in_system() / (sfc.arrival_rate() * result.mean_response);
        println!(
            "{:>8}  {:>10.6}  {:>10.6}  {:>9.6}  {littles:>7.4}",
            config.to_string(),
            sfc_response(&sfc, config)?,
            result.mean_response,
            result.ci95_halfwidth,
        );
    }
    Ok(())
}
