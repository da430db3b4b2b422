//! Loads a scenario file, reports what it describes, and shows the
//! line-tagged error for a broken one.
//!
//! ```text
//! cargo run -p sfc-subchain --example load_scenario -- crates/core/scenarios/table1.scenario
//! ```

use sfc_subchain::scenario::{SweepVariable, TABLE1_SCENARIO};
use sfc_subchain::{load_scenario, Scenario};

fn main() -> sfc_subchain::Result<()> {
    let scenario = match std::env::args().nth(1) {
        Some(path) => load_scenario(path)?,
        None => Scenario::table1(),
    };
    let sfc = &scenario.sfc;
    println!("scenario {}: {} VNFs, λ = {}, SLA = {} s", scenario.name, sfc.len(), sfc.arrival_rate(), sfc.delay_sla());
    for (i, v) in sfc.vnfs().iter().enumerate() {
        println!("  vnf {i}: μ = {}, p = {}, γ = {}", v.service_rate(), v.reliability(), v.resource_weight());
    }
    let labels: Vec<String> = scenario.configs.iter().map(ToString::to_string).collect();
    println!("configs: {}", labels.join(", "));
    if let Some(sweep) = scenario.sweep(SweepVariable::VnfCount) {
        println!("vnf_count sweep: {:?}", sweep.values());
    }

    let broken = TABLE1_SCENARIO.replacen("service_rate = 200.0", "service_rate = -5.0", 1);
    match Scenario::from_toml_str(&broken) {
        Ok(_) => println!("unexpectedly accepted a negative service rate"),
        Err(e) => println!("rejected edited copy (exit code {}): {e}", e.exit_code()),
    }
    Ok(())
}
