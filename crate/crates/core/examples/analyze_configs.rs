//! Closed-form reliability, response time and resources for each way of
//! deploying a four-VNF chain.
//!
//! ```text
//! cargo run -p sfc-subchain --example analyze_configs
//! ```

use sfc_subchain::{analyze, ChainConfig, SfcSpec, VnfSpec};

fn main() -> sfc_subchain::Result<()> {
    let vnf = VnfSpec::new(200.0, 0.9, 1.0)?;
    let sfc = SfcSpec::homogeneous(4, vnf, 100.0, 0.125)?;

    let configs = [
        ChainConfig::Sc,
        ChainConfig::scb(1)?,
        ChainConfig::scb(3)?,
        ChainConfig::subchain_mm1(3)?,
        ChainConfig::common_scheduler_mmm(3)?,
        ChainConfig::common_scheduler_mmm(6)?,
    ];
    println!("{:>8}  {:>12}  {:>12}  {:>9}  meets SLA", "config", "reliability", "response [s]", "resources");
    for config in configs {
        let report = analyze(&sfc, config);
        println!(
            "{:>8}  {:>12.8}  {:>12.6}  {:>9.1}  {}",
            config.to_string(),
            report.reliability,
            report.expected_response_time.unwrap_or(f64::NAN),
            report.total_resources,
            report.meets_sla(&sfc),
        );
    }
    Ok(())
}
