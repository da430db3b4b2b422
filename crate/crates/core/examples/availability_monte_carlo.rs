//! Monte Carlo estimate of chain availability under independent VNF
//! failures, against the closed-form reliability.
//!
//! ```text
//! cargo run --release -p sfc-subchain --example availability_monte_carlo
//! ```

use sfc_subchain::model::reliability;
use sfc_subchain::sim::estimate_availability;
use sfc_subchain::{ChainConfig, SfcSpec, VnfSpec};

fn main() -> sfc_subchain::Result<()> {
    let vnfs = vec![
        VnfSpec::new(300.0, 0.95, 1.0)?,
        VnfSpec::new(250.0, 0.8, 2.0)?,
        VnfSpec::new(400.0, 0.9, 1.5)?,
    ];
    let sfc = SfcSpec::new(vnfs, 100.0, 0.1)?;
    let trials = 1_000_000;
    println!("{:>8}  {:>12}  {:>12}  {:>10}  {:>6}", "config", "closed form", "estimate", "ci95", "sigma");
    for config in [
        ChainConfig::Sc,
        ChainConfig::scb(1)?,
        ChainConfig::scb(2)?,
        ChainConfig::subchain_mm1(2)?,
        ChainConfig::subchain_mm1(4)?,
        ChainConfig::common_scheduler_mmm(2)?,
        ChainConfig::common_scheduler_mmm(4)?,
    ] {
        let exact = reliability(&sfc, config);
        let est = estimate_availability(&sfc, config, trials, 42)?;
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        println!(
            "{:>8}  {exact:>12.8}  {:>12.8}  {:>10.2e}  {:>6.2}",
            config.to_string(),
            est.estimate,
            est.ci95_halfwidth,
            (est.estimate - exact).abs() / sigma,
        );
    }
    Ok(())
}
