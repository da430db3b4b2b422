//! Largest subchain count that still meets the delay SLA, for both queueing
//! settings and a range of SLAs.
//!
//! ```text
//! cargo run -p sfc-subchain --example plan_subchains
//! ```

use sfc_subchain::{plan, Error, PlanRequest, Setting, SfcSpec, VnfSpec};

fn main() -> sfc_subchain::Result<()> {
    let vnf = VnfSpec::new(200.0, 0.9, 1.0)?;
    println!("{:>8}  {:>5}  {:>10}  {:>12}  {:>12}", "SLA [s]", "set", "l", "response [s]", "reliability");
    for psi in [0.03, 0.05, 0.08, 0.125, 0.2, 0.5] {
        let sfc = SfcSpec::homogeneous(4, vnf, 100.0, psi)?;
        for setting in [Setting::Mm1, Setting::Mmm] {
            match plan(&PlanRequest::new(sfc.clone(), setting)) {
                Ok(p) => println!(
                    "{psi:>8}  {setting:>5}  {:>10}  {:>12.6}  {:>12.10}",
                    p.l, p.predicted_response, p.predicted_reliability
                ),
                Err(Error::Infeasible { response, .. }) => {
                    println!("{psi:>8}  {setting:>5}  infeasible (best response {response:.4} s)")
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}
