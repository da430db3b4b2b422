//! Erlang-C waiting probability and per-VNF sojourn time as a VNF is split
//! into more, slower instances behind one scheduler.
//!
//! ```text
//! cargo run -p sfc-subchain --example erlang_c_table
//! ```

use sfc_subchain::queueing::{erlang_c, mm1_response, mmm_vnf_response, StationLoad};

fn main() -> sfc_subchain::Result<()> {
    let (lambda, mu) = (100.0, 200.0);
    let load = StationLoad::new(lambda, mu)?;
    println!("M/M/1 sojourn: {:.6} s", mm1_response(load)?);
    println!("{:>6}  {:>12}  {:>14}  {:>14}", "l", "ErlangC", "M/M/l [s]", "split M/M/1 [s]");
    for l in [1u32, 2, 3, 4, 6, 8, 12, 16, 32, 64, 1000] {
        let offered = f64::from(l) * lambda / mu;
        println!(
            "{l:>6}  {:>12.8}  {:>14.6}  {:>14.6}",
            erlang_c(l, offered)?,
            mmm_vnf_response(load, l)?,
            f64::from(l) * mm1_response(load)?,
        );
    }
    Ok(())
}
