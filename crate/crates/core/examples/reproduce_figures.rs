//! Writes the CSV behind every comparison figure for the bundled scenario.
//! Pass `--analytic-only` to skip the simulation columns.
//!
//! ```text
//! cargo run --release -p sfc-subchain --example reproduce_figures -- target/figures
//! ```

use std::fs::{self, File};
use std::path::PathBuf;

use sfc_subchain::bench::{self, Figure, ReproduceOptions};
use sfc_subchain::Scenario;

fn main() -> sfc_subchain::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let analytic_only = args.iter().any(|a| a == "--analytic-only");
    args.retain(|a| a != "--analytic-only");
    let dir = args.first().map_or_else(|| PathBuf::from("figures"), PathBuf::from);
    fs::create_dir_all(&dir)?;

    let scenario = Scenario::table1();
    let opts = ReproduceOptions { analytic_only, seed: None };
    for figure in Figure::ALL {
        let rows = bench::cmd_reproduce(&scenario, figure, opts)?;
        let path = dir.join(format!("fig{figure}.csv"));
        bench::write_csv(&rows, File::create(&path)?)?;
        println!("{} rows -> {}", rows.len(), path.display());
    }
    Ok(())
}
