//! Monte Carlo check of the reliability formulas: draw an up/down state for
//! every VNF instance and apply the configuration's structure function.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::rng::{stream_rng, SimRng};
use super::stats::binomial_ci95;
use crate::error::{Error, Result};
use crate::model::{ChainConfig, SfcSpec};

pub const MIN_TRIALS: u64 = 10_000;

const CHUNK_TRIALS: u64 = 1 << 16;
// Keeps availability streams apart from queueing replication streams.
const STREAM_BASE: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AvailabilityEstimate {
    pub estimate: f64,
    pub trials: u64,
    pub ci95_halfwidth: f64,
}

pub fn estimate_availability(sfc: &SfcSpec, config: ChainConfig, trials: u64, seed: u64) -> Result<AvailabilityEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!("availability needs at least {MIN_TRIALS} trials, got {trials}")));
    }
    let reliabilities: Vec<f64> = sfc.vnfs().iter().map(|v| v.reliability()).collect();
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let up: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            let mut rng = stream_rng(seed, STREAM_BASE + c);
            (0..n)
                .filter(|_| chain_up(&reliabilities, config, &mut rng))
                .count() as u64
        })
        .sum();
    Ok(AvailabilityEstimate {
        estimate: up as f64 / trials as f64,
        trials,
        ci95_halfwidth: binomial_ci95(up, trials),
    })
}

fn instance_up(p: f64, rng: &mut SimRng) -> bool {
    rng.random::<f64>() < p
}

/// At least one of `copies` independent instances is up.
fn stage_up(p: f64, copies: u32, rng: &mut SimRng) -> bool {
    (0..copies).any(|_| instance_up(p, rng))
}

fn chain_up(reliabilities: &[f64], config: ChainConfig, rng: &mut SimRng) -> bool {
    match config {
        ChainConfig::Sc => reliabilities.iter().all(|&p| instance_up(p, rng)),
        ChainConfig::Scb { backups } => reliabilities
            .iter()
            .all(|&p| stage_up(p, backups.get() + 1, rng)),
        ChainConfig::SubchainMm1 { subchains } => {
            (0..subchains.get()).any(|_| reliabilities.iter().all(|&p| instance_up(p, rng)))
        }
        ChainConfig::CommonSchedulerMmm { split } => reliabilities
            .iter()
            .all(|&p| stage_up(p, split.get(), rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VnfSpec;

    fn chain(p: f64, n: usize) -> SfcSpec {
        SfcSpec::homogeneous(n, VnfSpec::new(200.0, p, 1.0).unwrap(), 100.0, 1.0).unwrap()
    }

    #[test]
    fn perfect_components_never_fail() {
        let s = chain(1.0, 4);
        for label in ["sc", "scb:2", "mm1:3", "mmm:3"] {
            let e = estimate_availability(&s, label.parse().unwrap(), 20_000, 1).unwrap();
            assert_eq!(e.estimate, 1.0);
            assert_eq!(e.ci95_halfwidth, 0.0);
        }
    }

    #[test]
    fn too_few_trials() {
        assert!(estimate_availability(&chain(0.9, 2), ChainConfig::Sc, 9_999, 1).is_err());
    }

    #[test]
    fn reproducible() {
        let s = chain(0.8, 3);
        let c = ChainConfig::subchain_mm1(2).unwrap();
        let a = estimate_availability(&s, c, 100_003, 9).unwrap();
        assert_eq!(a, estimate_availability(&s, c, 100_003, 9).unwrap());
        assert_eq!(a.trials, 100_003);
    }
}
