//! Mean response times for M/M/1 and M/M/m stations and tandems of them.
//!
//! Every stage of a stable tandem sees Poisson arrivals at the chain's
//! arrival rate (Burke), and random splitting into subchains keeps each
//! branch Poisson at `λ/l`, so per-stage means simply add up.

use crate::error::{Error, Result};
use crate::model::{ChainConfig, SfcSpec};

/// Offered load on a single station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationLoad {
    pub arrival_rate: f64,
    pub service_rate: f64,
}

impl StationLoad {
    pub fn new(arrival_rate: f64, service_rate: f64) -> Result<Self> {
        if !(arrival_rate > 0.0 && arrival_rate.is_finite()) {
            return Err(Error::validation("arrival_rate", format!("must be a positive finite number, got {arrival_rate}")));
        }
        if !(service_rate > 0.0 && service_rate.is_finite()) {
            return Err(Error::validation("service_rate", format!("must be a positive finite number, got {service_rate}")));
        }
        Ok(Self {
            arrival_rate,
            service_rate,
        })
    }

    pub fn utilization(&self) -> f64 {
        self.arrival_rate / self.service_rate
    }

    fn check_stable(&self, stage: usize) -> Result<()> {
        if self.arrival_rate < self.service_rate {
            Ok(())
        } else {
            Err(Error::Unstable {
                stage,
                arrival_rate: self.arrival_rate,
                service_rate: self.service_rate,
            })
        }
    }
}

/// `1 / (μ - λ)`
pub fn mm1_response(load: StationLoad) -> Result<f64> {
    load.check_stable(0)?;
    Ok(1.0 / (load.service_rate - load.arrival_rate))
}

/// Sum of per-VNF M/M/1 responses at the chain's arrival rate.
pub fn sfc_response_sc(sfc: &SfcSpec) -> Result<f64> {
    sfc.check_stability()?;
    let lambda = sfc.arrival_rate();
    Ok(sfc.vnfs().iter().map(|v| 1.0 / (v.service_rate() - lambda)).sum())
}

/// A packet crosses one subchain whose stages run at `μ/l` under load
/// `λ/l`, so the response is exactly `l` times the plain chain's.
pub fn sfc_response_subchain_mm1(sfc: &SfcSpec, subchains: u32) -> Result<f64> {
    Ok(f64::from(subchains) * sfc_response_sc(sfc)?)
}

/// Erlang-C probability that an arrival waits, for `servers` servers and
/// offered load `offered_load = λ / μ_server` (in Erlangs).
///
/// Runs the Erlang-B recurrence `B_k = a·B_{k-1} / (k + a·B_{k-1})`, which
/// is the ratio of consecutive Poisson terms kept normalized, then converts
/// `C = B / (1 - ρ(1 - B))`. Stays in `[0, 1]` for any server count.
pub fn erlang_c(servers: u32, offered_load: f64) -> Result<f64> {
    if servers == 0 {
        return Err(Error::InvalidArgument("erlang_c needs at least one server".into()));
    }
    if !(offered_load > 0.0 && offered_load.is_finite()) {
        return Err(Error::InvalidArgument(format!("offered load must be positive, got {offered_load}")));
    }
    let m = f64::from(servers);
    if offered_load >= m {
        return Err(Error::Unstable {
            stage: 0,
            arrival_rate: offered_load,
            service_rate: m,
        });
    }
    let mut blocking = 1.0;
    for k in 1..=servers {
        let ab = offered_load * blocking;
        blocking = ab / (f64::from(k) + ab);
    }
    let rho = offered_load / m;
    Ok(blocking / (1.0 - rho * (1.0 - blocking)))
}

/// Mean response of one VNF split into `l` instances of rate `μ/l` behind a
/// shared queue: `(l/μ)·(1 + C / (l(1 - λ/μ)))` with `C = erlang_c(l, lλ/μ)`.
pub fn mmm_vnf_response(load: StationLoad, split: u32) -> Result<f64> {
    if split == 0 {
        return Err(Error::InvalidArgument("split count must be at least 1".into()));
    }
    load.check_stable(0)?;
    let l = f64::from(split);
    let rho = load.utilization();
    let wait_probability = erlang_c(split, l * rho)?;
    Ok(l / load.service_rate * (1.0 + wait_probability / (l * (1.0 - rho))))
}

pub fn sfc_response_mmm(sfc: &SfcSpec, split: u32) -> Result<f64> {
    sfc.check_stability()?;
    let lambda = sfc.arrival_rate();
    sfc.vnfs()
        .iter()
        .enumerate()
        .map(|(stage, v)| {
            let load = StationLoad::new(lambda, v.service_rate())?;
            load.check_stable(stage)?;
            mmm_vnf_response(load, split)
        })
        .sum()
}

/// Expected end-to-end response time. Backups are cold standby and carry no
/// traffic, so SCB behaves like the plain chain.
pub fn sfc_response(sfc: &SfcSpec, config: ChainConfig) -> Result<f64> {
    match config {
        ChainConfig::Sc | ChainConfig::Scb { .. } => sfc_response_sc(sfc),
        ChainConfig::SubchainMm1 { subchains } => sfc_response_subchain_mm1(sfc, subchains.get()),
        ChainConfig::CommonSchedulerMmm { split } => sfc_response_mmm(sfc, split.get()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VnfSpec;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * b.abs(), "{a} vs {b}");
    }

    fn load(l: f64, m: f64) -> StationLoad {
        StationLoad::new(l, m).unwrap()
    }

    fn table1() -> SfcSpec {
        SfcSpec::homogeneous(4, VnfSpec::new(200.0, 0.9, 1.0).unwrap(), 100.0, 0.125).unwrap()
    }

    #[test]
    fn mm1() {
        close(mm1_response(load(100.0, 200.0)).unwrap(), 0.01, 1e-12);
        close(mm1_response(load(150.0, 200.0)).unwrap(), 0.02, 1e-12);
        close(mm1_response(load(1e-9, 1.0)).unwrap(), 1.0, 1e-8);
        assert!(matches!(mm1_response(load(200.0, 200.0)), Err(Error::Unstable { .. })));
        assert!(matches!(mm1_response(load(300.0, 200.0)), Err(Error::Unstable { .. })));
    }

    #[test]
    fn chain_responses() {
        let s = table1();
        close(sfc_response_sc(&s).unwrap(), 0.04, 1e-12);
        close(sfc_response_subchain_mm1(&s, 3).unwrap(), 0.12, 1e-12);
        close(sfc_response_subchain_mm1(&s, 2).unwrap(), 0.08, 1e-12);
        assert_eq!(sfc_response_subchain_mm1(&s, 1).unwrap(), sfc_response_sc(&s).unwrap());

        let one = SfcSpec::new(vec![VnfSpec::new(200.0, 0.9, 1.0).unwrap()], 100.0, 1.0).unwrap();
        assert_eq!(sfc_response_sc(&one).unwrap(), mm1_response(load(100.0, 200.0)).unwrap());

        let mixed = SfcSpec::new(
            vec![VnfSpec::new(200.0, 0.9, 1.0).unwrap(), VnfSpec::new(300.0, 0.9, 1.0).unwrap()],
            100.0,
            1.0,
        )
        .unwrap();
        close(sfc_response_sc(&mixed).unwrap(), 0.015, 1e-12);
    }

    #[test]
    fn unstable_chain_names_bottleneck() {
        let s = SfcSpec::new(
            vec![VnfSpec::new(200.0, 0.9, 1.0).unwrap(), VnfSpec::new(90.0, 0.9, 1.0).unwrap()],
            100.0,
            1.0,
        )
        .unwrap();
        for res in [sfc_response_sc(&s), sfc_response_subchain_mm1(&s, 3), sfc_response_mmm(&s, 3)] {
            match res {
                Err(Error::Unstable { stage, .. }) => assert_eq!(stage, 1),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn erlang_c_values() {
        assert_eq!(erlang_c(1, 0.5).unwrap(), 0.5);
        close(erlang_c(3, 1.5).unwrap(), 0.236842105263157894736842105263, 1e-12);
        close(erlang_c(6, 3.0).unwrap(), 0.0991432068543451652386780905753, 1e-12);
        assert!(matches!(erlang_c(3, 3.0), Err(Error::Unstable { .. })));
        assert!(erlang_c(0, 0.5).is_err());
    }

    #[test]
    fn erlang_c_large_server_counts_stay_finite() {
        for m in [170u32, 171, 300, 500, 10_000, 1_000_000] {
            for rho in [0.1, 0.5, 0.9, 0.999] {
                let c = erlang_c(m, rho * f64::from(m)).unwrap();
                assert!(c.is_finite() && (0.0..=1.0).contains(&c), "m={m} rho={rho} c={c}");
            }
        }
    }

    #[test]
    fn mmm_values() {
        close(mmm_vnf_response(load(100.0, 200.0), 1).unwrap(), 0.01, 1e-12);
        close(mmm_vnf_response(load(100.0, 200.0), 3).unwrap(), 0.0173684210526315789473684210526, 1e-12);
        close(mmm_vnf_response(load(100.0, 200.0), 6).unwrap(), 0.0309914320685434516523867809057, 1e-12);
        let s = table1();
        close(sfc_response_mmm(&s, 1).unwrap(), 0.04, 1e-12);
        close(sfc_response_mmm(&s, 3).unwrap(), 0.0694736842105263157894736842105, 1e-12);
        close(sfc_response_mmm(&s, 6).unwrap(), 0.123965728274173806609547123623, 1e-12);
    }

    #[test]
    fn scb_queues_like_plain_chain() {
        let s = table1();
        assert_eq!(sfc_response(&s, ChainConfig::scb(2).unwrap()).unwrap(), sfc_response_sc(&s).unwrap());
    }
}
