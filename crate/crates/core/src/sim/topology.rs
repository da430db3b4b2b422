use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ChainConfig, SfcSpec};

/// A FCFS queue in front of `servers` identical exponential servers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Station {
    /// Position of the VNF this station implements within the chain.
    pub stage: usize,
    /// Rate of each individual server.
    pub service_rate: f64,
    pub servers: u32,
}

/// Station graph for one chain configuration. Packets enter at the source,
/// pick a branch with the given probability and visit its stations in
/// order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Topology {
    stations: Vec<Station>,
    branches: Vec<Vec<usize>>,
    branch_probabilities: Vec<f64>,
    stage_count: usize,
}

impl Topology {
    pub fn stations(&self) -> &[Station] {
        &self.stations
    }

    pub fn branches(&self) -> &[Vec<usize>] {
        &self.branches
    }

    pub fn branch_probabilities(&self) -> &[f64] {
        &self.branch_probabilities
    }

    pub fn stage_count(&self) -> usize {
        self.stage_count
    }

    /// Fraction of source traffic passing through each station.
    fn traffic_shares(&self) -> Vec<f64> {
        let mut shares = vec![0.0; self.stations.len()];
        for (branch, p) in self.branches.iter().zip(&self.branch_probabilities) {
            for &s in branch {
                shares[s] += p;
            }
        }
        shares
    }

    /// Every station must have arrival rate below its total capacity.
    pub fn check_stable(&self, arrival_rate: f64) -> Result<()> {
        for (i, (station, share)) in self.stations.iter().zip(self.traffic_shares()).enumerate() {
            let offered = arrival_rate * share;
            let capacity = station.service_rate * f64::from(station.servers);
            if offered >= capacity {
                return Err(Error::Unstable {
                    stage: self.stations[i].stage,
                    arrival_rate: offered,
                    service_rate: capacity,
                });
            }
        }
        Ok(())
    }
}

pub fn build_topology(sfc: &SfcSpec, config: ChainConfig) -> Topology {
    let rates: Vec<f64> = sfc.vnfs().iter().map(|v| v.service_rate()).collect();
    let stage_count = rates.len();
    let single_path = |divisor: f64, servers: u32| {
        let stations = rates
            .iter()
            .enumerate()
            .map(|(stage, &mu)| Station {
                stage,
                service_rate: mu / divisor,
                servers,
            })
            .collect();
        Topology {
            stations,
            branches: vec![(0..stage_count).collect()],
            branch_probabilities: vec![1.0],
            stage_count,
        }
    };

    match config {
        // Backups are cold standby and never see traffic.
        ChainConfig::Sc | ChainConfig::Scb { .. } => single_path(1.0, 1),
        ChainConfig::CommonSchedulerMmm { split } => single_path(f64::from(split.get()), split.get()),
        ChainConfig::SubchainMm1 { subchains } => {
            let l = subchains.get() as usize;
            let divisor = f64::from(subchains.get());
            let mut stations = Vec::with_capacity(l * stage_count);
            let mut branches = Vec::with_capacity(l);
            for _ in 0..l {
                let mut branch = Vec::with_capacity(stage_count);
                for (stage, &mu) in rates.iter().enumerate() {
                    branch.push(stations.len());
                    stations.push(Station {
                        stage,
                        service_rate: mu / divisor,
                        servers: 1,
                    });
                }
                branches.push(branch);
            }
            Topology {
                stations,
                branches,
                branch_probabilities: vec![1.0 / divisor; l],
                stage_count,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VnfSpec;

    fn table1() -> SfcSpec {
        SfcSpec::homogeneous(4, VnfSpec::new(200.0, 0.9, 1.0).unwrap(), 100.0, 0.125).unwrap()
    }

    fn assert_paths_visit_every_stage(t: &Topology) {
        for branch in t.branches() {
            let stages: Vec<usize> = branch.iter().map(|&s| t.stations()[s].stage).collect();
            assert_eq!(stages, (0..t.stage_count()).collect::<Vec<_>>());
        }
        let total: f64 = t.branch_probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plain_chain() {
        let t = build_topology(&table1(), ChainConfig::Sc);
        assert_eq!(t.stations().len(), 4);
        assert!(t.stations().iter().all(|s| s.servers == 1 && s.service_rate == 200.0));
        assert_paths_visit_every_stage(&t);
        assert_eq!(build_topology(&table1(), ChainConfig::scb(2).unwrap()), t);
    }

    #[test]
    fn parallel_subchains() {
        let t = build_topology(&table1(), ChainConfig::subchain_mm1(3).unwrap());
        assert_eq!(t.stations().len(), 12);
        assert_eq!(t.branches().len(), 3);
        assert!(t.branch_probabilities().iter().all(|&p| (p - 1.0 / 3.0).abs() < 1e-15));
        assert!(t.stations().iter().all(|s| s.servers == 1 && (s.service_rate - 200.0 / 3.0).abs() < 1e-12));
        assert_paths_visit_every_stage(&t);
    }

    #[test]
    fn shared_scheduler() {
        let t = build_topology(&table1(), ChainConfig::common_scheduler_mmm(3).unwrap());
        assert_eq!(t.stations().len(), 4);
        assert!(t.stations().iter().all(|s| s.servers == 3 && (s.service_rate - 200.0 / 3.0).abs() < 1e-12));
        assert_paths_visit_every_stage(&t);
    }

    #[test]
    fn stability() {
        let t = build_topology(&table1(), ChainConfig::subchain_mm1(4).unwrap());
        assert!(t.check_stable(100.0).is_ok());
        assert!(matches!(t.check_stable(200.0), Err(Error::Unstable { .. })));
    }
}
