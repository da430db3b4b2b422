//! Services, chain configurations and their closed-form reliability and
//! resource figures.
//!
//! Reliability here is a static availability probability: every VNF
//! instance is independently up with probability `p_v`, and a smaller
//! instance created by splitting a VNF keeps the same `p_v` since it runs
//! the same software. Common-mode failures across replicas are not modeled,
//! and neither are virtual-link failures.

use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::queueing;

/// One virtual network function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VnfSpec {
    service_rate: f64,
    reliability: f64,
    resource_weight: f64,
}

impl VnfSpec {
    /// `service_rate` in packets/s, `reliability` in (0, 1], `resource_weight`
    /// in virtual cores.
    pub fn new(service_rate: f64, reliability: f64, resource_weight: f64) -> Result<Self> {
        if !(service_rate > 0.0 && service_rate.is_finite()) {
            return Err(Error::validation("service_rate", format!("must be a positive finite number, got {service_rate}")));
        }
        if !(reliability > 0.0 && reliability <= 1.0) {
            return Err(Error::validation("reliability", format!("must lie in (0, 1], got {reliability}")));
        }
        if !(resource_weight > 0.0 && resource_weight.is_finite()) {
            return Err(Error::validation("resource_weight", format!("must be a positive finite number, got {resource_weight}")));
        }
        Ok(Self {
            service_rate,
            reliability,
            resource_weight,
        })
    }

    pub fn service_rate(&self) -> f64 {
        self.service_rate
    }

    pub fn reliability(&self) -> f64 {
        self.reliability
    }

    pub fn resource_weight(&self) -> f64 {
        self.resource_weight
    }
}

/// An ordered service function chain with its offered load and delay SLA.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SfcSpec {
    vnfs: Vec<VnfSpec>,
    arrival_rate: f64,
    delay_sla: f64,
}

impl SfcSpec {
    pub fn new(vnfs: Vec<VnfSpec>, arrival_rate: f64, delay_sla: f64) -> Result<Self> {
        if vnfs.is_empty() {
            return Err(Error::validation("vnfs", "vnfs must be non-empty"));
        }
        if !(arrival_rate > 0.0 && arrival_rate.is_finite()) {
            return Err(Error::validation("arrival_rate", format!("must be a positive finite number, got {arrival_rate}")));
        }
        if !(delay_sla > 0.0 && delay_sla.is_finite()) {
            return Err(Error::validation("delay_sla", format!("must be a positive finite number, got {delay_sla}")));
        }
        Ok(Self {
            vnfs,
            arrival_rate,
            delay_sla,
        })
    }

    /// A chain of `count` identical VNFs.
    pub fn homogeneous(count: usize, vnf: VnfSpec, arrival_rate: f64, delay_sla: f64) -> Result<Self> {
        Self::new(vec![vnf; count], arrival_rate, delay_sla)
    }

    pub fn vnfs(&self) -> &[VnfSpec] {
        &self.vnfs
    }

    pub fn len(&self) -> usize {
        self.vnfs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vnfs.is_empty()
    }

    pub fn arrival_rate(&self) -> f64 {
        self.arrival_rate
    }

    pub fn delay_sla(&self) -> f64 {
        self.delay_sla
    }

    /// Same chain with a different delay SLA.
    pub fn with_delay_sla(&self, delay_sla: f64) -> Result<Self> {
        Self::new(self.vnfs.clone(), self.arrival_rate, delay_sla)
    }

    /// Checks `arrival_rate < service_rate` at every stage and reports the
    /// first bottleneck otherwise. Splitting into `l` parts scales both
    /// rates by `1/l`, so the answer holds for every configuration.
    pub fn check_stability(&self) -> Result<()> {
        match self
            .vnfs
            .iter()
            .position(|v| self.arrival_rate >= v.service_rate)
        {
            Some(stage) => Err(Error::Unstable {
                stage,
                arrival_rate: self.arrival_rate,
                service_rate: self.vnfs[stage].service_rate,
            }),
            None => Ok(()),
        }
    }

    pub fn is_stable(&self) -> bool {
        self.check_stability().is_ok()
    }

    fn product_reliability(&self) -> f64 {
        self.vnfs.iter().map(|v| v.reliability).product()
    }

    fn resource_sum(&self) -> f64 {
        self.vnfs.iter().map(|v| v.resource_weight).sum()
    }
}

/// A deployment shape for one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainConfig {
    /// A single plain chain.
    Sc,
    /// Every VNF gets `backups` dedicated cold-standby copies.
    Scb { backups: NonZeroU32 },
    /// `subchains` parallel chains, each VNF at `1/l` of the original rate.
    SubchainMm1 { subchains: NonZeroU32 },
    /// Every VNF split into `split` instances at `1/l` rate behind one
    /// shared scheduler.
    CommonSchedulerMmm { split: NonZeroU32 },
}

fn nonzero(value: u32, what: &str) -> Result<NonZeroU32> {
    NonZeroU32::new(value).ok_or_else(|| Error::validation(what, "must be a positive integer"))
}

impl ChainConfig {
    pub fn scb(backups: u32) -> Result<Self> {
        Ok(Self::Scb {
            backups: nonzero(backups, "backups")?,
        })
    }

    pub fn subchain_mm1(subchains: u32) -> Result<Self> {
        Ok(Self::SubchainMm1 {
            subchains: nonzero(subchains, "subchains")?,
        })
    }

    pub fn common_scheduler_mmm(split: u32) -> Result<Self> {
        Ok(Self::CommonSchedulerMmm {
            split: nonzero(split, "split")?,
        })
    }

    /// The integer parameter of the configuration: `b` for SCB, `l` for the
    /// subchain variants and 1 for the plain chain.
    pub fn parameter(&self) -> u32 {
        match *self {
            Self::Sc => 1,
            Self::Scb { backups } => backups.get(),
            Self::SubchainMm1 { subchains } => subchains.get(),
            Self::CommonSchedulerMmm { split } => split.get(),
        }
    }
}

/// Labels are `sc`, `scb:<b>`, `mm1:<l>` and `mmm:<l>`.
impl fmt::Display for ChainConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sc => write!(f, "sc"),
            Self::Scb { backups } => write!(f, "scb:{backups}"),
            Self::SubchainMm1 { subchains } => write!(f, "mm1:{subchains}"),
            Self::CommonSchedulerMmm { split } => write!(f, "mmm:{split}"),
        }
    }
}

impl FromStr for ChainConfig {
    type Err = Error;

    fn from_str(label: &str) -> Result<Self> {
        let label = label.trim().to_ascii_lowercase();
        if label == "sc" {
            return Ok(Self::Sc);
        }
        let bad = || Error::InvalidArgument(format!("unknown chain config `{label}` (expected sc, scb:<b>, mm1:<l> or mmm:<l>)"));
        let (kind, count) = label.split_once(':').ok_or_else(bad)?;
        let count: u32 = count.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "scb" => Self::scb(count),
            "mm1" => Self::subchain_mm1(count),
            "mmm" => Self::common_scheduler_mmm(count),
            _ => Err(bad()),
        }
    }
}

impl Serialize for ChainConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Product of the per-VNF reliabilities.
pub fn reliability_sc(sfc: &SfcSpec) -> f64 {
    sfc.product_reliability()
}

/// Every VNF has `backups` dedicated backups. `backups = 0` is the plain chain.
pub fn reliability_scb(sfc: &SfcSpec, backups: u32) -> f64 {
    sfc.vnfs
        .iter()
        .map(|v| parallel_reliability(v.reliability, backups.saturating_add(1)))
        .product()
}

/// At least one of `l` independent full subchains must be up.
pub fn reliability_subchain_mm1(sfc: &SfcSpec, subchains: u32) -> f64 {
    parallel_reliability(sfc.product_reliability(), subchains)
}

/// At every stage at least one of the `l` smaller instances must be up.
pub fn reliability_mmm(sfc: &SfcSpec, split: u32) -> f64 {
    sfc.vnfs
        .iter()
        .map(|v| parallel_reliability(v.reliability, split))
        .product()
}

/// `1 - (1 - p)^k`
fn parallel_reliability(p: f64, k: u32) -> f64 {
    let k = i32::try_from(k).unwrap_or(i32::MAX);
    1.0 - (1.0 - p).powi(k)
}

pub fn reliability(sfc: &SfcSpec, config: ChainConfig) -> f64 {
    match config {
        ChainConfig::Sc => reliability_sc(sfc),
        ChainConfig::Scb { backups } => reliability_scb(sfc, backups.get()),
        ChainConfig::SubchainMm1 { subchains } => reliability_subchain_mm1(sfc, subchains.get()),
        ChainConfig::CommonSchedulerMmm { split } => reliability_mmm(sfc, split.get()),
    }
}

/// Virtual cores reserved by the configuration. Subchaining hands each
/// smaller instance `γ_v / l`, so the total does not depend on `l`.
pub fn total_resources(sfc: &SfcSpec, config: ChainConfig) -> f64 {
    let base = sfc.resource_sum();
    match config {
        ChainConfig::Scb { backups } => (f64::from(backups.get()) + 1.0) * base,
        ChainConfig::Sc | ChainConfig::SubchainMm1 { .. } | ChainConfig::CommonSchedulerMmm { .. } => base,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub config: ChainConfig,
    pub reliability: f64,
    /// `None` when some stage is unstable.
    pub expected_response_time: Option<f64>,
    pub total_resources: f64,
}

impl AnalysisReport {
    /// Whether the expected response time exists and meets the SLA.
    pub fn meets_sla(&self, sfc: &SfcSpec) -> bool {
        self.expected_response_time
            .is_some_and(|r| r <= sfc.delay_sla())
    }
}

pub fn analyze(sfc: &SfcSpec, config: ChainConfig) -> AnalysisReport {
    AnalysisReport {
        config,
        reliability: reliability(sfc, config),
        expected_response_time: queueing::sfc_response(sfc, config).ok(),
        total_resources: total_resources(sfc, config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    fn chain(ps: &[f64]) -> SfcSpec {
        let vnfs = ps.iter().map(|&p| VnfSpec::new(200.0, p, 2.0).unwrap()).collect();
        SfcSpec::new(vnfs, 100.0, 0.125).unwrap()
    }

    fn table1() -> SfcSpec {
        chain(&[0.9; 4])
    }

    #[test]
    fn plain_chain_is_product() {
        assert!(rel_eq(reliability_sc(&table1()), 0.6561, 1e-12));
        assert_eq!(reliability_sc(&chain(&[1.0; 5])), 1.0);
        assert!(rel_eq(reliability_sc(&chain(&[0.9, 0.95, 0.99])), 0.84645, 1e-12));
    }

    #[test]
    fn backups() {
        let s = table1();
        assert!(rel_eq(reliability_scb(&s, 1), 0.96059601, 1e-12));
        assert_eq!(reliability_scb(&s, 0), reliability_sc(&s));
        assert!(rel_eq(reliability_scb(&s, 2), 0.996005996001, 1e-12));
    }

    #[test]
    fn subchains() {
        let s = table1();
        assert_eq!(reliability_subchain_mm1(&s, 1), reliability_sc(&s));
        assert!(rel_eq(reliability_subchain_mm1(&s, 3), 0.959327906481, 1e-12));
        assert!(rel_eq(reliability_subchain_mm1(&s, 10), 0.999976862216225, 1e-12));
    }

    #[test]
    fn common_scheduler() {
        let s = table1();
        assert_eq!(reliability_mmm(&s, 1), reliability_sc(&s));
        assert!(rel_eq(reliability_mmm(&s, 3), 0.996005996001, 1e-12));
        assert!(rel_eq(reliability_mmm(&s, 6), 0.999996000005999996, 1e-12));
    }

    #[test]
    fn resources() {
        let s = table1();
        assert_eq!(total_resources(&s, ChainConfig::Sc), 8.0);
        assert_eq!(total_resources(&s, ChainConfig::scb(1).unwrap()), 16.0);
        assert_eq!(total_resources(&s, ChainConfig::subchain_mm1(5).unwrap()), 8.0);
        assert_eq!(total_resources(&s, ChainConfig::common_scheduler_mmm(5).unwrap()), 8.0);
    }

    #[test]
    fn validation_names_field() {
        match VnfSpec::new(200.0, 1.2, 1.0) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "reliability"),
            other => panic!("{other:?}"),
        }
        assert!(VnfSpec::new(0.0, 0.9, 1.0).is_err());
        assert!(VnfSpec::new(1.0, 0.0, 1.0).is_err());
        assert!(VnfSpec::new(1.0, 0.5, -1.0).is_err());
        match SfcSpec::new(vec![], 1.0, 1.0) {
            Err(e) => assert!(e.to_string().contains("vnfs must be non-empty")),
            Ok(_) => panic!(),
        }
        assert!(ChainConfig::scb(0).is_err());
        assert!(ChainConfig::subchain_mm1(0).is_err());
    }

    #[test]
    fn stability_reports_first_bottleneck() {
        let vnfs = vec![
            VnfSpec::new(200.0, 0.9, 1.0).unwrap(),
            VnfSpec::new(100.0, 0.9, 1.0).unwrap(),
            VnfSpec::new(50.0, 0.9, 1.0).unwrap(),
        ];
        let s = SfcSpec::new(vnfs, 100.0, 1.0).unwrap();
        match s.check_stability() {
            Err(Error::Unstable { stage, .. }) => assert_eq!(stage, 1),
            other => panic!("{other:?}"),
        }
        assert!(table1().is_stable());
    }

    #[test]
    fn labels_round_trip() {
        for label in ["sc", "scb:1", "mm1:3", "mmm:6"] {
            let c: ChainConfig = label.parse().unwrap();
            assert_eq!(c.to_string(), label);
        }
        assert!("mm1:0".parse::<ChainConfig>().is_err());
        assert!("foo:2".parse::<ChainConfig>().is_err());
        assert!("mmm".parse::<ChainConfig>().is_err());
    }

    #[test]
    fn analyze_flags_unstable_response() {
        let s = SfcSpec::new(vec![VnfSpec::new(50.0, 0.9, 1.0).unwrap()], 100.0, 1.0).unwrap();
        let report = analyze(&s, ChainConfig::Sc);
        assert!(report.expected_response_time.is_none());
        assert!(!report.meets_sla(&s));
    }
}
