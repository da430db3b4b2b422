//! Picks the largest subchain count whose expected response time still
//! meets the chain's delay SLA. More subchains always means more
//! reliability, so the largest feasible count is the most reliable plan.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, ChainConfig, SfcSpec};
use crate::queueing;

pub const DEFAULT_L_MAX: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    /// Independent parallel subchains, each stage an M/M/1 queue.
    Mm1,
    /// One scheduler per VNF in front of its `l` smaller instances.
    Mmm,
}

impl Setting {
    pub fn config(self, l: u32) -> Result<ChainConfig> {
        match self {
            Setting::Mm1 => ChainConfig::subchain_mm1(l),
            Setting::Mmm => ChainConfig::common_scheduler_mmm(l),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Mm1 => "mm1",
            Setting::Mmm => "mmm",
        })
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mm1" | "m/m/1" => Ok(Setting::Mm1),
            "mmm" | "m/m/m" => Ok(Setting::Mmm),
            other => Err(Error::InvalidArgument(format!("unknown setting `{other}` (expected mm1 or mmm)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanRequest {
    pub sfc: SfcSpec,
    pub setting: Setting,
    pub l_max: u32,
}

impl PlanRequest {
    pub fn new(sfc: SfcSpec, setting: Setting) -> Self {
        Self {
            sfc,
            setting,
            l_max: DEFAULT_L_MAX,
        }
    }

    pub fn with_l_max(mut self, l_max: u32) -> Self {
        self.l_max = l_max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.l_max == 0 {
            return Err(Error::validation("l_max", "must be at least 1"));
        }
        Ok(())
    }
}

/// How the subchain count was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchPath {
    ClosedForm,
    BinarySearch,
    /// The post-search check found the response not monotone in `l` and
    /// the count was recomputed by scanning every candidate.
    LinearScanFallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanResult {
    pub l: u32,
    pub predicted_response: f64,
    pub predicted_reliability: f64,
    pub setting: Setting,
    pub search: SearchPath,
}

impl PlanResult {
    pub fn config(&self) -> ChainConfig {
        self.setting
            .config(self.l)
            .expect("planned subchain count is at least 1")
    }
}

/// Closed form: `l = ⌊Ψ / Σ 1/(μ_v - λ)⌋`, clamped to `[1, l_max]`.
pub fn plan_mm1(req: &PlanRequest) -> Result<PlanResult> {
    req.validate()?;
    let sfc = &req.sfc;
    let psi = sfc.delay_sla();
    let single = queueing::sfc_response_sc(sfc)?;
    if single > psi {
        return Err(Error::Infeasible {
            response: single,
            delay_sla: psi,
        });
    }
    let bound = (psi / single).min(f64::from(req.l_max));
    let mut l = bound.floor() as u32;
    // The division can land an ulp on either side of an integer; settle the
    // count against the response formula itself.
    let fits = |l: u32| f64::from(l) * single <= psi;
    if l < req.l_max && fits(l + 1) {
        l += 1;
    }
    while l > 1 && !fits(l) {
        l -= 1;
    }
    let l = l.clamp(1, req.l_max);
    Ok(PlanResult {
        l,
        predicted_response: f64::from(l) * single,
        predicted_reliability: model::reliability_subchain_mm1(sfc, l),
        setting: Setting::Mm1,
        search: SearchPath::ClosedForm,
    })
}

/// Largest `l` with `E^{M/M/l}[R] < Ψ`, by binary search.
pub fn plan_mmm(req: &PlanRequest) -> Result<PlanResult> {
    req.validate()?;
    let sfc = &req.sfc;
    let psi = sfc.delay_sla();
    let first = queueing::sfc_response_mmm(sfc, 1)?;
    if first >= psi {
        return Err(Error::Infeasible {
            response: first,
            delay_sla: psi,
        });
    }
    // Each stage takes at least its service time l/μ_v, so nothing at or
    // beyond Ψ / Σ 1/μ_v can be feasible.
    let service_floor: f64 = sfc.vnfs().iter().map(|v| 1.0 / v.service_rate()).sum();
    let upper = (psi / service_floor).ceil().min(f64::from(req.l_max)).max(1.0) as u32;
    let (l, response, search) = largest_feasible(upper, req.l_max, psi, |l| queueing::sfc_response_mmm(sfc, l))?;
    Ok(PlanResult {
        l,
        predicted_response: response,
        predicted_reliability: model::reliability_mmm(sfc, l),
        setting: Setting::Mmm,
        search,
    })
}

/// Binary search for the last `l` in `[1, upper]` with `response(l) < psi`,
/// assuming `response(1) < psi`. The result is checked against `l + 1`; if
/// that check fails, every candidate is scanned and the one with the least
/// positive slack wins.
fn largest_feasible<F>(upper: u32, l_max: u32, psi: f64, response: F) -> Result<(u32, f64, SearchPath)>
where
    F: Fn(u32) -> Result<f64>,
{
    let (mut lo, mut hi) = (1u32, upper);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if response(mid)? < psi {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let at = response(lo)?;
    let next_ok = lo >= l_max || response(lo + 1)? >= psi;
    if at < psi && next_ok {
        return Ok((lo, at, SearchPath::BinarySearch));
    }

    let mut best: Option<(u32, f64)> = None;
    for l in 1..=upper {
        let r = response(l)?;
        if r < psi && best.is_none_or(|(_, b)| psi - r < psi - b) {
            best = Some((l, r));
        }
    }
    let (l, r) = best.expect("response(1) is feasible");
    Ok((l, r, SearchPath::LinearScanFallback))
}

pub fn plan(req: &PlanRequest) -> Result<PlanResult> {
    match req.setting {
        Setting::Mm1 => plan_mm1(req),
        Setting::Mmm => plan_mmm(req),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VnfSpec;

    fn table1(psi: f64) -> SfcSpec {
        SfcSpec::homogeneous(4, VnfSpec::new(200.0, 0.9, 1.0).unwrap(), 100.0, psi).unwrap()
    }

    #[test]
    fn mm1_table1() {
        let r = plan_mm1(&PlanRequest::new(table1(0.125), Setting::Mm1)).unwrap();
        assert_eq!(r.l, 3);
        assert!((r.predicted_response - 0.12).abs() < 1e-12);
        assert!((r.predicted_reliability - 0.959327906481).abs() < 1e-12);
    }

    #[test]
    fn mm1_exact_bound_and_infeasible() {
        assert_eq!(plan_mm1(&PlanRequest::new(table1(0.04), Setting::Mm1)).unwrap().l, 1);
        assert_eq!(plan_mm1(&PlanRequest::new(table1(0.12), Setting::Mm1)).unwrap().l, 3);
        assert!(matches!(
            plan_mm1(&PlanRequest::new(table1(0.039), Setting::Mm1)),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn mm1_clamps_to_l_max() {
        let r = plan_mm1(&PlanRequest::new(table1(1e9), Setting::Mm1).with_l_max(7)).unwrap();
        assert_eq!(r.l, 7);
    }

    #[test]
    fn mmm_table1() {
        let r = plan_mmm(&PlanRequest::new(table1(0.125), Setting::Mmm)).unwrap();
        assert_eq!(r.l, 6);
        assert_eq!(r.search, SearchPath::BinarySearch);
        assert!((r.predicted_response - 0.123965728274173806).abs() < 1e-12);
        assert_eq!(plan_mmm(&PlanRequest::new(table1(0.0401), Setting::Mmm)).unwrap().l, 1);
        assert_eq!(plan_mmm(&PlanRequest::new(table1(0.125), Setting::Mmm).with_l_max(4)).unwrap().l, 4);
    }

    #[test]
    fn mmm_strict_sla() {
        // E(1) = 0.04 exactly, and equality counts as a violation.
        assert!(matches!(
            plan_mmm(&PlanRequest::new(table1(0.04), Setting::Mmm)),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn dispatch_annotates_reliability() {
        let r = plan(&PlanRequest::new(table1(0.125), Setting::Mmm)).unwrap();
        assert!((r.predicted_reliability - 0.999996000006).abs() < 1e-9);
        assert_eq!(r.config().to_string(), "mmm:6");

        let perfect = SfcSpec::new(vec![VnfSpec::new(200.0, 1.0, 1.0).unwrap()], 100.0, 1e6).unwrap();
        let r = plan(&PlanRequest::new(perfect, Setting::Mm1).with_l_max(5)).unwrap();
        assert_eq!(r.l, 5);
        assert_eq!(r.predicted_reliability, 1.0);
    }

    #[test]
    fn unstable_is_reported() {
        let s = SfcSpec::new(vec![VnfSpec::new(100.0, 0.9, 1.0).unwrap()], 100.0, 1.0).unwrap();
        assert!(matches!(plan(&PlanRequest::new(s.clone(), Setting::Mm1)), Err(Error::Unstable { .. })));
        assert!(matches!(plan(&PlanRequest::new(s, Setting::Mmm)), Err(Error::Unstable { .. })));
    }

    #[test]
    fn zero_l_max_rejected() {
        assert!(plan(&PlanRequest::new(table1(0.125), Setting::Mm1).with_l_max(0)).is_err());
    }

    #[test]
    fn guard_accepts_local_maximum() {
        // Feasible at 1..=3 and at 9. Binary search settles on 3, and 4 is
        // infeasible, so the guard accepts it.
        let resp = |l: u32| -> Result<f64> {
            Ok(match l {
                1..=3 => 0.5 + 0.1 * f64::from(l),
                9 => 0.99,
                _ => 2.0,
            })
        };
        let (l, _, path) = largest_feasible(10, 10, 1.0, resp).unwrap();
        assert_eq!((l, path), (3, SearchPath::BinarySearch));
    }

    #[test]
    fn failed_guard_falls_back_to_scan() {
        // l = 2 is infeasible and the search cap is wrong: l + 1 past the cap
        // is still feasible, so the guard trips and every candidate is scanned.
        let resp = |l: u32| -> Result<f64> { Ok(if l == 2 { 2.0 } else { 0.1 * f64::from(l) }) };
        let (l, r, path) = largest_feasible(6, 20, 1.0, resp).unwrap();
        assert_eq!(path, SearchPath::LinearScanFallback);
        assert_eq!(l, 6);
        assert!((r - 0.6).abs() < 1e-12);
    }
}
