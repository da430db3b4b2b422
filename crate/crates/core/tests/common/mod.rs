//! Reference formulas written independently of the library code paths.
#![allow(dead_code)]

use sfc_subchain::{SfcSpec, VnfSpec};

/// Erlang C by direct summation of `a^i / i!` terms.
pub fn erlang_c_direct(m: u32, a: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for i in 0..m {
        sum += term;
        term *= a / f64::from(i + 1);
    }
    // term is now a^m / m!
    let top = term / (1.0 - a / f64::from(m));
    top / (sum + top)
}

/// Textbook M/M/c sojourn `W = C/(cμ' - λ) + 1/μ'` with `μ' = μ/l`, `c = l`.
pub fn mmc_sojourn(lambda: f64, mu: f64, l: u32) -> f64 {
    let per_server = mu / f64::from(l);
    let c = erlang_c_direct(l, lambda / per_server);
    c / (f64::from(l) * per_server - lambda) + 1.0 / per_server
}

pub fn mmc_chain(sfc: &SfcSpec, l: u32) -> f64 {
    sfc.vnfs()
        .iter()
        .map(|v| mmc_sojourn(sfc.arrival_rate(), v.service_rate(), l))
        .sum()
}

pub fn mm1_chain(sfc: &SfcSpec) -> f64 {
    sfc.vnfs()
        .iter()
        .map(|v| 1.0 / (v.service_rate() - sfc.arrival_rate()))
        .sum()
}

/// Largest `l` in `1..=l_max` passing `feasible`, by checking every one.
pub fn scan_largest(l_max: u32, feasible: impl Fn(u32) -> bool) -> Option<u32> {
    (1..=l_max).filter(|&l| feasible(l)).max()
}

pub fn table1_with(count: usize, psi: f64) -> SfcSpec {
    SfcSpec::homogeneous(count, VnfSpec::new(200.0, 0.9, 1.0).unwrap(), 100.0, psi).unwrap()
}

pub fn table1() -> SfcSpec {
    table1_with(4, 0.125)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
