//! Experiment harness: analysis, planning, simulation and the figure sweeps,
//! all emitted as rows of one fixed CSV layout.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, AnalysisReport, ChainConfig, SfcSpec};
use crate::planner::{self, PlanRequest, PlanResult, Setting};
use crate::queueing;
use crate::scenario::{Scenario, SweepVariable};
use crate::sim::{self, AvailabilityEstimate, SimConfig, SimResult};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SFC_SUBCHAIN_OUT";

pub const DEFAULT_VNF_SWEEP: std::ops::RangeInclusive<u32> = 2..=10;

/// One output line. Column order is the field order and is stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub scenario: String,
    pub config_label: String,
    pub l_or_b: u32,
    pub reliability_analytic: Option<f64>,
    pub reliability_simulated: Option<f64>,
    pub ci_rel: Option<f64>,
    pub response_analytic: Option<f64>,
    pub response_simulated: Option<f64>,
    pub ci_resp: Option<f64>,
    pub resources: Option<f64>,
    pub seed: Option<u64>,
}

pub const CSV_HEADER: [&str; 11] = [
    "scenario",
    "config_label",
    "l_or_b",
    "reliability_analytic",
    "reliability_simulated",
    "ci_rel",
    "response_analytic",
    "response_simulated",
    "ci_resp",
    "resources",
    "seed",
];

impl CsvRow {
    fn analytic(scenario: &str, report: &AnalysisReport, x: u32) -> Self {
        Self {
            scenario: scenario.to_string(),
            config_label: report.config.to_string(),
            l_or_b: x,
            reliability_analytic: Some(report.reliability),
            reliability_simulated: None,
            ci_rel: None,
            response_analytic: report.expected_response_time,
            response_simulated: None,
            ci_resp: None,
            resources: Some(report.total_resources),
            seed: None,
        }
    }

    fn with_availability(mut self, est: &AvailabilityEstimate, seed: u64) -> Self {
        self.reliability_simulated = Some(est.estimate);
        self.ci_rel = Some(est.ci95_halfwidth);
        self.seed = Some(seed);
        self
    }

    fn with_queueing(mut self, sim: &SimResult) -> Self {
        self.response_simulated = Some(sim.mean_response);
        self.ci_resp = Some(sim.ci95_halfwidth);
        self.seed = Some(sim.seed);
        self
    }
}

/// RFC 4180 quoting, LF line endings, header first.
pub fn write_csv<W: Write>(rows: &[CsvRow], out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[CsvRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Closed-form report for one configuration. Unstable chains are an error.
pub fn cmd_analyze(scenario: &Scenario, config: ChainConfig) -> Result<(AnalysisReport, CsvRow)> {
    queueing::sfc_response(&scenario.sfc, config)?;
    let report = model::analyze(&scenario.sfc, config);
    let row = CsvRow::analytic(&scenario.name, &report, config.parameter());
    Ok((report, row))
}

pub fn cmd_plan(scenario: &Scenario, setting: Setting, l_max: u32) -> Result<(PlanResult, CsvRow)> {
    let result = planner::plan(&PlanRequest::new(scenario.sfc.clone(), setting).with_l_max(l_max))?;
    let report = model::analyze(&scenario.sfc, result.config());
    Ok((result.clone(), CsvRow::analytic(&scenario.name, &report, result.l)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutcome {
    pub analysis: AnalysisReport,
    pub queueing: SimResult,
    pub availability: AvailabilityEstimate,
    pub row: CsvRow,
}

/// Queueing simulation plus Monte Carlo availability for one configuration.
/// `seed` overrides the scenario seed.
pub fn cmd_simulate(scenario: &Scenario, config: ChainConfig, seed: Option<u64>) -> Result<SimulationOutcome> {
    let (analysis, row) = cmd_analyze(scenario, config)?;
    let sim_config = sim_config_for(scenario, &scenario.sfc, config, seed);
    let (queueing, availability) = rayon::join(
        || sim::run_simulation(&sim_config),
        || {
            sim::estimate_availability(
                &scenario.sfc,
                config,
                scenario.sim.availability_trials(),
                sim_config.seed,
            )
        },
    );
    let (queueing, availability) = (queueing?, availability?);
    let row = row
        .with_queueing(&queueing)
        .with_availability(&availability, sim_config.seed);
    Ok(SimulationOutcome {
        analysis,
        queueing,
        availability,
        row,
    })
}

fn sim_config_for(scenario: &Scenario, sfc: &SfcSpec, config: ChainConfig, seed: Option<u64>) -> SimConfig {
    let mut cfg = scenario
        .sim
        .apply(SimConfig::new(sim::build_topology(sfc, config), sfc.arrival_rate()));
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// Reliability against subchain count.
    ReliabilityVsL,
    /// Reserved resources against subchain count.
    ResourcesVsL,
    /// Planned subchain count against chain length.
    PlannedLVsVnfs,
    /// Mean response against subchain count, M/M/1 against M/M/m.
    ResponseVsL,
    /// Expected response against subchain count next to the SLA.
    ResponseVsSla,
    /// Reliability against chain length at the planned count.
    ReliabilityVsVnfs,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::ReliabilityVsL,
        Figure::ResourcesVsL,
        Figure::PlannedLVsVnfs,
        Figure::ResponseVsL,
        Figure::ResponseVsSla,
        Figure::ReliabilityVsVnfs,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::ReliabilityVsL => "5a",
            Figure::ResourcesVsL => "5b",
            Figure::PlannedLVsVnfs => "5c",
            Figure::ResponseVsL => "5d",
            Figure::ResponseVsSla => "5e",
            Figure::ReliabilityVsVnfs => "5f",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.strip_prefix("fig").unwrap_or(&s);
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown figure `{s}` (expected one of 5a..5f)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReproduceOptions {
    /// Leave the simulated columns empty.
    pub analytic_only: bool,
    pub seed: Option<u64>,
}

/// Config label `sla` marks rows that carry the delay SLA as their response.
pub const SLA_LABEL: &str = "sla";

enum Point {
    Analytic { sfc: SfcSpec, scenario: String, config: ChainConfig, x: u32 },
    Availability { config: ChainConfig, x: u32 },
    Queueing { config: ChainConfig, x: u32 },
    Planned { sfc: SfcSpec, scenario: String, setting: Setting },
    Sla { x: u32 },
}

pub fn cmd_reproduce(scenario: &Scenario, figure: Figure, opts: ReproduceOptions) -> Result<Vec<CsvRow>> {
    let sfc = &scenario.sfc;
    scenario.sfc.check_stability()?;
    let l_values = match scenario.sweep(SweepVariable::L) {
        Some(sweep) => sweep.values(),
        None => {
            let planned = [Setting::Mm1, Setting::Mmm]
                .iter()
                .map(|&s| planner::plan(&PlanRequest::new(sfc.clone(), s)).map(|p| p.l))
                .collect::<Result<Vec<_>>>()?;
            (1..=planned.into_iter().max().unwrap_or(1) + 2).collect()
        }
    };
    let b_values: Vec<u32> = match scenario.sweep(SweepVariable::B) {
        Some(sweep) => sweep.values(),
        None => l_values.iter().copied().filter(|&l| l > 1).map(|l| l - 1).collect(),
    };
    let vnf_counts: Vec<u32> = match scenario.sweep(SweepVariable::VnfCount) {
        Some(sweep) => sweep.values(),
        None => DEFAULT_VNF_SWEEP.collect(),
    };
    let simulate = !opts.analytic_only;
    let name = scenario.name.as_str();

    let analytic = |config: ChainConfig, x: u32| Point::Analytic {
        sfc: sfc.clone(),
        scenario: name.to_string(),
        config,
        x,
    };

    let mut points = Vec::new();
    match figure {
        Figure::ReliabilityVsL | Figure::ResourcesVsL => {
            let with_sim = simulate && figure == Figure::ReliabilityVsL;
            let mut push = |config: ChainConfig, x: u32| {
                points.push(if with_sim { Point::Availability { config, x } } else { analytic(config, x) });
            };
            for &l in &l_values {
                push(ChainConfig::Sc, l);
                push(ChainConfig::subchain_mm1(l)?, l);
                push(ChainConfig::common_scheduler_mmm(l)?, l);
            }
            for &b in &b_values {
                push(ChainConfig::scb(b)?, b);
            }
        }
        Figure::ResponseVsL | Figure::ResponseVsSla => {
            let point = |config: ChainConfig, x: u32| {
                if simulate {
                    Point::Queueing { config, x }
                } else {
                    analytic(config, x)
                }
            };
            for &l in &l_values {
                if figure == Figure::ResponseVsSla {
                    points.push(point(ChainConfig::Sc, l));
                    points.push(point(ChainConfig::scb(1)?, l));
                }
                points.push(point(ChainConfig::subchain_mm1(l)?, l));
                points.push(point(ChainConfig::common_scheduler_mmm(l)?, l));
                if figure == Figure::ResponseVsSla {
                    points.push(Point::Sla { x: l });
                }
            }
        }
        Figure::PlannedLVsVnfs | Figure::ReliabilityVsVnfs => {
            let template = sfc.vnfs()[0];
            for &n in &vnf_counts {
                let chain = SfcSpec::homogeneous(n as usize, template, sfc.arrival_rate(), sfc.delay_sla())?;
                let label = format!("{name}@vnfs={n}");
                if figure == Figure::ReliabilityVsVnfs {
                    points.push(Point::Analytic { sfc: chain.clone(), scenario: label.clone(), config: ChainConfig::Sc, x: 1 });
                    points.push(Point::Analytic { sfc: chain.clone(), scenario: label.clone(), config: ChainConfig::scb(1)?, x: 1 });
                }
                for setting in [Setting::Mm1, Setting::Mmm] {
                    points.push(Point::Planned { sfc: chain.clone(), scenario: label.clone(), setting });
                }
            }
        }
    }

    let seed_for = |config: ChainConfig| sim_config_for(scenario, sfc, config, opts.seed).seed;
    let rows = points
        .into_par_iter()
        .map(|point| -> Result<Option<CsvRow>> {
            Ok(Some(match point {
                Point::Analytic { sfc, scenario, config, x } => {
                    CsvRow::analytic(&scenario, &model::analyze(&sfc, config), x)
                }
                Point::Availability { config, x } => {
                    let seed = seed_for(config);
                    let est = sim::estimate_availability(sfc, config, scenario.sim.availability_trials(), seed)?;
                    CsvRow::analytic(name, &model::analyze(sfc, config), x).with_availability(&est, seed)
                }
                Point::Queueing { config, x } => {
                    let result = sim::run_simulation(&sim_config_for(scenario, sfc, config, opts.seed))?;
                    CsvRow::analytic(name, &model::analyze(sfc, config), x).with_queueing(&result)
                }
                Point::Planned { sfc, scenario, setting } => {
                    // Chains too long to meet the SLA at all have no plan.
                    match planner::plan(&PlanRequest::new(sfc.clone(), setting)) {
                        Ok(plan) => CsvRow::analytic(&scenario, &model::analyze(&sfc, plan.config()), plan.l),
                        Err(Error::Infeasible { .. }) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                }
                Point::Sla { x } => CsvRow {
                    scenario: name.to_string(),
                    config_label: SLA_LABEL.to_string(),
                    l_or_b: x,
                    reliability_analytic: None,
                    reliability_simulated: None,
                    ci_rel: None,
                    response_analytic: Some(sfc.delay_sla()),
                    response_simulated: None,
                    ci_resp: None,
                    resources: None,
                    seed: None,
                },
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}
