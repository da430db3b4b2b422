//! Scenario files: TOML with an explicit `schema_version`.
//!
//! ```toml
//! schema_version = 1
//! name = "example"
//! configs = ["sc", "scb:1", "mm1:3", "mmm:6"]
//!
//! [sfc]
//! arrival_rate = 100.0
//! delay_sla = 0.125
//!
//! [[sfc.vnfs]]
//! service_rate = 200.0
//! reliability = 0.9
//! resource_weight = 1.0
//!
//! [sim]                 # optional, every key optional
//! seed = 7
//!
//! [[sweeps]]            # optional
//! variable = "l"        # l | b | vnf_count
//! start = 1
//! end = 8
//! step = 1
//! ```
//!
//! Validation errors carry the line of the offending value.

use std::fs;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::model::{ChainConfig, SfcSpec, VnfSpec};
use crate::sim::SimConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// The bundled reference scenario.
pub const TABLE1_SCENARIO: &str = include_str!("../scenarios/table1.scenario");

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub sfc: SfcSpec,
    pub configs: Vec<ChainConfig>,
    pub sim: SimOverrides,
    pub sweeps: Vec<Sweep>,
}

/// Optional replacements for the simulator defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimOverrides {
    pub warmup_departures: Option<u64>,
    pub measured_departures: Option<u64>,
    pub replications: Option<u32>,
    pub seed: Option<u64>,
    pub queue_limit: Option<usize>,
    pub availability_trials: Option<u64>,
}

pub const DEFAULT_AVAILABILITY_TRIALS: u64 = 1_000_000;

impl SimOverrides {
    pub fn apply(&self, mut config: SimConfig) -> SimConfig {
        if let Some(v) = self.warmup_departures {
            config.warmup_departures = v;
        }
        if let Some(v) = self.measured_departures {
            config.measured_departures = v;
        }
        if let Some(v) = self.replications {
            config.replications = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.queue_limit {
            config.queue_limit = v;
        }
        config
    }

    pub fn availability_trials(&self) -> u64 {
        self.availability_trials.unwrap_or(DEFAULT_AVAILABILITY_TRIALS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    L,
    B,
    VnfCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl Sweep {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl Scenario {
    pub fn table1() -> Self {
        Self::from_toml_str(TABLE1_SCENARIO).expect("bundled scenario is valid")
    }

    pub fn sweep(&self, variable: SweepVariable) -> Option<&Sweep> {
        self.sweeps.iter().find(|s| s.variable == variable)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| Error::Parse {
            message: e.message().to_string(),
            line: e.span().map(|s| line_of(text, s.start)),
        })?;
        raw.validate(text)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        message: format!("cannot read {}: {e}", path.display()),
        line: None,
    })?;
    Scenario::from_toml_str(&text)
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema_version: Spanned<u32>,
    name: String,
    sfc: RawSfc,
    #[serde(default)]
    configs: Vec<Spanned<String>>,
    #[serde(default)]
    sim: SimOverrides,
    #[serde(default)]
    sweeps: Vec<RawSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSfc {
    arrival_rate: Spanned<f64>,
    delay_sla: Spanned<f64>,
    vnfs: Spanned<Vec<RawVnf>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVnf {
    #[allow(dead_code)]
    name: Option<String>,
    service_rate: Spanned<f64>,
    reliability: Spanned<f64>,
    resource_weight: Spanned<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: Spanned<SweepVariable>,
    start: Spanned<i64>,
    end: Spanned<i64>,
    step: Option<Spanned<i64>>,
}

fn invalid(text: &str, span: Range<usize>, field: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        field: field.to_string(),
        message: message.into(),
        line: Some(line_of(text, span.start)),
    }
}

fn positive_u32(text: &str, value: &Spanned<i64>, field: &str) -> Result<u32> {
    u32::try_from(*value.get_ref())
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| invalid(text, value.span(), field, format!("must be a positive integer, got {}", value.get_ref())))
}

impl RawScenario {
    fn validate(self, text: &str) -> Result<Scenario> {
        if *self.schema_version.get_ref() != SCHEMA_VERSION {
            return Err(invalid(
                text,
                self.schema_version.span(),
                "schema_version",
                format!("unsupported schema version {} (expected {SCHEMA_VERSION})", self.schema_version.get_ref()),
            ));
        }
        if self.name.trim().is_empty() {
            return Err(Error::validation("name", "must not be empty"));
        }

        let sfc_raw = self.sfc;
        let vnfs_span = sfc_raw.vnfs.span();
        let mut vnfs = Vec::new();
        for (i, raw) in sfc_raw.vnfs.into_inner().into_iter().enumerate() {
            let check = |value: &Spanned<f64>, field: &str| -> Result<()> {
                let ok = match field {
                    "reliability" => *value.get_ref() > 0.0 && *value.get_ref() <= 1.0,
                    _ => *value.get_ref() > 0.0 && value.get_ref().is_finite(),
                };
                if ok {
                    Ok(())
                } else {
                    let bound = if field == "reliability" { "must lie in (0, 1]" } else { "must be positive" };
                    Err(invalid(text, value.span(), &format!("sfc.vnfs[{i}].{field}"), format!("{bound}, got {}", value.get_ref())))
                }
            };
            check(&raw.service_rate, "service_rate")?;
            check(&raw.reliability, "reliability")?;
            check(&raw.resource_weight, "resource_weight")?;
            vnfs.push(VnfSpec::new(*raw.service_rate.get_ref(), *raw.reliability.get_ref(), *raw.resource_weight.get_ref())?);
        }
        if vnfs.is_empty() {
            return Err(invalid(text, vnfs_span, "sfc.vnfs", "vnfs must be non-empty"));
        }
        for (field, value) in [("sfc.arrival_rate", &sfc_raw.arrival_rate), ("sfc.delay_sla", &sfc_raw.delay_sla)] {
            if !(*value.get_ref() > 0.0 && value.get_ref().is_finite()) {
                return Err(invalid(text, value.span(), field, format!("must be positive, got {}", value.get_ref())));
            }
        }
        let sfc = SfcSpec::new(vnfs, *sfc_raw.arrival_rate.get_ref(), *sfc_raw.delay_sla.get_ref())?;

        let configs = self
            .configs
            .iter()
            .map(|label| {
                label.get_ref().parse::<ChainConfig>().map_err(|e| {
                    invalid(text, label.span(), "configs", e.to_string())
                })
            })
            .collect::<Result<Vec<_>>>()?;

        if let Some(0) = self.sim.replications {
            return Err(Error::validation("sim.replications", "must be positive"));
        }

        let mut sweeps = Vec::new();
        for raw in &self.sweeps {
            let start = positive_u32(text, &raw.start, "sweeps.start")?;
            let end = positive_u32(text, &raw.end, "sweeps.end")?;
            let step = match &raw.step {
                Some(step) => positive_u32(text, step, "sweeps.step")?,
                None => 1,
            };
            if end < start {
                return Err(invalid(text, raw.end.span(), "sweeps.end", format!("range {start}..={end} is empty")));
            }
            let variable = *raw.variable.get_ref();
            if sweeps.iter().any(|s: &Sweep| s.variable == variable) {
                return Err(invalid(text, raw.variable.span(), "sweeps.variable", "each variable may be swept once"));
            }
            sweeps.push(Sweep {
                variable,
                start,
                end,
                step,
            });
        }

        Ok(Scenario {
            name: self.name,
            sfc,
            configs,
            sim: self.sim,
            sweeps,
        })
    }
}
