use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sfc_subchain::bench::{self, CsvRow, Figure, ReproduceOptions, OUT_DIR_ENV};
use sfc_subchain::planner::DEFAULT_L_MAX;
use sfc_subchain::{load_scenario, ChainConfig, Error, Result, Scenario, Setting};

#[derive(Parser)]
#[command(name = "sfc-subchain", version, about = "Plan and validate subchained service function chains")]
struct Cli {
    /// Directory for CSV output; CSV goes to stdout when unset.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    /// Print only CSV, no human-readable summary.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file; the bundled table1 scenario when omitted.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Override the scenario's delay SLA in seconds.
    #[arg(long)]
    delay_sla: Option<f64>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<Scenario> {
        let mut scenario = match &self.scenario {
            Some(path) => load_scenario(path)?,
            None => Scenario::table1(),
        };
        if let Some(psi) = self.delay_sla {
            scenario.sfc = scenario.sfc.with_delay_sla(psi)?;
        }
        Ok(scenario)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form reliability, response time and resources.
    Analyze {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// sc, scb:<b>, mm1:<l> or mmm:<l>; every scenario config when omitted.
        #[arg(long)]
        config: Option<ChainConfig>,
    },
    /// Largest subchain count meeting the delay SLA.
    Plan {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "mmm")]
        setting: Setting,
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        l_max: u32,
    },
    /// Discrete-event and Monte Carlo runs for one configuration.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        config: ChainConfig,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Regenerate the data behind one comparison figure (5a..5f).
    Reproduce {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        figure: Figure,
        #[arg(long)]
        seed: Option<u64>,
        /// Skip simulation and emit closed-form columns only.
        #[arg(long)]
        analytic_only: bool,
    },
}

fn emit(cli: &Cli, file_name: &str, rows: &[CsvRow]) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(file_name);
            bench::write_csv(rows, fs::File::create(&path)?)?;
            if !cli.quiet {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        None => bench::write_csv(rows, std::io::stdout().lock()),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let say = |line: String| {
        if !cli.quiet {
            eprintln!("{line}");
        }
    };
    match &cli.command {
        Command::Analyze { scenario, config } => {
            let scenario = scenario.load()?;
            let configs = match config {
                Some(c) => vec![*c],
                None if scenario.configs.is_empty() => vec![ChainConfig::Sc],
                None => scenario.configs.clone(),
            };
            let mut rows = Vec::new();
            for config in configs {
                let (report, row) = bench::cmd_analyze(&scenario, config)?;
                say(format!(
                    "{config:>8}  reliability {:.8}  response {:.6} s  resources {}",
                    report.reliability,
                    report.expected_response_time.unwrap_or(f64::NAN),
                    report.total_resources
                ));
                rows.push(row);
            }
            emit(cli, &format!("{}_analyze.csv", scenario.name), &rows)
        }
        Command::Plan {
            scenario,
            setting,
            l_max,
        } => {
            let scenario = scenario.load()?;
            let (plan, row) = bench::cmd_plan(&scenario, *setting, *l_max)?;
            say(format!(
                "{setting}: l = {}  response {:.6} s (SLA {} s)  reliability {:.8}",
                plan.l,
                plan.predicted_response,
                scenario.sfc.delay_sla(),
                plan.predicted_reliability
            ));
            emit(cli, &format!("{}_plan_{setting}.csv", scenario.name), &[row])
        }
        Command::Simulate {
            scenario,
            config,
            seed,
        } => {
            let scenario = scenario.load()?;
            let out = bench::cmd_simulate(&scenario, *config, *seed)?;
            say(format!(
                "{config}: response {:.6} ± {:.6} s (analytic {:.6}), availability {:.6} ± {:.6} (analytic {:.8})",
                out.queueing.mean_response,
                out.queueing.ci95_halfwidth,
                out.analysis.expected_response_time.unwrap_or(f64::NAN),
                out.availability.estimate,
                out.availability.ci95_halfwidth,
                out.analysis.reliability
            ));
            let label = config.to_string().replace(':', "-");
            emit(cli, &format!("{}_simulate_{label}.csv", scenario.name), &[out.row])
        }
        Command::Reproduce {
            scenario,
            figure,
            seed,
            analytic_only,
        } => {
            let scenario = scenario.load()?;
            let opts = ReproduceOptions {
                analytic_only: *analytic_only,
                seed: *seed,
            };
            let rows = bench::cmd_reproduce(&scenario, *figure, opts)?;
            say(format!("figure {figure}: {} rows", rows.len()));
            emit(cli, &format!("fig{figure}.csv"), &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_byte(&e))
        }
    }
}

fn exit_byte(e: &Error) -> u8 {
    u8::try_from(e.exit_code()).unwrap_or(1)
}
