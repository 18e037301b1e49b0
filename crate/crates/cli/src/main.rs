use clap::{Parser, Subcommand, ValueEnum};
use guided_photon_cli::config::{parse_config, ScenarioConfig, SCENARIO_KINDS};
use guided_photon_cli::emit::{emit, OutputFormat};
use guided_photon_cli::scenario::{run, RunError};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_ASSERTION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Waveguide scenario runner: deterministic physics tables from JSON
/// configs.
#[derive(Parser)]
#[command(name = "gphoton", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario config and write its result tables.
    Run {
        /// Path to the scenario JSON.
        config: PathBuf,
        /// Output directory (default: $GPHOTON_OUT_DIR or ".").
        #[arg(long)]
        out: Option<PathBuf>,
        /// Which table format(s) to write.
        #[arg(long, value_enum, default_value = "all")]
        format: FormatArg,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and validate a scenario config without running it.
    Validate {
        /// Path to the scenario JSON.
        config: PathBuf,
    },
    /// List the available scenario kinds.
    ListScenarios,
}

fn load_config(path: &PathBuf) -> Result<ScenarioConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListScenarios => {
            for (kind, description) in SCENARIO_KINDS {
                println!("{kind:<16} {description}");
            }
            ExitCode::SUCCESS
        }
        Command::Validate { config } => match load_config(&config) {
            Ok(c) => {
                println!("OK: {} scenario \"{}\"", c.kind(), c.stem());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
        Command::Run {
            config,
            out,
            format,
            seed,
        } => {
            let mut scenario = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            };
            if let Some(seed) = seed {
                scenario.set_seed(seed);
            }
            let out_dir = out
                .or_else(|| std::env::var_os("GPHOTON_OUT_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));

            let started = Instant::now();
            let result = match run(&scenario) {
                Ok(r) => r,
                Err(RunError::Config(msg)) => {
                    eprintln!("error: config error: {msg}");
                    return ExitCode::from(EXIT_CONFIG);
                }
                Err(RunError::Numerical(msg)) => {
                    eprintln!("error: numerical error: {msg}");
                    return ExitCode::from(EXIT_NUMERICAL);
                }
            };
            let wall = started.elapsed();

            let formats: &[OutputFormat] = match format {
                FormatArg::Csv => &[OutputFormat::Csv],
                FormatArg::Json => &[OutputFormat::Json],
                FormatArg::All => &[OutputFormat::Csv, OutputFormat::Json],
            };
            let stem = scenario.stem();
            for f in formats {
                match emit(&result, *f, &out_dir, &stem) {
                    Ok(path) => eprintln!("wrote {}", path.display()),
                    Err(e) => {
                        eprintln!("error: cannot write output: {e}");
                        return ExitCode::from(EXIT_NUMERICAL);
                    }
                }
            }

            // wall time goes to stderr only: the emitted files must be
            // byte-identical across runs
            eprintln!(
                "{}: {} rows, {} verdicts, {:.1} ms",
                scenario.kind(),
                result.columns.first().map_or(0, |c| c.values.len()),
                result.verdicts.len(),
                wall.as_secs_f64() * 1e3
            );
            let mut all_pass = true;
            for v in &result.verdicts {
                let status = if v.pass { "PASS" } else { "FAIL" };
                eprintln!("  [{status}] {}: {}", v.name, v.detail);
                all_pass &= v.pass;
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ASSERTION)
            }
        }
    }
}
