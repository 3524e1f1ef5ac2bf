use std::path::PathBuf;
use std::process::ExitCode;

use caloron_cli::config::{Group, IntegralSettings, SuiteConfig};
use caloron_cli::error::ConfigError;
use caloron_cli::integrals::Integral;
use caloron_cli::report::{real, Format, SuiteReport};
use caloron_cli::suite::{run_suite, threads_from_env, with_threads, THREADS_VAR};
use clap::{Parser, Subcommand};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const CONFIG_ERROR: u8 = 2;

/// Numerical verification of the caloron correspondence and the string
/// class of LG⋊S¹-bundles.
#[derive(Parser)]
#[command(version, after_help = format!("Worker threads are taken from {THREADS_VAR} when set."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suite described by a TOML config.
    Check {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Also write the records to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate one global integral: pontryaginClutched, pontryaginFlat,
    /// loopGroupR or loopGroupGenerator.
    Integrate {
        name: String,
        /// Take group and integral settings from this config.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Re-render a saved records file.
    Report {
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        records: PathBuf,
    },
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(CONFIG_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { CONFIG_ERROR } else { PASS });
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    match cli.command {
        Command::Check { config, format, output } => {
            let config = match SuiteConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let report = match with_threads(threads, || run_suite(&config)) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Some(path) = output {
                if let Err(e) = std::fs::write(&path, report.records()) {
                    return fail(format!("cannot write {}: {e}", path.display()));
                }
            }
            print!("{}", report.render(format));
            ExitCode::from(if report.pass() { PASS } else { FAIL })
        }
        Command::Integrate { name, config } => {
            let Some(integral) = Integral::from_name(&name) else {
                return fail(ConfigError::UnknownIntegral(name));
            };
            let settings = match config.map(|p| SuiteConfig::load(&p)).transpose() {
                Ok(Some(c)) if c.group != Group::Su2 => {
                    return fail(ConfigError::Incompatible {
                        scenario: integral.scenario().to_string(),
                        group: c.group.to_string(),
                    })
                }
                Ok(c) => c.map_or_else(IntegralSettings::default, |c| c.integrals),
                Err(e) => return fail(e),
            };
            let value = match with_threads(threads, || integral.evaluate(&settings)) {
                Ok(Ok(v)) => v,
                Ok(Err(e)) => return fail(e),
                Err(e) => return fail(e),
            };
            let pass = (value - integral.expected() as f64).abs() < 0.05;
            println!(
                "integral name={} resolution={} value={} expected={} pass={pass}",
                integral.name(),
                integral.resolution(&settings),
                real(value),
                integral.expected()
            );
            ExitCode::from(if pass { PASS } else { FAIL })
        }
        Command::Report { format, records } => {
            let text = match std::fs::read_to_string(&records) {
                Ok(t) => t,
                Err(e) => return fail(format!("cannot read {}: {e}", records.display())),
            };
            match SuiteReport::parse(&text) {
                Ok(report) => {
                    print!("{}", report.render(format));
                    ExitCode::from(if report.pass() { PASS } else { FAIL })
                }
                Err(e) => fail(format!("{}: {e}", records.display())),
            }
        }
    }
}
