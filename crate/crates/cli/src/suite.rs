//! Runs the scenario × check matrix.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::checks::{measure_integral, Cell, Check, Measurement, Mode};
use crate::config::{Group, SuiteConfig};
use crate::report::{CellError, Environment, Header, IntegralValue, Record, SuiteReport};
use crate::scenario::{Fixture, Scenario};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "CALORON_THREADS";

/// Selected `(scenario, check)` cells in report order.
pub fn cells(config: &SuiteConfig) -> Vec<(Scenario, Check)> {
    Scenario::ALL
        .into_iter()
        .filter(|s| config.scenarios.contains(s))
        .flat_map(|s| {
            Check::ALL
                .iter()
                .copied()
                .filter(move |c| c.applies(s) && config.selects(*c))
                .map(move |c| (s, c))
        })
        .collect()
}

/// Rng of one cell: the suite seed on stream `1000·scenario + 1 + check`.
/// Stream `1000·scenario` seeds the scenario data.
pub fn cell_rng(seed: u64, scenario: Scenario, check: Check) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(scenario.index() * 1000 + 1 + check.index());
    rng
}

type Outcome = (Scenario, Check, caloron_core::Result<Measurement>);

fn measure_all<const N: usize>(config: &SuiteConfig) -> Vec<Outcome> {
    let fixtures: Vec<(Scenario, Option<Fixture<N>>)> = config
        .scenarios
        .iter()
        .map(|&s| (s, Fixture::new(s, config.loop_samples, config.seed)))
        .collect();
    cells(config)
        .into_par_iter()
        .map(|(scenario, check)| {
            let fixture = fixtures
                .iter()
                .find(|(s, _)| *s == scenario)
                .and_then(|(_, f)| f.as_ref());
            let outcome = match (check.mode(), fixture) {
                (Mode::Integral(integral), _) => measure_integral(integral, &config.integrals),
                (_, Some(fixture)) => Cell {
                    fixture,
                    config,
                    rng: cell_rng(config.seed, scenario, check),
                }
                .measure(check),
                (_, None) => unreachable!("identity checks apply only to scenarios with data"),
            };
            (scenario, check, outcome)
        })
        .collect()
}

/// Runs every selected cell on the current rayon pool.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let outcomes = match config.group {
        Group::Su2 => measure_all::<2>(config),
        Group::Su3 => measure_all::<3>(config),
    };
    let mut report = SuiteReport {
        header: Header {
            group: config.group.to_string(),
            loop_samples: config.loop_samples,
            seed: config.seed,
            fd_refinement: config.fd_refinement,
        },
        records: Vec::with_capacity(outcomes.len()),
        integrals: Vec::new(),
        errors: Vec::new(),
        elapsed_seconds: None,
        environment: Some(Environment::current(rayon::current_num_threads())),
    };
    for (scenario, check, outcome) in outcomes {
        let tolerance = config.tolerance(check);
        let record = match outcome {
            Ok(m) => {
                if let (
                    Measurement::Integral {
                        resolution,
                        value,
                        expected,
                    },
                    Mode::Integral(integral),
                ) = (&m, check.mode())
                {
                    report.integrals.push(IntegralValue {
                        name: integral.name().to_owned(),
                        scenario: scenario.to_string(),
                        resolution: *resolution,
                        value: *value,
                        expected: *expected,
                    });
                }
                let judged = m.judge(check.name(), tolerance);
                Record {
                    check: judged.name,
                    scenario: scenario.to_string(),
                    resolution: m.resolution(),
                    residual: judged.residual,
                    tolerance,
                    order: judged.order,
                    pass: judged.pass,
                }
            }
            Err(e) => {
                report.errors.push(CellError {
                    check: check.name().to_owned(),
                    scenario: scenario.to_string(),
                    message: e.to_string(),
                });
                Record {
                    check: check.name().to_owned(),
                    scenario: scenario.to_string(),
                    resolution: 0,
                    residual: f64::NAN,
                    tolerance,
                    order: None,
                    pass: false,
                }
            }
        };
        report.records.push(record);
    }
    report.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    report
}

/// Runs `f` on a pool of `threads` workers, or the global pool for `None`.
pub fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, rayon::ThreadPoolBuildError> {
    match threads {
        None => Ok(f()),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
    }
}

/// Thread count from [`THREADS_VAR`]; unset or empty means the rayon default.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_VAR}={s} is not a positive integer")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(scenarios: &str, checks: &str) -> SuiteConfig {
        SuiteConfig::from_toml(&format!(
            "[suite]\ngroup = \"su2\"\nloop_samples = 64\nresolutions = [9, 17]\nresolutions_3d = [9, 11]\n\
             resolutions_4d = [9, 11]\nseed = 3\nscenarios = [{scenarios}]\nchecks = [{checks}]\n"
        ))
        .unwrap()
    }

    #[test]
    fn cells_follow_canonical_order() {
        let c = config("\"seededNonabelian\", \"flat\"", "\"bundle.\"");
        let cells = cells(&c);
        assert_eq!(cells[0], (Scenario::Flat, Check::Verticality));
        assert!(cells.iter().all(|(_, c)| c.name().starts_with("bundle.")));
        assert_eq!(cells.last().unwrap().0, Scenario::SeededNonabelian);
    }

    #[test]
    fn pointwise_suite_passes() {
        let c = config(
            "\"flat\", \"seededNonabelian\"",
            "\"bundle.verticality\", \"bundle.cocycle\", \"caloron.round_trip\"",
        );
        let report = run_suite(&c);
        assert_eq!(report.records.len(), 6);
        assert!(report.pass(), "{}", report.human());
        assert!(report.records.iter().all(|r| r.resolution == 0));
    }

    #[test]
    fn explicit_pool_size() {
        assert_eq!(with_threads(Some(2), rayon::current_num_threads).unwrap(), 2);
    }
}
