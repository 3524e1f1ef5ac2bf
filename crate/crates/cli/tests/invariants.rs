use caloron_cli::checks::Check;
use caloron_cli::config::SuiteConfig;
use caloron_cli::report::{CellError, Environment, Header, IntegralValue, Record, SuiteReport};
use caloron_cli::scenario::Scenario;
use proptest::prelude::*;

fn real() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        (-20i32..5, 1.0f64..10.0).prop_map(|(e, m)| m * 10f64.powi(e)),
        Just(0.0),
        Just(f64::NAN),
        Just(f64::INFINITY),
    ]
}

fn record() -> impl Strategy<Value = Record> {
    (
        0..Check::ALL.len(),
        0..Scenario::ALL.len(),
        0usize..200,
        real(),
        real(),
        proptest::option::of(real()),
        any::<bool>(),
    )
        .prop_map(|(c, s, resolution, residual, tolerance, order, pass)| Record {
            check: Check::ALL[c].name().to_owned(),
            scenario: Scenario::ALL[s].name().to_owned(),
            resolution,
            residual,
            tolerance,
            order,
            pass,
        })
}

fn report() -> impl Strategy<Value = SuiteReport> {
    (
        prop::collection::vec(record(), 0..12),
        prop::collection::vec((real(), -3i64..4, 9usize..40), 0..3),
        prop::collection::vec("[ -~]{0,40}", 0..3),
        any::<u64>(),
        16usize..200,
        any::<bool>(),
        proptest::option::of((0.0f64..1e4, 1usize..64)),
    )
        .prop_map(
            |(records, integrals, messages, seed, loop_samples, fd_refinement, trailer)| SuiteReport {
                header: Header {
                    group: "su2".into(),
                    loop_samples,
                    seed,
                    fd_refinement,
                },
                records,
                integrals: integrals
                    .into_iter()
                    .map(|(value, expected, resolution)| IntegralValue {
                        name: "loopGroupR".into(),
                        scenario: "loopGroupSphere".into(),
                        resolution,
                        value,
                        expected,
                    })
                    .collect(),
                errors: messages
                    .into_iter()
                    .map(|message| CellError {
                        check: "bundle.bianchi".into(),
                        scenario: "flat".into(),
                        message,
                    })
                    .collect(),
                elapsed_seconds: trailer.map(|t| t.0),
                environment: trailer.map(|t| Environment::current(t.1)),
            },
        )
}

proptest! {
    #[test]
    fn records_round_trip(r in report()) {
        let text = r.records();
        let parsed = SuiteReport::parse(&text).unwrap();
        prop_assert_eq!(parsed.records(), text);
        prop_assert_eq!(parsed.body(), r.body());
        prop_assert_eq!(parsed.pass(), r.pass());
    }

    #[test]
    fn parse_never_panics(text in "[ -~\n]{0,300}") {
        let _ = SuiteReport::parse(&text);
    }

    #[test]
    fn ladders_are_validated(ladder in prop::collection::vec(0usize..60, 1..5)) {
        let text = format!(
            "[suite]\ngroup = \"su2\"\nloop_samples = 32\nresolutions = {ladder:?}\nseed = 1\nscenarios = [\"flat\"]\n"
        );
        let valid = ladder.iter().all(|&r| r >= 9 && r % 2 == 1) && ladder.windows(2).all(|w| w[0] < w[1]);
        let parsed = SuiteConfig::from_toml(&text);
        prop_assert_eq!(parsed.is_ok(), valid);
        if let Ok(c) = parsed {
            prop_assert_eq!(c.ladder(2), &ladder[..]);
        }
    }
}
