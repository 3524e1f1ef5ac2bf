//! Suite configuration: TOML with three tables, `[suite]`, `[integrals]`
//! and `[tolerances]`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::checks::Check;
use crate::error::ConfigError;
use crate::scenario::Scenario;

/// Structure group of the loop group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Su2,
    Su3,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Su2 => "su2",
            Group::Su3 => "su3",
        })
    }
}

/// Settings of the two global integrals.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegralSettings {
    /// Points per axis of the `[0,1] × S³` grid.
    pub pontryagin_resolution: usize,
    /// Points per axis of the sphere of directions.
    pub loop_group_resolution: usize,
    pub loop_group_samples: usize,
}

impl Default for IntegralSettings {
    fn default() -> Self {
        IntegralSettings {
            pontryagin_resolution: 17,
            loop_group_resolution: 33,
            loop_group_samples: 64,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    group: Group,
    loop_samples: usize,
    #[serde(default = "default_resolutions")]
    resolutions: Vec<usize>,
    #[serde(default = "default_resolutions_3d")]
    resolutions_3d: Vec<usize>,
    #[serde(default = "default_resolutions_4d")]
    resolutions_4d: Vec<usize>,
    #[serde(default = "default_true")]
    fd_refinement: bool,
    seed: u64,
    scenarios: Vec<Scenario>,
    #[serde(default)]
    checks: Option<Vec<String>>,
}

fn default_resolutions() -> Vec<usize> {
    vec![17, 33]
}

fn default_resolutions_3d() -> Vec<usize> {
    vec![13, 17]
}

fn default_resolutions_4d() -> Vec<usize> {
    vec![9, 13]
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    suite: RawSuite,
    #[serde(default)]
    integrals: IntegralSettings,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
}

/// A validated suite configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub group: Group,
    pub loop_samples: usize,
    /// Refinement ladder of 2-dimensional charts.
    pub resolutions: Vec<usize>,
    pub resolutions_3d: Vec<usize>,
    pub resolutions_4d: Vec<usize>,
    /// Richardson chart tangents for checks that involve no grid `d`.
    pub fd_refinement: bool,
    pub seed: u64,
    pub scenarios: Vec<Scenario>,
    /// Check-name prefixes to run; all checks when absent.
    pub checks: Option<Vec<String>>,
    pub integrals: IntegralSettings,
    pub tolerances: BTreeMap<Check, f64>,
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let de = toml::Deserializer::new(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Parse {
            path: e.path().to_string(),
            message: e.inner().message().trim().to_owned(),
        })?;
        Self::validate(raw)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml(&text)
    }

    fn validate(raw: RawConfig) -> Result<Self, ConfigError> {
        let RawConfig {
            suite,
            integrals,
            tolerances,
        } = raw;
        check_samples("suite.loop_samples", suite.loop_samples)?;
        check_ladder("suite.resolutions", &suite.resolutions)?;
        check_ladder("suite.resolutions_3d", &suite.resolutions_3d)?;
        check_ladder("suite.resolutions_4d", &suite.resolutions_4d)?;
        if suite.scenarios.is_empty() {
            return Err(invalid("suite.scenarios", "at least one scenario is required"));
        }
        for (i, s) in suite.scenarios.iter().enumerate() {
            if suite.scenarios[..i].contains(s) {
                return Err(invalid(
                    format!("suite.scenarios[{i}]"),
                    format!("duplicate scenario {s}"),
                ));
            }
            if s.is_integral() && suite.group != Group::Su2 {
                return Err(ConfigError::Incompatible {
                    scenario: s.to_string(),
                    group: suite.group.to_string(),
                });
            }
        }
        check_resolution("integrals.pontryagin_resolution", integrals.pontryagin_resolution)?;
        check_resolution("integrals.loop_group_resolution", integrals.loop_group_resolution)?;
        check_samples("integrals.loop_group_samples", integrals.loop_group_samples)?;
        let tolerances = tolerances
            .into_iter()
            .map(|(name, value)| {
                let path = format!("tolerances.{name}");
                let check = Check::from_name(&name).ok_or_else(|| invalid(&path, format!("unknown check `{name}`")))?;
                if !(value.is_finite() && value > 0.0) {
                    return Err(invalid(&path, "tolerance must be positive and finite"));
                }
                Ok((check, value))
            })
            .collect::<Result<_, _>>()?;
        Ok(SuiteConfig {
            group: suite.group,
            loop_samples: suite.loop_samples,
            resolutions: suite.resolutions,
            resolutions_3d: suite.resolutions_3d,
            resolutions_4d: suite.resolutions_4d,
            fd_refinement: suite.fd_refinement,
            seed: suite.seed,
            scenarios: suite.scenarios,
            checks: suite.checks,
            integrals,
            tolerances,
        })
    }

    /// Tolerance of `check`, overridden or default.
    pub fn tolerance(&self, check: Check) -> f64 {
        self.tolerances
            .get(&check)
            .copied()
            .unwrap_or_else(|| check.default_tolerance())
    }

    /// Ladder for charts of dimension `dim`.
    pub fn ladder(&self, dim: usize) -> &[usize] {
        match dim {
            2 => &self.resolutions,
            3 => &self.resolutions_3d,
            _ => &self.resolutions_4d,
        }
    }

    /// Whether `check` passes the prefix filter.
    pub fn selects(&self, check: Check) -> bool {
        self.checks
            .as_ref()
            .is_none_or(|prefixes| prefixes.iter().any(|p| check.name().starts_with(p.as_str())))
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn check_samples(path: &str, n: usize) -> Result<(), ConfigError> {
    if n < 16 || !n.is_multiple_of(2) {
        return Err(invalid(path, format!("{n} must be even and at least 16")));
    }
    Ok(())
}

fn check_resolution(path: &str, r: usize) -> Result<(), ConfigError> {
    if r < 9 || r.is_multiple_of(2) {
        return Err(invalid(path, format!("{r} must be odd and at least 9")));
    }
    Ok(())
}

fn check_ladder(path: &str, ladder: &[usize]) -> Result<(), ConfigError> {
    if ladder.is_empty() {
        return Err(invalid(path, "at least one resolution is required"));
    }
    for (i, &r) in ladder.iter().enumerate() {
        check_resolution(&format!("{path}[{i}]"), r)?;
        if i > 0 && r <= ladder[i - 1] {
            return Err(invalid(format!("{path}[{i}]"), "resolutions must increase"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[suite]
group = "su2"
loop_samples = 64
seed = 7
scenarios = ["flat"]
"#;

    #[test]
    fn defaults_fill_in() {
        let c = SuiteConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(c.resolutions, vec![17, 33]);
        assert_eq!(c.resolutions_4d, vec![9, 13]);
        assert!(c.fd_refinement);
        assert_eq!(c.integrals, IntegralSettings::default());
        assert_eq!(c.tolerance(Check::DAlpha), 1e-6);
    }

    fn error_path(text: &str) -> String {
        match SuiteConfig::from_toml(text).unwrap_err() {
            ConfigError::Parse { path, .. } | ConfigError::Invalid { path, .. } => path,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(error_path(&MINIMAL.replace("64", "15")), "suite.loop_samples");
        assert_eq!(
            error_path(&MINIMAL.replace("seed = 7", "seed = 7\nresolutions = [9, 10]")),
            "suite.resolutions[1]"
        );
        assert_eq!(
            error_path(&MINIMAL.replace("seed = 7", "seed = 7\ncolour = 1")),
            "suite.colour"
        );
        assert_eq!(
            error_path(&MINIMAL.replace("\"flat\"", "\"round\"")),
            "suite.scenarios[0]"
        );
        assert_eq!(error_path(&MINIMAL.replace("seed = 7", "seed = \"x\"")), "suite.seed");
        assert_eq!(
            error_path(&format!("{MINIMAL}\n[tolerances]\n\"no.such\" = 1e-3\n")),
            "tolerances.no.such"
        );
        assert_eq!(
            error_path(&format!("{MINIMAL}\n[tolerances]\n\"bundle.bianchi\" = -1.0\n")),
            "tolerances.bundle.bianchi"
        );
    }

    #[test]
    fn integral_scenarios_need_su2() {
        let text = MINIMAL.replace("su2", "su3").replace("\"flat\"", "\"clutchedS3xS1\"");
        assert!(matches!(
            SuiteConfig::from_toml(&text),
            Err(ConfigError::Incompatible { .. })
        ));
    }

    #[test]
    fn prefix_filter() {
        let c = SuiteConfig::from_toml(&MINIMAL.replace("seed = 7", "seed = 7\nchecks = [\"delta.\"]")).unwrap();
        assert!(c.selects(Check::DAlpha) && !c.selects(Check::Bianchi));
    }
}
