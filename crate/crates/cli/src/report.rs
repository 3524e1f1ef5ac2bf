//! Suite reports: line records with a fixed field order, and a human
//! rendering of the same content.
//!
//! The body (everything but the `elapsed` and `environment` trailer lines)
//! depends only on the configuration.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::ReportError;

/// Format version written in the header line.
pub const VERSION: u32 = 1;

/// Outcome of one `(check, scenario)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub check: String,
    pub scenario: String,
    /// Finest resolution used; 0 for pointwise checks.
    pub resolution: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub order: Option<f64>,
    pub pass: bool,
}

/// Value of a global integral next to its integer.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralValue {
    pub name: String,
    pub scenario: String,
    pub resolution: usize,
    pub value: f64,
    pub expected: i64,
}

/// A cell that could not be evaluated; it also appears as a failing record.
#[derive(Clone, Debug, PartialEq)]
pub struct CellError {
    pub check: String,
    pub scenario: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Header {
    pub group: String,
    pub loop_samples: usize,
    pub seed: u64,
    pub fd_refinement: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Environment {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub threads: usize,
}

impl Environment {
    pub fn current(threads: usize) -> Self {
        Environment {
            version: env!("CARGO_PKG_VERSION").to_owned(),
            os: std::env::consts::OS.to_owned(),
            arch: std::env::consts::ARCH.to_owned(),
            threads,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub header: Header,
    pub records: Vec<Record>,
    pub integrals: Vec<IntegralValue>,
    pub errors: Vec<CellError>,
    pub elapsed_seconds: Option<f64>,
    pub environment: Option<Environment>,
}

/// Output format of `report` and `check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Records,
}

/// 17 significant digits; `NaN` and `inf` as Rust prints them.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass) && self.errors.is_empty()
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    /// Record lines without the trailer.
    pub fn body(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "report version={VERSION} group={} loop_samples={} seed={} fd_refinement={}\n",
            h.group, h.loop_samples, h.seed, h.fd_refinement
        );
        for r in &self.records {
            let order = r.order.map_or_else(|| "none".to_owned(), real);
            let _ = writeln!(
                out,
                "check name={} scenario={} resolution={} residual={} tolerance={} order={} pass={}",
                r.check,
                r.scenario,
                r.resolution,
                real(r.residual),
                real(r.tolerance),
                order,
                r.pass
            );
        }
        for i in &self.integrals {
            let _ = writeln!(
                out,
                "integral name={} scenario={} resolution={} value={} expected={}",
                i.name,
                i.scenario,
                i.resolution,
                real(i.value),
                i.expected
            );
        }
        for e in &self.errors {
            let _ = writeln!(
                out,
                "error check={} scenario={} message={}",
                e.check, e.scenario, e.message
            );
        }
        let _ = writeln!(
            out,
            "summary checks={} failed={} pass={}",
            self.records.len(),
            self.failed(),
            self.pass()
        );
        out
    }

    /// Body followed by the trailer.
    pub fn records(&self) -> String {
        let mut out = self.body();
        if let Some(s) = self.elapsed_seconds {
            let _ = writeln!(out, "elapsed seconds={}", real(s));
        }
        if let Some(e) = &self.environment {
            let _ = writeln!(
                out,
                "environment version={} os={} arch={} threads={}",
                e.version, e.os, e.arch, e.threads
            );
        }
        out
    }

    pub fn human(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "caloron suite: group {}, N = {}, seed {}, fd_refinement {}\n\n",
            h.group, h.loop_samples, h.seed, h.fd_refinement
        );
        let width = self.records.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let scenario_width = self.records.iter().map(|r| r.scenario.len()).max().unwrap_or(0);
        for r in &self.records {
            let _ = write!(
                out,
                "{}  {:width$}  {:scenario_width$}  res {:>3}  residual {:.3e}  tol {:.1e}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.scenario,
                r.resolution,
                r.residual,
                r.tolerance
            );
            if let Some(o) = r.order {
                let _ = write!(out, "  order {o:.2}");
            }
            out.push('\n');
        }
        if !self.integrals.is_empty() {
            out.push('\n');
        }
        for i in &self.integrals {
            let _ = writeln!(
                out,
                "{} on {} at {}: {:.6} (expected {})",
                i.name, i.scenario, i.resolution, i.value, i.expected
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "ERROR {} on {}: {}", e.check, e.scenario, e.message);
        }
        let _ = writeln!(
            out,
            "\n{} checks, {} failed: {}",
            self.records.len(),
            self.failed(),
            if self.pass() { "PASS" } else { "FAIL" }
        );
        if let Some(s) = self.elapsed_seconds {
            let _ = write!(out, "elapsed {s:.1} s");
            if let Some(e) = &self.environment {
                let _ = write!(
                    out,
                    " (caloron {}, {} {}, {} threads)",
                    e.version, e.os, e.arch, e.threads
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Records => self.records(),
        }
    }

    /// Parses the output of [`SuiteReport::records`].
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.is_empty());
        let (n, first) = lines.next().ok_or(ReportError {
            line: 1,
            message: "empty report".into(),
        })?;
        let mut f = Fields::new(n, first, "report")?;
        let version: u32 = f.value("version")?;
        if version != VERSION {
            return Err(f.error(format!("unsupported version {version}")));
        }
        let header = Header {
            group: f.string("group")?,
            loop_samples: f.value("loop_samples")?,
            seed: f.value("seed")?,
            fd_refinement: f.value("fd_refinement")?,
        };
        f.end()?;
        let mut report = SuiteReport {
            header,
            records: Vec::new(),
            integrals: Vec::new(),
            errors: Vec::new(),
            elapsed_seconds: None,
            environment: None,
        };
        let mut summary = None;
        for (n, line) in lines {
            let kind = line.split(' ').next().unwrap_or_default();
            let mut f = Fields::new(n, line, kind)?;
            match kind {
                "check" => {
                    let record = Record {
                        check: f.string("name")?,
                        scenario: f.string("scenario")?,
                        resolution: f.value("resolution")?,
                        residual: f.value("residual")?,
                        tolerance: f.value("tolerance")?,
                        order: match f.string("order")?.as_str() {
                            "none" => None,
                            s => Some(s.parse().map_err(|_| f.error(format!("bad order `{s}`")))?),
                        },
                        pass: f.value("pass")?,
                    };
                    report.records.push(record);
                }
                "integral" => {
                    let value = IntegralValue {
                        name: f.string("name")?,
                        scenario: f.string("scenario")?,
                        resolution: f.value("resolution")?,
                        value: f.value("value")?,
                        expected: f.value("expected")?,
                    };
                    report.integrals.push(value);
                }
                "error" => {
                    let error = CellError {
                        check: f.string("check")?,
                        scenario: f.string("scenario")?,
                        message: f.rest("message")?,
                    };
                    report.errors.push(error);
                }
                "summary" => {
                    let counts: (usize, usize, bool) = (f.value("checks")?, f.value("failed")?, f.value("pass")?);
                    summary = Some((n, counts));
                }
                "elapsed" => report.elapsed_seconds = Some(f.value("seconds")?),
                "environment" => {
                    report.environment = Some(Environment {
                        version: f.string("version")?,
                        os: f.string("os")?,
                        arch: f.string("arch")?,
                        threads: f.value("threads")?,
                    })
                }
                other => return Err(f.error(format!("unknown line kind `{other}`"))),
            }
            f.end()?;
        }
        let (n, counts) = summary.ok_or(ReportError {
            line: 0,
            message: "missing summary line".into(),
        })?;
        if counts != (report.records.len(), report.failed(), report.pass()) {
            return Err(ReportError {
                line: n + 1,
                message: "summary disagrees with the records".into(),
            });
        }
        Ok(report)
    }
}

/// Cursor over the `key=value` fields of one line, in order.
struct Fields<'a> {
    line: usize,
    rest: &'a str,
}

impl<'a> Fields<'a> {
    fn new(index: usize, text: &'a str, kind: &str) -> Result<Self, ReportError> {
        let line = index + 1;
        let rest = text
            .strip_prefix(kind)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| ReportError {
                line,
                message: format!("expected a `{kind}` line"),
            })?;
        Ok(Fields { line, rest })
    }

    fn error(&self, message: impl Into<String>) -> ReportError {
        ReportError {
            line: self.line,
            message: message.into(),
        }
    }

    fn string(&mut self, key: &str) -> Result<String, ReportError> {
        let body = self
            .rest
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.error(format!("expected field `{key}`")))?;
        let (value, rest) = body.split_once(' ').unwrap_or((body, ""));
        self.rest = rest;
        Ok(value.to_owned())
    }

    fn value<T: FromStr>(&mut self, key: &str) -> Result<T, ReportError> {
        let s = self.string(key)?;
        s.parse()
            .map_err(|_| self.error(format!("bad value `{s}` for `{key}`")))
    }

    /// The final field, which may contain spaces.
    fn rest(&mut self, key: &str) -> Result<String, ReportError> {
        let body = self
            .rest
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.error(format!("expected field `{key}`")))?;
        self.rest = "";
        Ok(body.to_owned())
    }

    fn end(&self) -> Result<(), ReportError> {
        if self.rest.is_empty() {
            Ok(())
        } else {
            Err(self.error(format!("trailing fields `{}`", self.rest)))
        }
    }
}
