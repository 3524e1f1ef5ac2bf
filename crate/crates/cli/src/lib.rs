//! Scenario suite, global integrals and reporting on top of `caloron-core`.

pub mod checks;
pub mod config;
pub mod error;
pub mod integrals;
pub mod report;
pub mod scenario;
pub mod suite;

pub use config::SuiteConfig;
pub use error::{ConfigError, ReportError};
pub use report::SuiteReport;
pub use suite::run_suite;
