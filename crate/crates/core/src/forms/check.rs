use std::fmt;

/// Minimum observed order for a convergent check to pass.
pub const MIN_ORDER: f64 = 1.8;
/// Residuals below this are exact up to rounding and need no order estimate.
pub const FLAT_FLOOR: f64 = 1e-10;

/// Whether a residual is expected to shrink under grid refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Algebraic identity evaluated pointwise; no refinement.
    Exact,
    /// Discretization error `O(h²)`; requires two resolutions.
    Convergent,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    /// Residual at the finest resolution.
    pub residual: f64,
    pub tolerance: f64,
    /// Estimated from the two finest resolutions.
    pub order: Option<f64>,
    pub pass: bool,
}

/// `log(r₁/r₂) / log(h₁/h₂)`.
pub fn convergence_order(h1: f64, r1: f64, h2: f64, r2: f64) -> f64 {
    (r1 / r2).ln() / (h1 / h2).ln()
}

impl CheckResult {
    pub fn exact(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            kind: CheckKind::Exact,
            residual,
            tolerance,
            order: None,
            pass: residual < tolerance,
        }
    }

    /// From `(h, residual)` pairs ordered coarse to fine. Passes when the
    /// finest residual is below tolerance and either the observed order is
    /// at least [`MIN_ORDER`] or the residual is already at rounding level.
    /// The order is undefined when either residual is zero.
    pub fn convergent(name: impl Into<String>, study: &[(f64, f64)], tolerance: f64) -> Self {
        let (_, residual) = *study.last().expect("at least one resolution");
        let order = match study {
            [.., (h1, r1), (h2, r2)] if *r1 > 0.0 && *r2 > 0.0 => Some(convergence_order(*h1, *r1, *h2, *r2)),
            _ => None,
        };
        let converged = residual < FLAT_FLOOR || order.is_some_and(|o| o >= MIN_ORDER);
        CheckResult {
            name: name.into(),
            kind: CheckKind::Convergent,
            residual,
            tolerance,
            order,
            pass: residual.is_finite() && residual < tolerance && converged,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: residual {:.3e} (tol {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance
        )?;
        if let Some(o) = self.order {
            write!(f, ", order {o:.2}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        assert!(CheckResult::exact("a", 1e-9, 1e-8).pass);
        assert!(!CheckResult::exact("a", 1e-7, 1e-8).pass);
        let c = CheckResult::convergent("b", &[(0.1, 4e-7), (0.05, 1e-7)], 1e-6);
        assert!(c.pass && (c.order.unwrap() - 2.0).abs() < 1e-12);
        assert!(!CheckResult::convergent("b", &[(0.1, 2e-7), (0.05, 1e-7)], 1e-6).pass);
        assert!(CheckResult::convergent("b", &[(0.1, 1e-14), (0.05, 2e-14)], 1e-6).pass);
        let exact = CheckResult::convergent("b", &[(0.1, 0.0), (0.05, 0.0)], 1e-6);
        assert!(exact.pass && exact.order.is_none());
        assert!(!CheckResult::convergent("b", &[(0.1, f64::NAN), (0.05, f64::NAN)], 1e-6).pass);
    }
}
