//! The registry of identity checks and how each one is measured.

use std::f64::consts::{PI, TAU};

use caloron_core::bundle::{
    bianchi_residual, cocycle_residual, connection_equivariance_residual, curvature_difference_residual,
    difference_connection_residual, higgs_difference_residual, higgs_equivariance_residual,
    nabla_equivariance_residual, verticality_residual, BundlePoint, BundleTangent,
};
use caloron_core::caloron::{
    action_invariance_residual, curvature_consistency_residual, curvature_invariance_residual, g_equivariance_residual,
    pontryagin_form, round_trip_residual,
};
use caloron_core::fields::{GroupFamily, PointFamily};
use caloron_core::forms::{CheckResult, Grid, ProbeChart, TangentScheme};
use caloron_core::gerbe::{
    alpha_left_invariance_residual, closed_residual, d_alpha_residual, delta_alpha_residual, delta_curving_residual,
    delta_epsilon_residual, descent_residual, dz_residual, epsilon_alpha_residual, r_rotation_residual,
};
use caloron_core::lie::{AlgebraElement, GroupElement};
use caloron_core::loops::{LoopAlg, LoopG, SdElem, SdTangent};
use caloron_core::probes::{bundle_chart, caloron_chart, fibre_product_chart, group_power_chart};
use caloron_core::string::{
    closedness_residual, fiber_integration_residual, gerbe_binding_residual, lifted_curvature, ms03_form,
    section_independence_residual, string_form,
};
use caloron_core::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{IntegralSettings, SuiteConfig};
use crate::integrals::Integral;
use crate::scenario::{torus_generator, Fixture, Scenario, BASE_DIM};

/// Random points drawn by pointwise checks.
const POINTWISE_SAMPLES: usize = 8;

/// How a check is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Random points, no chart; reported at resolution 0.
    Pointwise,
    /// One chart of dimension `dim`, at the coarsest or finest resolution
    /// of its ladder.
    Exact { dim: usize, finest: bool },
    /// Every resolution of the ladder; passes on order as well.
    Refined { dim: usize },
    /// A global integral against an integer.
    Integral(Integral),
}

macro_rules! checks {
    ($($variant:ident = $name:literal, $tol:expr, $mode:expr;)*) => {
        /// A registered identity check.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Check { $($variant),* }

        impl Check {
            /// Canonical order of the report.
            pub const ALL: &'static [Check] = &[$(Check::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Check::$variant => $name),* }
            }

            pub fn default_tolerance(self) -> f64 {
                match self { $(Check::$variant => $tol),* }
            }

            pub fn mode(self) -> Mode {
                match self { $(Check::$variant => $mode),* }
            }
        }
    };
}

use Mode::*;

checks! {
    DAlpha = "delta.d_alpha", 1e-6, Refined { dim: 2 };
    DeltaAlpha = "delta.delta_alpha", 1e-6, Refined { dim: 2 };
    DeltaEpsilon = "delta.delta_epsilon", 1e-6, Refined { dim: 2 };
    DeltaCurving = "delta.delta_curving", 1e-6, Refined { dim: 2 };
    Dz = "gerbe.dz", 1e-5, Refined { dim: 2 };
    EpsilonAlpha = "gerbe.epsilon_alpha", 1e-7, Exact { dim: 2, finest: false };
    AlphaLeftInvariance = "gerbe.alpha_left_invariance", 1e-8, Exact { dim: 2, finest: false };
    RRotation = "gerbe.r_rotation", 1e-8, Exact { dim: 2, finest: false };
    Descent = "gerbe.descent", 1e-6, Refined { dim: 3 };
    HClosed = "gerbe.h_closed", 1e-10, Exact { dim: 4, finest: false };
    Verticality = "bundle.verticality", 1e-10, Pointwise;
    ConnectionEquivariance = "bundle.connection_equivariance", 1e-8, Exact { dim: 2, finest: false };
    HiggsEquivariance = "bundle.higgs_equivariance", 1e-8, Pointwise;
    NablaEquivariance = "bundle.nabla_equivariance", 1e-7, Exact { dim: 2, finest: false };
    HiggsDifference = "bundle.higgs_difference", 1e-8, Exact { dim: 2, finest: false };
    DifferenceConnection = "bundle.difference_connection", 1e-7, Exact { dim: 2, finest: false };
    CurvatureDifference = "bundle.curvature_difference", 1e-6, Refined { dim: 2 };
    Bianchi = "bundle.bianchi", 1e-6, Refined { dim: 3 };
    Cocycle = "bundle.cocycle", 1e-10, Pointwise;
    RoundTrip = "caloron.round_trip", 1e-12, Pointwise;
    CurvatureConsistency = "caloron.curvature_consistency", 1e-6, Refined { dim: 2 };
    ActionInvariance = "caloron.action_invariance", 1e-7, Exact { dim: 2, finest: false };
    CurvatureInvariance = "caloron.curvature_invariance", 1e-7, Exact { dim: 2, finest: false };
    GEquivariance = "caloron.g_equivariance", 1e-8, Exact { dim: 2, finest: false };
    GerbeBinding = "string.gerbe_binding", 1e-6, Refined { dim: 3 };
    SectionIndependence = "string.section_independence", 1e-6, Refined { dim: 3 };
    StringClosed = "string.closed", 1e-6, Refined { dim: 4 };
    FiberIntegration = "string.fiber_integration", 1e-8, Exact { dim: 3, finest: true };
    Ms03 = "string.ms03", 1e-12, Exact { dim: 3, finest: false };
    HandValue = "string.hand_value", 1e-6, Exact { dim: 3, finest: false };
    PontryaginClutched = "integral.pontryagin_clutched", 0.05, Integral(Integral::PontryaginClutched);
    PontryaginFlat = "integral.pontryagin_flat", 0.05, Integral(Integral::PontryaginFlat);
    LoopGroupR = "integral.loop_group_r", 0.05, Integral(Integral::LoopGroupR);
    LoopGroupGenerator = "integral.loop_group_generator", 0.05, Integral(Integral::LoopGroupGenerator);
}

impl Check {
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Whether the check runs in `scenario`.
    pub fn applies(self, scenario: Scenario) -> bool {
        match self.mode() {
            Integral(i) => i.scenario() == scenario,
            _ if self == Check::HandValue => scenario == Scenario::Abelian,
            _ => !scenario.is_integral(),
        }
    }

    /// Position in [`Check::ALL`], used to derive rng streams.
    pub fn index(self) -> u64 {
        Self::ALL.iter().position(|c| *c == self).expect("registered") as u64
    }
}

/// Raw measurement before the tolerance is applied.
#[derive(Clone, Debug, PartialEq)]
pub enum Measurement {
    Single {
        resolution: usize,
        residual: f64,
    },
    Study {
        resolution: usize,
        study: Vec<(f64, f64)>,
    },
    Integral {
        resolution: usize,
        value: f64,
        expected: i64,
    },
}

impl Measurement {
    pub fn resolution(&self) -> usize {
        match self {
            Measurement::Single { resolution, .. }
            | Measurement::Study { resolution, .. }
            | Measurement::Integral { resolution, .. } => *resolution,
        }
    }

    pub fn judge(&self, name: &str, tolerance: f64) -> CheckResult {
        match self {
            Measurement::Single { residual, .. } => CheckResult::exact(name, *residual, tolerance),
            Measurement::Study { study, .. } => CheckResult::convergent(name, study, tolerance),
            Measurement::Integral { value, expected, .. } => {
                CheckResult::exact(name, (value - *expected as f64).abs(), tolerance)
            }
        }
    }
}

/// State shared by the measurement of one `(scenario, check)` cell.
pub struct Cell<'a, const N: usize> {
    pub fixture: &'a Fixture<N>,
    pub config: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
}

impl<const N: usize> Cell<'_, N> {
    fn transport(&self) -> TangentScheme {
        if self.config.fd_refinement {
            TangentScheme::Richardson
        } else {
            TangentScheme::Central
        }
    }

    fn resolution(&self, dim: usize, finest: bool) -> usize {
        let ladder = self.config.ladder(dim);
        if finest {
            ladder[ladder.len() - 1]
        } else {
            ladder[0]
        }
    }

    fn group_element(&mut self) -> SdElem<N> {
        let f = self.fixture;
        SdElem::new(
            LoopG::random(&mut self.rng, f.len, f.amplitude, f.torus),
            self.rng.gen_range(0.0..TAU),
        )
    }

    fn loop_algebra(&mut self) -> LoopAlg<N> {
        let f = self.fixture;
        LoopAlg::random(&mut self.rng, f.len, f.amplitude, f.torus)
    }

    fn base_point(&mut self) -> Vec<f64> {
        (0..BASE_DIM).map(|_| self.rng.gen_range(-1.0..1.0)).collect()
    }

    fn bundle_point(&mut self, base: Vec<f64>) -> BundlePoint<N> {
        BundlePoint::new(base, self.group_element())
    }

    fn base_chart(&mut self, dim: usize, res: usize) -> Result<ProbeChart<Vec<f64>>> {
        let family = PointFamily::seeded(&mut self.rng, dim, BASE_DIM, crate::scenario::EXTENT);
        Ok(ProbeChart::new(Grid::uniform(dim, res)?, move |x| family.eval(x)))
    }

    fn pointwise(&mut self, mut residual: impl FnMut(&mut Self) -> Result<f64>) -> Result<Measurement> {
        let mut worst = 0.0_f64;
        for _ in 0..POINTWISE_SAMPLES {
            worst = worst.max(residual(self)?);
        }
        Ok(Measurement::Single {
            resolution: 0,
            residual: worst,
        })
    }

    /// Runs `residual` on the chart regridded to every resolution of the
    /// ladder; the chart is built once at the coarsest one.
    fn refined<S: caloron_core::forms::StateSpace>(
        &self,
        chart: ProbeChart<S>,
        residual: impl Fn(&ProbeChart<S>) -> Result<f64>,
    ) -> Result<Measurement> {
        let dim = chart.dim();
        let ladder = self.config.ladder(dim);
        let study = ladder
            .iter()
            .map(|&res| {
                let grid = Grid::uniform(dim, res)?;
                let h = grid.max_spacing();
                Ok((h, residual(&chart.regrid(grid))?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Measurement::Study {
            resolution: ladder[ladder.len() - 1],
            study,
        })
    }

    /// Measures `check` in this cell.
    pub fn measure(&mut self, check: Check) -> Result<Measurement> {
        use Check as C;
        let f = self.fixture;
        let (spec, higgs) = (&f.spec, &f.higgs);
        let (res, chart_dim) = match check.mode() {
            Exact { dim, finest } => (self.resolution(dim, finest), dim),
            Refined { dim } => (self.resolution(dim, false), dim),
            Pointwise | Integral(_) => (0, 0),
        };
        let single = |residual: f64| Measurement::Single {
            resolution: res,
            residual,
        };
        let shape = f.shape(chart_dim);
        match check {
            C::DAlpha => {
                let chart = group_power_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, d_alpha_residual)
            }
            C::DeltaAlpha => {
                let chart = group_power_chart::<N, _>(&mut self.rng, &shape, 3, res)?;
                self.refined(chart, delta_alpha_residual)
            }
            C::DeltaEpsilon => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 3, res)?;
                self.refined(chart, |c| delta_epsilon_residual(spec, c))
            }
            C::DeltaCurving => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, |c| delta_curving_residual(spec, higgs, c))
            }
            C::Dz => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, dz_residual)
            }
            C::EpsilonAlpha => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                Ok(single(epsilon_alpha_residual(spec, &chart)?))
            }
            C::AlphaLeftInvariance => {
                let chart = group_power_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                let k = self.group_element();
                Ok(single(alpha_left_invariance_residual(&chart, &k)?))
            }
            C::RRotation => {
                let chart = group_power_chart::<N, _>(&mut self.rng, &shape, 1, res)?;
                let phi = self.rng.gen_range(0.0..TAU);
                Ok(single(r_rotation_residual(&chart, phi)?))
            }
            C::Descent => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, |c| descent_residual(spec, higgs, c))
            }
            C::HClosed => {
                let chart = bundle_chart::<N, _>(&mut self.rng, &shape, res)?;
                Ok(single(closed_residual(spec, higgs, &chart)?))
            }
            C::Verticality => self.pointwise(|cell| {
                let base = cell.base_point();
                let p = cell.bundle_point(base);
                let xi = cell.loop_algebra();
                Ok(verticality_residual(spec, &p, &xi))
            }),
            C::ConnectionEquivariance => {
                let chart = bundle_chart::<N, _>(&mut self.rng, &shape, res)?.with_scheme(self.transport());
                let k = self.group_element();
                Ok(single(connection_equivariance_residual(spec, &chart, &k)?))
            }
            C::HiggsEquivariance => self.pointwise(|cell| {
                let base = cell.base_point();
                let p = cell.bundle_point(base);
                let k = cell.group_element();
                Ok(higgs_equivariance_residual(higgs, &p, &k))
            }),
            C::NablaEquivariance => {
                let chart = bundle_chart::<N, _>(&mut self.rng, &shape, res)?.with_scheme(self.transport());
                let k = self.group_element();
                Ok(single(nabla_equivariance_residual(spec, higgs, &chart, &k)?))
            }
            C::HiggsDifference => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                Ok(single(higgs_difference_residual(higgs, &chart)?))
            }
            C::DifferenceConnection => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?.with_scheme(self.transport());
                Ok(single(difference_connection_residual(spec, &chart)?))
            }
            C::CurvatureDifference => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, |c| curvature_difference_residual(spec, c))
            }
            C::Bianchi => {
                let chart = bundle_chart::<N, _>(&mut self.rng, &shape, res)?;
                self.refined(chart, |c| bianchi_residual(spec, c))
            }
            C::Cocycle => self.pointwise(|cell| {
                let base = cell.base_point();
                let p1 = cell.bundle_point(base.clone());
                let p2 = cell.bundle_point(base.clone());
                let p3 = cell.bundle_point(base);
                cocycle_residual(&p1, &p2, &p3)
            }),
            C::RoundTrip => self.pointwise(|cell| {
                let base = cell.base_point();
                let p = cell.bundle_point(base);
                let xi = cell.loop_algebra();
                let v = BundleTangent {
                    base: cell.base_point(),
                    fiber: SdTangent::left_invariant(&p.fiber, &xi, cell.rng.gen_range(-1.0..1.0)),
                };
                Ok(round_trip_residual(spec, higgs, &p, &v))
            }),
            C::CurvatureConsistency => {
                let chart = caloron_chart::<N, _>(&mut self.rng, &shape, res)?;
                self.refined(chart, |c| curvature_consistency_residual(spec, higgs, c))
            }
            C::ActionInvariance => {
                let chart = caloron_chart::<N, _>(&mut self.rng, &shape, res)?.with_scheme(self.transport());
                let k = self.group_element();
                Ok(single(action_invariance_residual(spec, higgs, &chart, &k)?))
            }
            C::CurvatureInvariance => {
                let chart = caloron_chart::<N, _>(&mut self.rng, &shape, res)?.with_scheme(self.transport());
                let k = self.group_element();
                Ok(single(curvature_invariance_residual(spec, higgs, &chart, &k)?))
            }
            C::GEquivariance => {
                let chart = caloron_chart::<N, _>(&mut self.rng, &shape, res)?;
                let h = GroupElement::random(&mut self.rng, 1.0);
                Ok(single(g_equivariance_residual(spec, higgs, &chart, &h)?))
            }
            C::GerbeBinding => {
                let base = self.base_chart(3, res)?;
                self.refined(base, |c| gerbe_binding_residual(spec, higgs, c))
            }
            C::SectionIndependence => {
                let chart = fibre_product_chart::<N, _>(&mut self.rng, &shape, 2, res)?;
                self.refined(chart, |c| section_independence_residual(spec, higgs, c))
            }
            C::StringClosed => {
                let base = self.base_chart(4, res)?;
                self.refined(base, |c| closedness_residual(spec, higgs, c))
            }
            C::FiberIntegration => {
                let base = PointFamily::seeded(&mut self.rng, 3, BASE_DIM, crate::scenario::EXTENT);
                let g = GroupFamily::<N>::seeded(&mut self.rng, 3, f.amplitude, crate::scenario::EXTENT);
                let len = f.len;
                let product = ProbeChart::new(Grid::uniform(3, res)?, move |x| {
                    (BundlePoint::section(base.eval(x), len), g.eval(x))
                });
                Ok(single(fiber_integration_residual(spec, higgs, &product)?))
            }
            C::Ms03 => {
                let base = self.base_chart(3, res)?;
                let reduced = spec.without_real_part();
                let full = string_form(&reduced, higgs, &base)?;
                Ok(single(full.interior_distance(&ms03_form(&reduced, higgs, &base)?, 0)?))
            }
            C::HandValue => Ok(single(hand_value_residual(f, res)?)),
            C::PontryaginClutched | C::PontryaginFlat | C::LoopGroupR | C::LoopGroupGenerator => {
                let Integral(integral) = check.mode() else {
                    unreachable!("integral checks have integral mode")
                };
                measure_integral(integral, &self.config.integrals)
            }
        }
    }
}

/// Evaluates a global integral; it needs no scenario data.
pub fn measure_integral(integral: crate::integrals::Integral, settings: &IntegralSettings) -> Result<Measurement> {
    Ok(Measurement::Integral {
        resolution: integral.resolution(settings),
        value: integral.evaluate(settings)?,
        expected: integral.expected(),
    })
}

/// Largest deviation of the string form and of the fiber-integrated `p₁`
/// from `−⟨H,H⟩/4π` on the unit cube of the abelian data.
pub fn hand_value_residual<const N: usize>(fixture: &Fixture<N>, res: usize) -> Result<f64> {
    let h: AlgebraElement<N> = torus_generator();
    let expected = -h.inner(&h) / (4.0 * PI);
    let family = PointFamily::axis_aligned(vec![0.3, -0.2, 0.4, 0.1], 3, 1.0);
    let cube = ProbeChart::new(Grid::uniform(3, res)?, move |x| family.eval(x));
    let direct = string_form(&fixture.spec, &fixture.higgs, &cube)?;
    let len = fixture.len;
    let product = cube.map(move |m| (BundlePoint::section(m, len), GroupElement::identity()));
    let (_, curvature) = lifted_curvature(&fixture.spec, &fixture.higgs, &product)?;
    let pushed = pontryagin_form(&curvature)?.fiber_integrate(3)?;
    Ok(direct
        .values()
        .iter()
        .chain(pushed.values())
        .map(|v| (v - expected).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_resolve() {
        for (i, c) in Check::ALL.iter().enumerate() {
            assert_eq!(Check::from_name(c.name()), Some(*c));
            assert_eq!(c.index(), i as u64);
        }
    }

    #[test]
    fn applicability() {
        assert!(Check::HandValue.applies(Scenario::Abelian));
        assert!(!Check::HandValue.applies(Scenario::Flat));
        assert!(!Check::DAlpha.applies(Scenario::ClutchedS3xS1));
        assert!(Check::PontryaginClutched.applies(Scenario::ClutchedS3xS1));
        assert!(!Check::LoopGroupR.applies(Scenario::ClutchedS3xS1));
    }
}
