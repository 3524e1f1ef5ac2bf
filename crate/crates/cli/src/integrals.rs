//! The two global integrals with integer oracles.
//!
//! `pontryaginClutched` integrates `p₁` of `Ã = β(t)c⁻¹dc` over the cylinder
//! `[0,1] × S³` in coordinates `(t, χ, ϑ, φ)`. Both ends are flat and differ
//! by the gauge transformation `c`, so the cylinder closes up to `S¹ × S³`
//! with the bundle clutched by `c`. The orientation puts the outward normal
//! `∂_t` first, so `{1} × S³` carries the standard orientation of `S³`, in
//! which the unit quaternion map `c` has degree 1.
//!
//! `loopGroupR` integrates `R/2πi` over the sphere of loops `θ ↦ exp(θv)`
//! with `exp(2πv) = 1`. Its evaluation map `(v, θ) ↦ exp(θv)` hits every
//! point of `SU(2)` twice with the same orientation, so the value is `±2`.
//! The generator family `θ ↦ exp(θv/2)exp(−θe/2)` has evaluation degree `±1`.

use std::f64::consts::{PI, TAU};

use caloron_core::caloron::{differenced_curvature, pontryagin_form};
use caloron_core::forms::{Bracket, Grid, GridForm, ProbeChart, ScalarMul, TangentScheme};
use caloron_core::gerbe::r_form;
use caloron_core::lie::{AlgebraElement, GroupElement, Mat, C64};
use caloron_core::loops::{LoopG, SdElem};
use caloron_core::Result;

use crate::config::IntegralSettings;
use crate::scenario::Scenario;

/// The smoothstep ramp `β(t) = 6t⁵ − 15t⁴ + 10t³`, `C²` at both ends.
pub fn ramp(t: f64) -> f64 {
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

/// `β′(t) = 30t²(1 − t)²`.
pub fn ramp_slope(t: f64) -> f64 {
    30.0 * t * t * (1.0 - t) * (1.0 - t)
}

/// Point of `S³ ⊂ ℝ⁴` in hyperspherical coordinates.
pub fn sphere_point(chi: f64, theta: f64, phi: f64) -> [f64; 4] {
    [
        chi.cos(),
        chi.sin() * theta.cos(),
        chi.sin() * theta.sin() * phi.cos(),
        chi.sin() * theta.sin() * phi.sin(),
    ]
}

/// `x ↦ [[x₀ + ix₁, x₂ + ix₃], [−x₂ + ix₃, x₀ − ix₁]]`.
pub fn quaternion(x: [f64; 4]) -> GroupElement<2> {
    let a = C64::new(x[0], x[1]);
    let b = C64::new(x[2], x[3]);
    GroupElement::from_matrix_unchecked(Mat([[a, b], [-b.conj(), a.conj()]]))
}

/// Parameter cube `[0,1]³` to `(χ, ϑ, φ) ∈ [0,π]² × [0,2π]`.
pub fn clutching_map(x: &[f64]) -> GroupElement<2> {
    quaternion(sphere_point(PI * x[0], PI * x[1], TAU * x[2]))
}

/// How `F̃` is obtained from the sampled connection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureRoute {
    /// `F̃ = β′dt∧ω + (β² − β)·½[ω∧ω]` from the structure equation of
    /// `ω = c⁻¹dc`; only the quadrature is discretized.
    ClosedForm,
    /// `dÃ + ½[Ã∧Ã]` by grid differencing, `O(h²)`.
    Differenced,
}

type ClutchedChart = ProbeChart<(f64, GroupElement<2>)>;

fn clutched_chart(res: usize) -> Result<ClutchedChart> {
    Ok(
        ProbeChart::new(Grid::uniform(4, res)?, |x: &[f64]| (x[0], clutching_map(&x[1..])))
            .with_scheme(TangentScheme::Richardson),
    )
}

/// `ω = c⁻¹dc` on the chart.
fn maurer_cartan(chart: &ClutchedChart) -> Result<GridForm<AlgebraElement<2>>> {
    chart.sample_form(1, |(_, c), v| AlgebraElement::project(&(c.matrix().dagger() * v[0].1)))
}

/// `∫ p₁` on a `res⁴` grid. With `ramped = false` the connection is the
/// trivial one.
pub fn pontryagin_clutched(res: usize, ramped: bool, route: CurvatureRoute) -> Result<f64> {
    let chart = clutched_chart(res)?;
    let omega = maurer_cartan(&chart)?;
    let on = if ramped { 1.0 } else { 0.0 };
    let beta = move |t: f64| on * ramp(t);
    let curvature = match route {
        CurvatureRoute::Differenced => {
            let connection = chart.sample_form(0, |(t, _), _| beta(*t))?.wedge(&omega, &ScalarMul)?;
            differenced_curvature(&connection)?
        }
        CurvatureRoute::ClosedForm => {
            let slope = chart.sample_form(1, |(t, _), v| on * ramp_slope(*t) * v[0].0)?;
            let quadratic = chart.sample_form(0, |(t, _), _| beta(*t) * beta(*t) - beta(*t))?;
            slope
                .wedge(&omega, &ScalarMul)?
                .add(&quadratic.wedge(&omega.wedge(&omega, &Bracket)?.scale(0.5), &ScalarMul)?)?
        }
    };
    pontryagin_form(&curvature)?.integrate_top()
}

/// `v(ϑ, φ)` on the unit sphere of `su(2)` spanned by `basis()`, whose
/// elements all satisfy `exp(2πv) = 1`.
pub fn sphere_direction(x: &[f64]) -> AlgebraElement<2> {
    let (theta, phi) = (PI * x[0], TAU * x[1]);
    let e = AlgebraElement::<2>::basis();
    e[0].scale(theta.sin() * phi.cos()) + e[1].scale(theta.sin() * phi.sin()) + e[2].scale(theta.cos())
}

/// Loop family over the sphere of directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereFamily {
    /// `θ ↦ exp(θv)`.
    Exponential,
    /// `θ ↦ exp(θv/2)exp(−θe/2)` with `e` the north pole direction.
    Generator,
}

impl SphereFamily {
    /// The loop through `v` at parameter `θ`.
    pub fn eval(self, v: &AlgebraElement<2>, theta: f64) -> GroupElement<2> {
        match self {
            Self::Exponential => v.scale(theta).exp(),
            Self::Generator => {
                let north = sphere_direction(&[0.0, 0.0]);
                v.scale(theta / 2.0).exp() * north.scale(-theta / 2.0).exp()
            }
        }
    }
}

/// `∫ R / 2π` over the family on a `res²` grid with `len` loop samples.
pub fn loop_group_r(family: SphereFamily, res: usize, len: usize) -> Result<f64> {
    caloron_core::loops::check_sample_count(len)?;
    let chart = ProbeChart::new(Grid::uniform(2, res)?, move |x: &[f64]| {
        let v = sphere_direction(x);
        vec![SdElem::new(LoopG::from_fn(len, |t| family.eval(&v, t)), 0.0)]
    })
    .with_scheme(TangentScheme::Richardson);
    Ok(r_form(&chart)?.integrate_top()? / TAU)
}

/// The global integrals and their integer values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integral {
    PontryaginClutched,
    /// `β ≡ 0`: the trivial connection on the unclutched bundle.
    PontryaginFlat,
    LoopGroupR,
    LoopGroupGenerator,
}

impl Integral {
    pub const ALL: [Integral; 4] = [
        Integral::PontryaginClutched,
        Integral::PontryaginFlat,
        Integral::LoopGroupR,
        Integral::LoopGroupGenerator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Integral::PontryaginClutched => "pontryaginClutched",
            Integral::PontryaginFlat => "pontryaginFlat",
            Integral::LoopGroupR => "loopGroupR",
            Integral::LoopGroupGenerator => "loopGroupGenerator",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == name)
    }

    pub fn scenario(self) -> Scenario {
        match self {
            Integral::PontryaginClutched | Integral::PontryaginFlat => Scenario::ClutchedS3xS1,
            Integral::LoopGroupR | Integral::LoopGroupGenerator => Scenario::LoopGroupSphere,
        }
    }

    /// Degree of the clutching or evaluation map.
    pub fn expected(self) -> i64 {
        match self {
            Integral::PontryaginClutched | Integral::LoopGroupGenerator => 1,
            Integral::PontryaginFlat => 0,
            Integral::LoopGroupR => 2,
        }
    }

    pub fn resolution(self, settings: &IntegralSettings) -> usize {
        match self.scenario() {
            Scenario::ClutchedS3xS1 => settings.pontryagin_resolution,
            _ => settings.loop_group_resolution,
        }
    }

    pub fn evaluate(self, settings: &IntegralSettings) -> Result<f64> {
        let res = self.resolution(settings);
        let len = settings.loop_group_samples;
        match self {
            Integral::PontryaginClutched => pontryagin_clutched(res, true, CurvatureRoute::ClosedForm),
            Integral::PontryaginFlat => pontryagin_clutched(res, false, CurvatureRoute::ClosedForm),
            Integral::LoopGroupR => loop_group_r(SphereFamily::Exponential, res, len),
            Integral::LoopGroupGenerator => loop_group_r(SphereFamily::Generator, res, len),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), 0.0);
        assert_eq!(ramp(1.0), 1.0);
        let h = 1e-4;
        assert!(((ramp(h) - ramp(0.0)) / h).abs() < 1e-6);
        assert!(((ramp(1.0) - ramp(1.0 - h)) / h).abs() < 1e-6);
    }

    #[test]
    fn clutching_map_is_unitary() {
        for x in [[0.1, 0.2, 0.3], [0.9, 0.5, 0.7]] {
            let c = clutching_map(&x);
            assert!(c.unitarity_defect() < 1e-14 && c.det_defect() < 1e-14);
        }
    }

    #[test]
    fn sphere_loops_close() {
        for x in [[0.2, 0.3], [0.7, 0.9]] {
            for family in [SphereFamily::Exponential, SphereFamily::Generator] {
                let g = family.eval(&sphere_direction(&x), TAU);
                assert!((*g.matrix() - Mat::identity()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn flat_variant_vanishes() {
        for route in [CurvatureRoute::ClosedForm, CurvatureRoute::Differenced] {
            assert_eq!(pontryagin_clutched(9, false, route).unwrap(), 0.0);
        }
    }
}
