//! Seeded smooth fields on a base chart and smooth probe families.
//!
//! Everything here is band-limited or a low-degree polynomial in the chart
//! parameter, so finite-difference errors follow their asymptotic rates.

use std::sync::Arc;

use rand::Rng;

use crate::lie::{AlgebraElement, GroupElement};
use crate::loops::{LoopAlg, LoopG, SdElem};

/// Smooth real function of base coordinates.
#[derive(Clone)]
pub enum ScalarField {
    Zero,
    /// `c₀ + b·m + Σ_t c_t sin(w_t·m + φ_t)`
    Seeded {
        offset: f64,
        linear: Vec<f64>,
        waves: Vec<(Vec<f64>, f64, f64)>,
    },
    Custom(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

impl ScalarField {
    pub fn seeded<R: Rng + ?Sized>(rng: &mut R, base_dim: usize, amplitude: f64) -> Self {
        let offset = amplitude * rng.gen_range(-1.0..1.0);
        let linear = (0..base_dim).map(|_| amplitude * rng.gen_range(-1.0..1.0)).collect();
        let waves = (0..3)
            .map(|_| {
                let w = (0..base_dim).map(|_| rng.gen_range(-1.5..1.5)).collect();
                (
                    w,
                    rng.gen_range(0.0..std::f64::consts::TAU),
                    amplitude * rng.gen_range(-1.0..1.0),
                )
            })
            .collect();
        ScalarField::Seeded { offset, linear, waves }
    }

    pub fn from_fn(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField::Custom(Arc::new(f))
    }

    /// The coordinate function `m ↦ c·m_axis`.
    pub fn coordinate(axis: usize, c: f64) -> Self {
        Self::from_fn(move |m| c * m[axis])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ScalarField::Zero)
    }

    pub fn eval(&self, m: &[f64]) -> f64 {
        match self {
            ScalarField::Zero => 0.0,
            ScalarField::Seeded { offset, linear, waves } => {
                let lin: f64 = linear.iter().zip(m).map(|(b, x)| b * x).sum();
                let osc: f64 = waves
                    .iter()
                    .map(|(w, phase, amp)| {
                        let arg: f64 = w.iter().zip(m).map(|(a, x)| a * x).sum::<f64>() + phase;
                        amp * arg.sin()
                    })
                    .sum();
                offset + lin + osc
            }
            ScalarField::Custom(f) => f(m),
        }
    }
}

/// Smooth map from base coordinates to `Lsu(n)`.
#[derive(Clone)]
pub struct LoopAlgField<const N: usize> {
    len: usize,
    kind: LoopFieldKind<N>,
}

#[derive(Clone)]
enum LoopFieldKind<const N: usize> {
    Zero,
    /// `Σ_t f_t(m) ξ_t`
    Separable(Vec<(ScalarField, LoopAlg<N>)>),
    Custom(Arc<dyn Fn(&[f64]) -> LoopAlg<N> + Send + Sync>),
}

impl<const N: usize> LoopAlgField<N> {
    pub fn zero(len: usize) -> Self {
        LoopAlgField {
            len,
            kind: LoopFieldKind::Zero,
        }
    }

    /// Four seeded scalar profiles times seeded band-limited loops.
    pub fn seeded<R: Rng + ?Sized>(rng: &mut R, len: usize, base_dim: usize, amplitude: f64, torus: bool) -> Self {
        let terms = (0..4)
            .map(|_| {
                let f = ScalarField::seeded(rng, base_dim, 1.0);
                (f, LoopAlg::random(rng, len, amplitude, torus))
            })
            .collect();
        LoopAlgField {
            len,
            kind: LoopFieldKind::Separable(terms),
        }
    }

    /// `Σ_t f_t(m) ξ_t` from explicit terms.
    pub fn separable(len: usize, terms: Vec<(ScalarField, LoopAlg<N>)>) -> Self {
        LoopAlgField {
            len,
            kind: LoopFieldKind::Separable(terms),
        }
    }

    /// The same loop at every base point.
    pub fn constant(value: LoopAlg<N>) -> Self {
        let len = value.len();
        Self::separable(len, vec![(ScalarField::from_fn(|_| 1.0), value)])
    }

    pub fn from_fn(len: usize, f: impl Fn(&[f64]) -> LoopAlg<N> + Send + Sync + 'static) -> Self {
        LoopAlgField {
            len,
            kind: LoopFieldKind::Custom(Arc::new(f)),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, LoopFieldKind::Zero)
    }

    pub fn eval(&self, m: &[f64]) -> LoopAlg<N> {
        match &self.kind {
            LoopFieldKind::Zero => LoopAlg::zero(self.len),
            LoopFieldKind::Separable(terms) => {
                let mut out = LoopAlg::zero(self.len);
                for (f, xi) in terms {
                    out.axpy(f.eval(m), xi);
                }
                out
            }
            LoopFieldKind::Custom(f) => f(m),
        }
    }

    /// `λ·self + μ·other`
    pub fn combine(&self, lambda: f64, other: &Self, mu: f64) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let len = self.len;
        Self::from_fn(len, move |m| {
            let mut v = a.eval(m).scale(lambda);
            v.axpy(mu, &b.eval(m));
            v
        })
    }
}

/// Quadratic family `x ↦ c + L·M·x̃ + L²·Q(x̃)` with `x̃ = x − ½`.
#[derive(Clone, Debug)]
pub struct PointFamily {
    center: Vec<f64>,
    linear: Vec<Vec<f64>>,
    quadratic: Vec<Vec<f64>>,
    extent: f64,
}

fn centered(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v - 0.5).collect()
}

fn quadratic_monomials(xt: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(xt.len() * (xt.len() + 1) / 2);
    for i in 0..xt.len() {
        for j in i..xt.len() {
            out.push(xt[i] * xt[j]);
        }
    }
    out
}

impl PointFamily {
    pub fn seeded<R: Rng + ?Sized>(rng: &mut R, chart_dim: usize, target_dim: usize, extent: f64) -> Self {
        let nq = chart_dim * (chart_dim + 1) / 2;
        PointFamily {
            center: (0..target_dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            linear: (0..target_dim)
                .map(|_| (0..chart_dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
            quadratic: (0..target_dim)
                .map(|_| (0..nq).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
            extent,
        }
    }

    /// `x ↦ c + L·x̃` on the first `chart_dim` target axes.
    pub fn axis_aligned(center: Vec<f64>, chart_dim: usize, extent: f64) -> Self {
        let target = center.len();
        let nq = chart_dim * (chart_dim + 1) / 2;
        PointFamily {
            linear: (0..target)
                .map(|r| (0..chart_dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
                .collect(),
            quadratic: vec![vec![0.0; nq]; target],
            center,
            extent,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let xt = centered(x);
        let q = quadratic_monomials(&xt);
        let l = self.extent;
        self.center
            .iter()
            .zip(&self.linear)
            .zip(&self.quadratic)
            .map(|((c, lin), quad)| {
                c + l * lin.iter().zip(&xt).map(|(a, b)| a * b).sum::<f64>()
                    + l * l * quad.iter().zip(&q).map(|(a, b)| a * b).sum::<f64>()
            })
            .collect()
    }
}

/// Smooth family of loops `x ↦ exp(ξ₀ + L Σ x̃_i ξ_i + L² Σ x̃_i x̃_j ξ_ij)`.
#[derive(Clone, Debug)]
pub struct LoopFamily<const N: usize> {
    base: LoopAlg<N>,
    linear: Vec<LoopAlg<N>>,
    quadratic: Vec<LoopAlg<N>>,
    extent: f64,
}

impl<const N: usize> LoopFamily<N> {
    pub fn seeded<R: Rng + ?Sized>(
        rng: &mut R,
        len: usize,
        chart_dim: usize,
        amplitude: f64,
        extent: f64,
        torus: bool,
    ) -> Self {
        let nq = chart_dim * (chart_dim + 1) / 2;
        LoopFamily {
            base: LoopAlg::random(rng, len, amplitude, torus),
            linear: (0..chart_dim)
                .map(|_| LoopAlg::random(rng, len, amplitude, torus))
                .collect(),
            quadratic: (0..nq).map(|_| LoopAlg::random(rng, len, amplitude, torus)).collect(),
            extent,
        }
    }

    /// The constant identity loop.
    pub fn identity(len: usize, chart_dim: usize) -> Self {
        LoopFamily {
            base: LoopAlg::zero(len),
            linear: vec![LoopAlg::zero(len); chart_dim],
            quadratic: Vec::new(),
            extent: 0.0,
        }
    }

    pub fn generator(&self, x: &[f64]) -> LoopAlg<N> {
        let xt = centered(x);
        let mut xi = self.base.clone();
        for (c, l) in xt.iter().zip(&self.linear) {
            xi.axpy(self.extent * c, l);
        }
        for (c, q) in quadratic_monomials(&xt).iter().zip(&self.quadratic) {
            xi.axpy(self.extent * self.extent * c, q);
        }
        xi
    }

    pub fn eval(&self, x: &[f64]) -> LoopG<N> {
        LoopG::exp(&self.generator(x))
    }
}

/// Smooth family in `LG⋊S¹`.
#[derive(Clone, Debug)]
pub struct SdFamily<const N: usize> {
    pub loops: LoopFamily<N>,
    pub angle: PointFamily,
}

impl<const N: usize> SdFamily<N> {
    pub fn seeded<R: Rng + ?Sized>(
        rng: &mut R,
        len: usize,
        chart_dim: usize,
        amplitude: f64,
        extent: f64,
        torus: bool,
    ) -> Self {
        let loops = LoopFamily::seeded(rng, len, chart_dim, amplitude, extent, torus);
        let mut angle = PointFamily::seeded(rng, chart_dim, 1, extent);
        angle.center[0] = rng.gen_range(0.0..std::f64::consts::TAU);
        SdFamily { loops, angle }
    }

    pub fn identity(len: usize, chart_dim: usize) -> Self {
        SdFamily {
            loops: LoopFamily::identity(len, chart_dim),
            angle: PointFamily::axis_aligned(vec![0.0], chart_dim, 0.0),
        }
    }

    pub fn eval(&self, x: &[f64]) -> SdElem<N> {
        SdElem::new(self.loops.eval(x), self.angle.eval(x)[0])
    }
}

/// Smooth family in `G`.
#[derive(Clone, Debug)]
pub struct GroupFamily<const N: usize> {
    base: AlgebraElement<N>,
    linear: Vec<AlgebraElement<N>>,
    extent: f64,
}

impl<const N: usize> GroupFamily<N> {
    pub fn seeded<R: Rng + ?Sized>(rng: &mut R, chart_dim: usize, amplitude: f64, extent: f64) -> Self {
        GroupFamily {
            base: AlgebraElement::random(rng, amplitude, false),
            linear: (0..chart_dim)
                .map(|_| AlgebraElement::random(rng, amplitude, false))
                .collect(),
            extent,
        }
    }

    pub fn constant(g: AlgebraElement<N>, chart_dim: usize) -> Self {
        GroupFamily {
            base: g,
            linear: vec![AlgebraElement::zero(); chart_dim],
            extent: 0.0,
        }
    }

    pub fn eval(&self, x: &[f64]) -> GroupElement<N> {
        let xt = centered(x);
        let mut xi = self.base;
        for (c, l) in xt.iter().zip(&self.linear) {
            xi.axpy(self.extent * c, l);
        }
        xi.exp()
    }
}
