//! Discretized loop group `LG` and the semidirect product `LG⋊S¹`.
//!
//! A loop is stored as its values at `θ_j = 2πj/L`. Rotation acts by
//! `ρ_θ(γ)(φ) = γ(φ − θ)`, the sign under which the connection, Higgs and
//! caloron formulas used elsewhere are equivariant.

use std::f64::consts::TAU;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lie::{AlgebraElement, GroupElement, Mat};
use crate::spectral;

/// Canonical representative of an angle in `[0, 2π)`.
pub fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Difference of two angles mapped to `(−π, π]`.
pub fn angle_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > std::f64::consts::PI {
        d - TAU
    } else {
        d
    }
}

pub fn check_sample_count(len: usize) -> Result<()> {
    if len < 16 || !len.is_multiple_of(2) {
        Err(Error::BadSampleCount(len))
    } else {
        Ok(())
    }
}

fn same_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SampleMismatch(a, b))
    }
}

/// Real-valued loop, e.g. the pointwise inner product of two algebra loops.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealLoop(pub Vec<f64>);

impl RealLoop {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `∫_{S¹} f dθ` by the periodic trapezoid rule.
    pub fn integrate(&self) -> f64 {
        TAU / self.0.len() as f64 * self.0.iter().sum::<f64>()
    }

    pub fn derivative(&self) -> RealLoop {
        RealLoop(spectral::derivative_real(&self.0))
    }
}

/// A loop in `SU(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopG<const N: usize> {
    samples: Vec<GroupElement<N>>,
}

impl<const N: usize> LoopG<N> {
    pub fn from_samples(samples: Vec<GroupElement<N>>) -> Self {
        LoopG { samples }
    }

    pub fn from_fn(len: usize, f: impl Fn(f64) -> GroupElement<N>) -> Self {
        LoopG {
            samples: (0..len).map(|j| f(spectral::node_angle(j, len))).collect(),
        }
    }

    pub fn constant(len: usize, g: GroupElement<N>) -> Self {
        LoopG { samples: vec![g; len] }
    }

    pub fn identity(len: usize) -> Self {
        Self::constant(len, GroupElement::identity())
    }

    /// Pointwise exponential.
    pub fn exp(xi: &LoopAlg<N>) -> Self {
        LoopG {
            samples: xi.samples.iter().map(AlgebraElement::exp).collect(),
        }
    }

    /// Seeded smooth loop `exp(ξ)` with `ξ` band-limited (see [`LoopAlg::random`]).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, amplitude: f64, torus: bool) -> Self {
        Self::exp(&LoopAlg::random(rng, len, amplitude, torus))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[GroupElement<N>] {
        &self.samples
    }

    pub fn matrices(&self) -> Vec<Mat<N>> {
        self.samples.iter().map(|g| *g.matrix()).collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(LoopG {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| *a * *b).collect(),
        })
    }

    /// Pointwise product.
    ///
    /// # Panics
    /// If the sample counts differ.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("loop sample counts differ")
    }

    pub fn inv(&self) -> Self {
        LoopG {
            samples: self.samples.iter().map(GroupElement::inv).collect(),
        }
    }

    /// Ambient spectral derivative `∂γ`.
    pub fn derivative(&self) -> Vec<Mat<N>> {
        spectral::derivative_mats(&self.matrices())
    }

    /// `γ⁻¹∂γ`, projected onto `su(n)`.
    pub fn log_derivative(&self) -> LoopAlg<N> {
        let d = self.derivative();
        LoopAlg {
            samples: self
                .samples
                .iter()
                .zip(&d)
                .map(|(g, dg)| AlgebraElement::project(&(g.matrix().dagger() * *dg)))
                .collect(),
        }
    }

    /// `Z(γ) = ∂γ γ⁻¹`, projected onto `su(n)`.
    pub fn z_map(&self) -> LoopAlg<N> {
        let d = self.derivative();
        LoopAlg {
            samples: self
                .samples
                .iter()
                .zip(&d)
                .map(|(g, dg)| AlgebraElement::project(&(*dg * g.matrix().dagger())))
                .collect(),
        }
    }

    /// `ρ_θ(γ)(φ) = γ(φ − θ)`: an index shift for grid-aligned angles,
    /// otherwise trigonometric interpolation followed by re-unitarization.
    pub fn rotate(&self, theta: f64) -> Self {
        let len = self.len();
        if let Some(m) = spectral::grid_offset(theta, len) {
            return LoopG {
                samples: (0..len).map(|j| self.samples[(j + len - m) % len]).collect(),
            };
        }
        LoopG {
            samples: spectral::shift_mats(&self.matrices(), -theta)
                .into_iter()
                .map(|m| GroupElement::from_matrix_unchecked(m).reunitarize())
                .collect(),
        }
    }

    /// Interpolated value at an arbitrary angle.
    pub fn eval_at(&self, theta: f64) -> GroupElement<N> {
        GroupElement::from_matrix_unchecked(spectral::eval_mats(&self.matrices(), theta)).reunitarize()
    }

    /// `γ ξ γ⁻¹` samplewise.
    pub fn adjoint(&self, xi: &LoopAlg<N>) -> LoopAlg<N> {
        LoopAlg {
            samples: self
                .samples
                .iter()
                .zip(&xi.samples)
                .map(|(g, x)| g.adjoint(x))
                .collect(),
        }
    }

    /// `γ⁻¹ ξ γ` samplewise.
    pub fn adjoint_inv(&self, xi: &LoopAlg<N>) -> LoopAlg<N> {
        LoopAlg {
            samples: self
                .samples
                .iter()
                .zip(&xi.samples)
                .map(|(g, x)| AlgebraElement::project(&(g.matrix().dagger() * *x.matrix() * *g.matrix())))
                .collect(),
        }
    }

    /// `γ⁻¹ δγ` for an ambient tangent `δγ`, projected onto `su(n)`.
    pub fn left_translate(&self, direction: &[Mat<N>]) -> LoopAlg<N> {
        LoopAlg {
            samples: self
                .samples
                .iter()
                .zip(direction)
                .map(|(g, d)| AlgebraElement::project(&(g.matrix().dagger() * *d)))
                .collect(),
        }
    }

    /// Largest sample-wise matrix distance.
    pub fn distance(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (*a.matrix() - *b.matrix()).norm())
            .fold(0.0, f64::max)
    }
}

/// A loop in `su(n)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LoopAlg<const N: usize> {
    samples: Vec<AlgebraElement<N>>,
}

impl<const N: usize> LoopAlg<N> {
    pub fn from_samples(samples: Vec<AlgebraElement<N>>) -> Self {
        LoopAlg { samples }
    }

    pub fn from_fn(len: usize, f: impl Fn(f64) -> AlgebraElement<N>) -> Self {
        LoopAlg {
            samples: (0..len).map(|j| f(spectral::node_angle(j, len))).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        LoopAlg {
            samples: vec![AlgebraElement::zero(); len],
        }
    }

    pub fn constant(len: usize, x: AlgebraElement<N>) -> Self {
        LoopAlg { samples: vec![x; len] }
    }

    /// Seeded truncated Fourier series: modes `m ≤ len/16`, cosine and sine
    /// coefficients uniform in `amplitude · 2^{−m} · [−1, 1]` per basis
    /// direction.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, amplitude: f64, torus: bool) -> Self {
        let modes = (len / 16).max(1);
        let coeffs: Vec<(AlgebraElement<N>, AlgebraElement<N>)> = (0..=modes)
            .map(|m| {
                let s = amplitude * 0.5f64.powi(m as i32);
                let c = AlgebraElement::random(rng, s, torus);
                let sn = if m == 0 {
                    AlgebraElement::zero()
                } else {
                    AlgebraElement::random(rng, s, torus)
                };
                (c, sn)
            })
            .collect();
        Self::from_fn(len, |t| {
            coeffs
                .iter()
                .enumerate()
                .fold(AlgebraElement::zero(), |acc, (m, (c, s))| {
                    let mt = m as f64 * t;
                    acc + c.scale(mt.cos()) + s.scale(mt.sin())
                })
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[AlgebraElement<N>] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [AlgebraElement<N>] {
        &mut self.samples
    }

    pub fn matrices(&self) -> Vec<Mat<N>> {
        self.samples.iter().map(|x| *x.matrix()).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&AlgebraElement<N>, &AlgebraElement<N>) -> AlgebraElement<N>) -> Self {
        assert_eq!(self.len(), other.len(), "loop sample counts differ");
        LoopAlg {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a + *b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a - *b)
    }

    pub fn scale(&self, s: f64) -> Self {
        LoopAlg {
            samples: self.samples.iter().map(|x| x.scale(s)).collect(),
        }
    }

    /// Pointwise product with a real loop.
    pub fn scale_by(&self, f: &RealLoop) -> Self {
        LoopAlg {
            samples: self.samples.iter().zip(&f.0).map(|(x, s)| x.scale(*s)).collect(),
        }
    }

    /// `self += s · x`
    pub fn axpy(&mut self, s: f64, x: &Self) {
        if self.samples.is_empty() {
            *self = x.scale(s);
            return;
        }
        assert_eq!(self.len(), x.len(), "loop sample counts differ");
        for (a, b) in self.samples.iter_mut().zip(&x.samples) {
            a.axpy(s, b);
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.bracket(b))
    }

    /// Pointwise `⟨ξ(θ), η(θ)⟩`.
    pub fn inner(&self, other: &Self) -> RealLoop {
        assert_eq!(self.len(), other.len(), "loop sample counts differ");
        RealLoop(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a.inner(b))
                .collect(),
        )
    }

    /// `∫_{S¹} ⟨ξ, η⟩ dθ`.
    pub fn pairing(&self, other: &Self) -> f64 {
        self.inner(other).integrate()
    }

    /// Spectral derivative `∂ξ`.
    pub fn derivative(&self) -> Self {
        LoopAlg {
            samples: spectral::derivative_mats(&self.matrices())
                .iter()
                .map(AlgebraElement::project)
                .collect(),
        }
    }

    /// `ρ_θ(ξ)(φ) = ξ(φ − θ)`.
    pub fn rotate(&self, theta: f64) -> Self {
        let len = self.len();
        if let Some(m) = spectral::grid_offset(theta, len) {
            return LoopAlg {
                samples: (0..len).map(|j| self.samples[(j + len - m) % len]).collect(),
            };
        }
        LoopAlg {
            samples: spectral::shift_mats(&self.matrices(), -theta)
                .iter()
                .map(AlgebraElement::project)
                .collect(),
        }
    }

    /// Interpolated value at an arbitrary angle.
    pub fn eval_at(&self, theta: f64) -> AlgebraElement<N> {
        AlgebraElement::project(&spectral::eval_mats(&self.matrices(), theta))
    }

    /// Largest sample norm.
    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(AlgebraElement::norm).fold(0.0, f64::max)
    }
}

/// Point `(γ, θ)` of `LG⋊S¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct SdElem<const N: usize> {
    loop_part: LoopG<N>,
    angle: f64,
}

/// Tangent `(δγ, t)` at a point of `LG⋊S¹`, with `δγ` in ambient matrix space.
#[derive(Clone, Debug, PartialEq)]
pub struct SdTangent<const N: usize> {
    pub loop_direction: Vec<Mat<N>>,
    pub angle_rate: f64,
}

impl<const N: usize> SdTangent<N> {
    pub fn zero(len: usize) -> Self {
        SdTangent {
            loop_direction: vec![Mat::zero(); len],
            angle_rate: 0.0,
        }
    }

    /// Tangent of the curve `s ↦ (γ exp(sξ), θ + st)` at `s = 0`.
    pub fn left_invariant(at: &SdElem<N>, xi: &LoopAlg<N>, t: f64) -> Self {
        SdTangent {
            loop_direction: at
                .loop_part
                .samples
                .iter()
                .zip(xi.samples())
                .map(|(g, x)| *g.matrix() * *x.matrix())
                .collect(),
            angle_rate: t,
        }
    }
}

impl<const N: usize> SdElem<N> {
    pub fn new(loop_part: LoopG<N>, angle: f64) -> Self {
        SdElem {
            loop_part,
            angle: canonical_angle(angle),
        }
    }

    pub fn identity(len: usize) -> Self {
        Self::new(LoopG::identity(len), 0.0)
    }

    pub fn loop_part(&self) -> &LoopG<N> {
        &self.loop_part
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn len(&self) -> usize {
        self.loop_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loop_part.is_empty()
    }

    /// `(k, θ)(h, φ) = (k ρ_θ(h), θ + φ)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self::new(
            self.loop_part.try_mul(&other.loop_part.rotate(self.angle))?,
            self.angle + other.angle,
        ))
    }

    /// # Panics
    /// If the sample counts differ.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("loop sample counts differ")
    }

    /// `(γ, θ)⁻¹ = (ρ_{−θ}(γ⁻¹), −θ)`.
    pub fn inv(&self) -> Self {
        Self::new(self.loop_part.inv().rotate(-self.angle), -self.angle)
    }

    /// Left Maurer–Cartan form `(ρ_{−θ}(γ⁻¹δγ), t)`.
    pub fn maurer_cartan(&self, v: &SdTangent<N>) -> (LoopAlg<N>, f64) {
        (
            self.loop_part.left_translate(&v.loop_direction).rotate(-self.angle),
            v.angle_rate,
        )
    }

    /// Distance combining loop samples and the wrapped angle difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.loop_part
            .distance(&other.loop_part)
            .max(angle_difference(self.angle, other.angle).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const L: usize = 64;

    fn h2() -> AlgebraElement<2> {
        AlgebraElement::torus_basis()[0]
    }

    fn one_parameter(len: usize) -> LoopG<2> {
        LoopG::from_fn(len, |t| h2().scale(t).exp())
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn max_dist(a: &LoopAlg<2>, b: &LoopAlg<2>) -> f64 {
        a.sub(b).max_norm()
    }

    #[test]
    fn log_derivative_and_z_of_one_parameter_subgroup() {
        let g = one_parameter(L);
        let c = LoopAlg::constant(L, h2());
        assert!(max_dist(&g.log_derivative(), &c) < 1e-9);
        assert!(max_dist(&g.z_map(), &c) < 1e-9);
        let e = LoopG::<2>::constant(L, GroupElement::random(&mut rng(1), 1.0));
        assert!(e.log_derivative().max_norm() < 1e-13);
        assert!(e.z_map().max_norm() < 1e-13);
    }

    #[test]
    fn abelian_product_rule() {
        let a = LoopG::<3>::random(&mut rng(2), L, 0.6, true);
        let b = LoopG::<3>::random(&mut rng(3), L, 0.6, true);
        let lhs = a.mul(&b).log_derivative();
        let rhs = a.log_derivative().add(&b.log_derivative());
        assert!(lhs.sub(&rhs).max_norm() < 1e-9);
    }

    #[test]
    fn z_is_adjoint_of_log_derivative() {
        let g = LoopG::<3>::random(&mut rng(4), L, 0.7, false);
        assert!(g.z_map().sub(&g.adjoint(&g.log_derivative())).max_norm() < 1e-10);
    }

    #[test]
    fn derivative_of_adjoint_identity() {
        let g = LoopG::<2>::random(&mut rng(5), L, 0.7, false);
        let x = LoopAlg::<2>::random(&mut rng(6), L, 0.7, false);
        let lhs = g.inv().adjoint(&x).derivative();
        let rhs = g
            .adjoint_inv(&x.bracket(&g.z_map()))
            .add(&g.adjoint_inv(&x.derivative()));
        let at64 = lhs.sub(&rhs).max_norm();
        assert!(at64 < 1e-8, "{at64}");
        let g = LoopG::<2>::random(&mut rng(5), 128, 0.7, false);
        let x = LoopAlg::<2>::random(&mut rng(6), 128, 0.7, false);
        let lhs = g.inv().adjoint(&x).derivative();
        let rhs = g
            .adjoint_inv(&x.bracket(&g.z_map()))
            .add(&g.adjoint_inv(&x.derivative()));
        assert!(lhs.sub(&rhs).max_norm() <= at64.max(1e-12));
    }

    #[test]
    fn rotation_examples() {
        let g = LoopG::<2>::random(&mut rng(7), L, 0.7, false);
        assert_eq!(g.rotate(0.0), g);
        let shifted = g.rotate(TAU / L as f64);
        for j in 0..L {
            assert_eq!(shifted.samples()[(j + 1) % L], g.samples()[j]);
        }
        assert!(g.rotate(0.4321).rotate(-0.4321).distance(&g) < 1e-8);
        let x = LoopAlg::<2>::random(&mut rng(8), L, 0.7, false);
        assert!(max_dist(&x.rotate(1.1).rotate(-1.1), &x) < 1e-12);
    }

    #[test]
    fn rotation_follows_the_minus_convention() {
        let x = LoopAlg::from_fn(L, |t| h2().scale(t.sin()));
        let y = x.rotate(0.3);
        let want = LoopAlg::from_fn(L, |t| h2().scale((t - 0.3).sin()));
        assert!(max_dist(&y, &want) < 1e-13);
    }

    #[test]
    fn rotation_is_a_group_automorphism() {
        let a = LoopG::<2>::random(&mut rng(9), L, 0.7, false);
        let b = LoopG::<2>::random(&mut rng(10), L, 0.7, false);
        let th = 5.0 * TAU / L as f64;
        assert_eq!(a.mul(&b).rotate(th), a.rotate(th).mul(&b.rotate(th)));
        let th = 0.77;
        assert!(a.mul(&b).rotate(th).distance(&a.rotate(th).mul(&b.rotate(th))) < 1e-10);
    }

    #[test]
    fn semidirect_product_examples() {
        let h = LoopG::<2>::random(&mut rng(11), L, 0.7, false);
        let k = LoopG::<2>::random(&mut rng(12), L, 0.7, false);
        let e = LoopG::<2>::identity(L);
        let p = SdElem::new(e.clone(), 0.3).mul(&SdElem::new(e.clone(), 0.5));
        assert!(p.distance(&SdElem::new(e.clone(), 0.8)) < 1e-15);
        let p = SdElem::new(k.clone(), 0.0).mul(&SdElem::new(h.clone(), 0.0));
        assert!(p.distance(&SdElem::new(k.mul(&h), 0.0)) < 1e-15);
        let p = SdElem::new(e, std::f64::consts::PI).mul(&SdElem::new(h.clone(), 0.0));
        assert!(p.distance(&SdElem::new(h.rotate(std::f64::consts::PI), std::f64::consts::PI)) < 1e-15);
    }

    #[test]
    fn sample_mismatch_is_an_error() {
        let a = SdElem::<2>::identity(16);
        let b = SdElem::<2>::identity(32);
        assert_eq!(a.try_mul(&b), Err(Error::SampleMismatch(16, 32)));
        assert!(check_sample_count(15).is_err());
        assert!(check_sample_count(64).is_ok());
    }

    #[test]
    fn maurer_cartan_examples() {
        let xi = LoopAlg::<2>::random(&mut rng(13), L, 0.5, false);
        let id = SdElem::<2>::identity(L);
        let v = SdTangent {
            loop_direction: xi.matrices(),
            angle_rate: 0.7,
        };
        let (m, t) = id.maurer_cartan(&v);
        assert!(max_dist(&m, &xi) < 1e-15);
        assert_eq!(t, 0.7);
        let g = SdElem::new(LoopG::<2>::random(&mut rng(14), L, 0.7, false), 0.0);
        let (m, t) = g.maurer_cartan(&SdTangent::left_invariant(&g, &xi, 0.0));
        assert!(max_dist(&m, &xi) < 1e-13);
        assert_eq!(t, 0.0);
    }

    #[test]
    fn maurer_cartan_matches_finite_difference_of_translated_curve() {
        // c(s) = x·(exp(sξ), s t): the left-translated curve x⁻¹c(s) has
        // derivative (ξ, t) at s = 0.
        let x = SdElem::new(LoopG::<2>::random(&mut rng(15), L, 0.7, false), 1.3);
        let xi = LoopAlg::<2>::random(&mut rng(16), L, 0.5, false);
        let t = 0.4;
        let curve = |s: f64| x.mul(&SdElem::new(LoopG::exp(&xi.scale(s)), s * t));
        let mut errs = Vec::new();
        for h in [1e-2, 5e-3] {
            let (p, m) = (curve(h), curve(-h));
            let dir: Vec<Mat<2>> = p
                .loop_part()
                .samples()
                .iter()
                .zip(m.loop_part().samples())
                .map(|(a, b)| (*a.matrix() - *b.matrix()).scale(0.5 / h))
                .collect();
            let v = SdTangent {
                loop_direction: dir,
                angle_rate: angle_difference(p.angle(), m.angle()) / (2.0 * h),
            };
            let (mc, rate) = curve(0.0).maurer_cartan(&v);
            let expect = xi.rotate(0.0);
            errs.push(max_dist(&mc, &expect) + (rate - t).abs());
        }
        let order = (errs[0] / errs[1]).log2();
        assert!(errs[1] < 1e-4 && order > 1.8, "{errs:?} {order}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn group_laws(seed in 0u64..10_000, a1 in 0.0..TAU, a2 in 0.0..TAU, a3 in 0.0..TAU) {
            let mut r = rng(seed);
            let x = SdElem::new(LoopG::<2>::random(&mut r, L, 0.6, false), a1);
            let y = SdElem::new(LoopG::<2>::random(&mut r, L, 0.6, false), a2);
            let z = SdElem::new(LoopG::<2>::random(&mut r, L, 0.6, false), a3);
            prop_assert!(x.mul(&y).mul(&z).distance(&x.mul(&y.mul(&z))) < 1e-10);
            prop_assert!(x.inv().inv().distance(&x) < 1e-10);
            prop_assert!(x.inv().mul(&x).distance(&SdElem::identity(L)) < 1e-10);
            prop_assert!(x.angle() >= 0.0 && x.angle() < TAU);
        }
    }
}
