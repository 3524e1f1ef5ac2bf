//! Value kinds a form can take and the bilinear pairings used by the wedge.

use crate::lie::{AlgebraElement, Mat};
use crate::loops::{LoopAlg, RealLoop, SdTangent};

/// A real vector space element usable as a form component.
pub trait FormValue: Clone + Send + Sync {
    /// Zero of the same shape (loop length etc.).
    fn zero_like(&self) -> Self;
    /// `self += s · x`
    fn axpy(&mut self, s: f64, x: &Self);
    /// Max-type magnitude used for residual norms.
    fn norm(&self) -> f64;

    fn scaled(&self, s: f64) -> Self {
        let mut z = self.zero_like();
        z.axpy(s, self);
        z
    }

    fn difference(&self, other: &Self) -> Self {
        let mut z = self.clone();
        z.axpy(-1.0, other);
        z
    }
}

impl FormValue for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        *self += s * x;
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl<const N: usize> FormValue for Mat<N> {
    fn zero_like(&self) -> Self {
        Mat::zero()
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        Mat::axpy(self, s, x);
    }
    fn norm(&self) -> f64 {
        Mat::norm(self)
    }
}

impl<const N: usize> FormValue for AlgebraElement<N> {
    fn zero_like(&self) -> Self {
        AlgebraElement::zero()
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        AlgebraElement::axpy(self, s, x);
    }
    fn norm(&self) -> f64 {
        AlgebraElement::norm(self)
    }
}

impl<const N: usize> FormValue for LoopAlg<N> {
    fn zero_like(&self) -> Self {
        LoopAlg::zero(self.len())
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        LoopAlg::axpy(self, s, x);
    }
    fn norm(&self) -> f64 {
        self.max_norm()
    }
}

impl FormValue for RealLoop {
    fn zero_like(&self) -> Self {
        RealLoop(vec![0.0; self.len()])
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        if self.0.is_empty() {
            self.0 = vec![0.0; x.len()];
        }
        for (a, b) in self.0.iter_mut().zip(&x.0) {
            *a += s * b;
        }
    }
    fn norm(&self) -> f64 {
        self.0.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl<const N: usize> FormValue for SdTangent<N> {
    fn zero_like(&self) -> Self {
        SdTangent::zero(self.loop_direction.len())
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        self.loop_direction.axpy(s, &x.loop_direction);
        self.angle_rate += s * x.angle_rate;
    }
    fn norm(&self) -> f64 {
        self.loop_direction.norm().max(self.angle_rate.abs())
    }
}

impl<T: FormValue> FormValue for Vec<T> {
    fn zero_like(&self) -> Self {
        self.iter().map(FormValue::zero_like).collect()
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        if self.is_empty() {
            *self = x.scaled(s);
            return;
        }
        for (a, b) in self.iter_mut().zip(x) {
            a.axpy(s, b);
        }
    }
    fn norm(&self) -> f64 {
        self.iter().map(FormValue::norm).fold(0.0, f64::max)
    }
}

impl<A: FormValue, B: FormValue> FormValue for (A, B) {
    fn zero_like(&self) -> Self {
        (self.0.zero_like(), self.1.zero_like())
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        self.0.axpy(s, &x.0);
        self.1.axpy(s, &x.1);
    }
    fn norm(&self) -> f64 {
        self.0.norm().max(self.1.norm())
    }
}

/// Bilinear map applied samplewise inside a wedge product.
pub trait Pairing<A, B>: Sync {
    type Output: FormValue;
    fn pair(&self, a: &A, b: &B) -> Self::Output;
}

/// `⟨·,·⟩`, pointwise on loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Inner;
/// `[·,·]`, pointwise on loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bracket;
/// Real scalar times a value.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarMul;

/// Any closure as a pairing.
pub struct FnPairing<F>(pub F);

impl<A, B, O: FormValue, F: Fn(&A, &B) -> O + Sync> Pairing<A, B> for FnPairing<F> {
    type Output = O;
    fn pair(&self, a: &A, b: &B) -> O {
        (self.0)(a, b)
    }
}

impl<const N: usize> Pairing<AlgebraElement<N>, AlgebraElement<N>> for Inner {
    type Output = f64;
    fn pair(&self, a: &AlgebraElement<N>, b: &AlgebraElement<N>) -> f64 {
        a.inner(b)
    }
}

impl<const N: usize> Pairing<LoopAlg<N>, LoopAlg<N>> for Inner {
    type Output = RealLoop;
    fn pair(&self, a: &LoopAlg<N>, b: &LoopAlg<N>) -> RealLoop {
        a.inner(b)
    }
}

impl<const N: usize> Pairing<AlgebraElement<N>, AlgebraElement<N>> for Bracket {
    type Output = AlgebraElement<N>;
    fn pair(&self, a: &AlgebraElement<N>, b: &AlgebraElement<N>) -> AlgebraElement<N> {
        a.bracket(b)
    }
}

impl<const N: usize> Pairing<LoopAlg<N>, LoopAlg<N>> for Bracket {
    type Output = LoopAlg<N>;
    fn pair(&self, a: &LoopAlg<N>, b: &LoopAlg<N>) -> LoopAlg<N> {
        a.bracket(b)
    }
}

impl<V: FormValue> Pairing<f64, V> for ScalarMul {
    type Output = V;
    fn pair(&self, a: &f64, b: &V) -> V {
        b.scaled(*a)
    }
}
