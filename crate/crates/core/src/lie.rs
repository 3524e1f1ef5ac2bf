//! su(n) / SU(n) kernel in the fundamental representation.
//!
//! The rank is a const generic, so mixing su(2) and su(3) values is a type
//! error rather than a runtime check. Only n = 2 and n = 3 are exercised.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Threshold on `‖g*g − I‖` above which group elements are re-projected.
pub const REUNITARIZE_THRESHOLD: f64 = 1e-11;

/// Dense complex n×n matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<const N: usize>(pub [[C64; N]; N]);

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Mat<N> {
    pub const fn zero() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn diag(d: [C64; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// `self += s · x`
    pub fn axpy(&mut self, s: f64, x: &Self) {
        for (a, b) in self.0.iter_mut().flatten().zip(x.0.iter().flatten()) {
            *a += b * s;
        }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// LU determinant with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..N {
            let piv = (col..N)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap_or(col);
            if a[piv][col].norm() == 0.0 {
                return ZERO;
            }
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                for c in col..N {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` for a numerically singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        for col in 0..N {
            let piv = (col..N).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
            if a[piv][col].norm() < 1e-300 {
                return None;
            }
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].inv();
            for c in 0..N {
                a[col][c] *= p;
                inv[col][c] *= p;
            }
            for r in 0..N {
                if r != col {
                    let f = a[r][col];
                    if f != ZERO {
                        for c in 0..N {
                            let (ac, ic) = (a[col][c], inv[col][c]);
                            a[r][c] -= f * ac;
                            inv[r][c] -= f * ic;
                        }
                    }
                }
            }
        }
        Some(Mat(inv))
    }

    /// `‖M*M − I‖` (Frobenius).
    pub fn unitarity_defect(&self) -> f64 {
        (self.dagger() * *self - Self::identity()).norm()
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for Mat<N> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

/// Eigen-decomposition `h = V diag(λ) V*` of a Hermitian matrix by cyclic
/// complex Jacobi rotations.
pub fn hermitian_eigen<const N: usize>(h: &Mat<N>) -> ([f64; N], Mat<N>) {
    let mut a = *h;
    let mut v = Mat::<N>::identity();
    let scale = h.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a.0[q][q].re - a.0[p][p].re) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = D·R with D = diag(1, conj(phase)) on (p, q).
                let mut g = Mat::<N>::identity();
                g.0[p][p] = C64::new(c, 0.0);
                g.0[p][q] = C64::new(s, 0.0);
                g.0[q][p] = phase.conj() * (-s);
                g.0[q][q] = phase.conj() * c;
                a = g.dagger() * a * g;
                v = v * g;
            }
        }
    }
    let mut lam = [0.0; N];
    for (i, l) in lam.iter_mut().enumerate() {
        *l = a.0[i][i].re;
    }
    (lam, v)
}

/// Element of su(n): anti-Hermitian and traceless.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AlgebraElement<const N: usize>(Mat<N>);

impl<const N: usize> AlgebraElement<N> {
    pub const fn zero() -> Self {
        AlgebraElement(Mat::zero())
    }

    /// Anti-Hermitian traceless part of an arbitrary matrix.
    pub fn project(m: &Mat<N>) -> Self {
        let mut x = (*m - m.dagger()).scale(0.5);
        let tr = x.trace() / N as f64;
        for i in 0..N {
            x.0[i][i] -= tr;
        }
        AlgebraElement(x)
    }

    /// Wraps a matrix that is already in su(n); callers guarantee the shape.
    pub fn from_matrix_unchecked(m: Mat<N>) -> Self {
        AlgebraElement(m)
    }

    pub fn matrix(&self) -> &Mat<N> {
        &self.0
    }

    /// Standard real basis: `E_pq − E_qp`, `i(E_pq + E_qp)` for p < q, then the
    /// diagonal coroots `i(E_jj − E_{j+1,j+1})`.
    pub fn basis() -> Vec<Self> {
        let mut out = Vec::with_capacity(N * N - 1);
        for p in 0..N {
            for q in p + 1..N {
                let mut m = Mat::zero();
                m.0[p][q] = ONE;
                m.0[q][p] = -ONE;
                out.push(AlgebraElement(m));
                let mut m = Mat::zero();
                m.0[p][q] = C64::i();
                m.0[q][p] = C64::i();
                out.push(AlgebraElement(m));
            }
        }
        out.extend(Self::torus_basis());
        out
    }

    /// Coroots spanning the diagonal maximal torus.
    pub fn torus_basis() -> Vec<Self> {
        (0..N - 1)
            .map(|j| {
                let mut m = Mat::zero();
                m.0[j][j] = C64::i();
                m.0[j + 1][j + 1] = -C64::i();
                AlgebraElement(m)
            })
            .collect()
    }

    /// Uniform coefficients in `[−scale, scale]` against `basis()` (or the
    /// torus basis when `torus` is set).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64, torus: bool) -> Self {
        let basis = if torus { Self::torus_basis() } else { Self::basis() };
        basis
            .iter()
            .fold(Self::zero(), |acc, b| acc + b.scale(rng.gen_range(-scale..=scale)))
    }

    /// `⟨X, Y⟩ = −Re tr(XY)`.
    pub fn inner(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for k in 0..N {
                s += (self.0 .0[i][k] * other.0 .0[k][i]).re;
            }
        }
        -s
    }

    pub fn bracket(&self, other: &Self) -> Self {
        AlgebraElement(self.0 * other.0 - other.0 * self.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraElement(self.0.scale(s))
    }

    pub fn axpy(&mut self, s: f64, x: &Self) {
        self.0.axpy(s, &x.0);
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Distance from su(n): anti-Hermitian defect plus trace.
    pub fn algebra_defect(&self) -> f64 {
        (self.0 + self.0.dagger()).norm() + self.0.trace().norm()
    }

    /// Matrix exponential through the eigen-decomposition of the Hermitian
    /// matrix `iX`. For n = 2 this collapses to `cos|a| I + sin|a|/|a| X`.
    pub fn exp(&self) -> GroupElement<N> {
        if N == 2 {
            let s = self.0.det().re.max(0.0).sqrt();
            let sinc = if s < 1e-8 { 1.0 - s * s / 6.0 } else { s.sin() / s };
            let mut m = self.0.scale(sinc);
            m.0[0][0] += s.cos();
            m.0[1][1] += s.cos();
            return GroupElement(m);
        }
        let h = self.0.scale_c(C64::i());
        let (lam, v) = hermitian_eigen(&h);
        let mut d = [ZERO; N];
        for (di, l) in d.iter_mut().zip(lam) {
            *di = C64::from_polar(1.0, -l);
        }
        GroupElement(v * Mat::diag(d) * v.dagger())
    }
}

impl<const N: usize> Add for AlgebraElement<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        AlgebraElement(self.0 + rhs.0)
    }
}

impl<const N: usize> AddAssign for AlgebraElement<N> {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl<const N: usize> Sub for AlgebraElement<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        AlgebraElement(self.0 - rhs.0)
    }
}

impl<const N: usize> Neg for AlgebraElement<N> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraElement(-self.0)
    }
}

/// Element of SU(n).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement<const N: usize>(Mat<N>);

impl<const N: usize> Default for GroupElement<N> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<const N: usize> GroupElement<N> {
    pub fn identity() -> Self {
        GroupElement(Mat::identity())
    }

    /// Wraps a matrix and projects it back onto SU(n) if it drifted.
    pub fn from_matrix(m: Mat<N>) -> Self {
        GroupElement(m).renormalized()
    }

    pub fn from_matrix_unchecked(m: Mat<N>) -> Self {
        GroupElement(m)
    }

    pub fn matrix(&self) -> &Mat<N> {
        &self.0
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        AlgebraElement::random(rng, scale, false).exp()
    }

    /// Product followed by re-projection when drift exceeds the threshold.
    pub fn mul(&self, other: &Self) -> Self {
        GroupElement(self.0 * other.0).renormalized()
    }

    pub fn inv(&self) -> Self {
        GroupElement(self.0.dagger())
    }

    /// `Ad(g)X = g X g⁻¹`
    pub fn adjoint(&self, x: &AlgebraElement<N>) -> AlgebraElement<N> {
        AlgebraElement::project(&(self.0 * x.0 * self.0.dagger()))
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    pub fn det_defect(&self) -> f64 {
        (self.0.det() - ONE).norm()
    }

    pub fn renormalized(self) -> Self {
        if self.0.unitarity_defect() > REUNITARIZE_THRESHOLD || self.det_defect() > REUNITARIZE_THRESHOLD {
            self.reunitarize()
        } else {
            self
        }
    }

    /// Polar projection `U = M (M*M)^{-1/2}` by Newton iteration, then the
    /// determinant phase is divided out.
    pub fn reunitarize(self) -> Self {
        let mut u = self.0;
        for _ in 0..50 {
            let Some(inv) = u.inverse() else { break };
            let next = (u + inv.dagger()).scale(0.5);
            let step = (next - u).norm();
            u = next;
            if step < 1e-15 {
                break;
            }
        }
        let det = u.det();
        let phase = C64::from_polar(1.0, -det.arg() / N as f64);
        GroupElement(u.scale_c(phase))
    }
}

impl<const N: usize> Mul for GroupElement<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GroupElement::mul(&self, &rhs)
    }
}
