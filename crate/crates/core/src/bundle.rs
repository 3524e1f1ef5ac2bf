//! Trivialized `LG⋊S¹`-bundle `P = U × (LG⋊S¹)` with the group acting on the
//! right of the fiber.
//!
//! Local data `(A_U, a_U, Φ_U)` on `U` is extended to all of `P` through the
//! transformation laws, so every formula below holds at arbitrary fiber
//! points, not only along the canonical section.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{LoopAlgField, PointFamily, ScalarField, SdFamily};
use crate::forms::{Bracket, FormValue, GridForm, ProbeChart, ScalarMul, StateSpace};
use crate::loops::{LoopAlg, LoopG, SdElem, SdTangent};

/// Point `(m, (γ, θ))` of the trivialized bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct BundlePoint<const N: usize> {
    pub base: Vec<f64>,
    pub fiber: SdElem<N>,
}

/// Tangent `(v_m, (δγ, t))` at a bundle point.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleTangent<const N: usize> {
    pub base: Vec<f64>,
    pub fiber: SdTangent<N>,
}

impl<const N: usize> BundlePoint<N> {
    pub fn new(base: Vec<f64>, fiber: SdElem<N>) -> Self {
        BundlePoint { base, fiber }
    }

    /// The canonical section `m ↦ (m, (e, 0))`.
    pub fn section(base: Vec<f64>, len: usize) -> Self {
        BundlePoint {
            base,
            fiber: SdElem::identity(len),
        }
    }

    /// Right action `p·k`.
    pub fn act(&self, k: &SdElem<N>) -> Self {
        BundlePoint {
            base: self.base.clone(),
            fiber: self.fiber.mul(k),
        }
    }

    pub fn len(&self) -> usize {
        self.fiber.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fiber.is_empty()
    }
}

impl<const N: usize> BundleTangent<N> {
    /// Vertical tangent generated by `(ξ, t)` at `p`: `d/ds p·(exp(sξ), st)`.
    pub fn vertical(at: &BundlePoint<N>, xi: &LoopAlg<N>, t: f64) -> Self {
        BundleTangent {
            base: vec![0.0; at.base.len()],
            fiber: SdTangent::left_invariant(&at.fiber, &xi.rotate(at.fiber.angle()), t),
        }
    }
}

impl<const N: usize> FormValue for BundleTangent<N> {
    fn zero_like(&self) -> Self {
        BundleTangent {
            base: vec![0.0; self.base.len()],
            fiber: self.fiber.zero_like(),
        }
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        self.base.axpy(s, &x.base);
        self.fiber.axpy(s, &x.fiber);
    }
    fn norm(&self) -> f64 {
        self.base.norm().max(self.fiber.norm())
    }
}

impl<const N: usize> StateSpace for BundlePoint<N> {
    type Tangent = BundleTangent<N>;
    fn secant(plus: &Self, minus: &Self, width: f64) -> BundleTangent<N> {
        BundleTangent {
            base: Vec::<f64>::secant(&plus.base, &minus.base, width),
            fiber: SdElem::secant(&plus.fiber, &minus.fiber, width),
        }
    }
}

/// Local connection pair `(A_U, a_U)`: one loop field and one scalar field
/// per base coordinate.
#[derive(Clone)]
pub struct ConnectionSpec<const N: usize> {
    len: usize,
    a_loop: Vec<LoopAlgField<N>>,
    a_real: Vec<ScalarField>,
}

impl<const N: usize> ConnectionSpec<N> {
    pub fn new(a_loop: Vec<LoopAlgField<N>>, a_real: Vec<ScalarField>) -> Result<Self> {
        let len = a_loop.first().map_or(0, LoopAlgField::len);
        if let Some(f) = a_loop.iter().find(|f| f.len() != len) {
            return Err(Error::SampleMismatch(len, f.len()));
        }
        if a_loop.len() != a_real.len() {
            return Err(Error::GridMismatch);
        }
        Ok(ConnectionSpec { len, a_loop, a_real })
    }

    pub fn flat(base_dim: usize, len: usize) -> Self {
        ConnectionSpec {
            len,
            a_loop: vec![LoopAlgField::zero(len); base_dim],
            a_real: vec![ScalarField::Zero; base_dim],
        }
    }

    /// Seeded smooth pair; `torus` confines `A_U` to the diagonal torus and
    /// `with_real = false` sets `a_U = 0`.
    pub fn seeded<R: Rng + ?Sized>(
        rng: &mut R,
        len: usize,
        base_dim: usize,
        amplitude: f64,
        torus: bool,
        with_real: bool,
    ) -> Self {
        let a_loop = (0..base_dim)
            .map(|_| LoopAlgField::seeded(rng, len, base_dim, amplitude, torus))
            .collect();
        let a_real = (0..base_dim)
            .map(|_| {
                if with_real {
                    ScalarField::seeded(rng, base_dim, amplitude)
                } else {
                    ScalarField::Zero
                }
            })
            .collect();
        ConnectionSpec { len, a_loop, a_real }
    }

    pub fn base_dim(&self) -> usize {
        self.a_loop.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn real_part_is_zero(&self) -> bool {
        self.a_real.iter().all(ScalarField::is_zero)
    }

    /// The same `A_U` with `a_U` replaced by zero.
    pub fn without_real_part(&self) -> Self {
        ConnectionSpec {
            len: self.len,
            a_loop: self.a_loop.clone(),
            a_real: vec![ScalarField::Zero; self.base_dim()],
        }
    }

    /// Point-dependent data shared by all tangents at `at`.
    pub fn frame(&self, at: &BundlePoint<N>) -> ConnectionFrame<N> {
        let gamma = at.fiber.loop_part();
        let log_d = gamma.log_derivative();
        let a_real: Vec<f64> = self.a_real.iter().map(|f| f.eval(&at.base)).collect();
        let shifted = self
            .a_loop
            .iter()
            .zip(&a_real)
            .map(|(f, a)| {
                let mut y = gamma.adjoint_inv(&f.eval(&at.base));
                y.axpy(-a, &log_d);
                y
            })
            .collect();
        ConnectionFrame {
            gamma: gamma.clone(),
            angle: at.fiber.angle(),
            shifted,
            a_real,
        }
    }
}

/// Connection data at one bundle point.
pub struct ConnectionFrame<const N: usize> {
    gamma: LoopG<N>,
    angle: f64,
    /// `ad(γ⁻¹)A_i − a_i γ⁻¹∂γ` per base direction.
    shifted: Vec<LoopAlg<N>>,
    a_real: Vec<f64>,
}

impl<const N: usize> ConnectionFrame<N> {
    /// `(A, a)(v)`.
    pub fn eval(&self, v: &BundleTangent<N>) -> (LoopAlg<N>, f64) {
        let mut y = self.gamma.left_translate(&v.fiber.loop_direction);
        for (c, s) in v.base.iter().zip(&self.shifted) {
            y.axpy(*c, s);
        }
        let a = self.a_real.iter().zip(&v.base).map(|(x, c)| x * c).sum::<f64>() + v.fiber.angle_rate;
        (y.rotate(-self.angle), a)
    }
}

/// `A = ρ_{−θ}(ad(γ⁻¹)A_U(v_m) − a_U(v_m)γ⁻¹∂γ + γ⁻¹δγ)`, `a = a_U(v_m) + t`.
pub fn global_connection<const N: usize>(
    spec: &ConnectionSpec<N>,
    at: &BundlePoint<N>,
    v: &BundleTangent<N>,
) -> (LoopAlg<N>, f64) {
    spec.frame(at).eval(v)
}

/// Local Higgs datum `Φ_U`.
#[derive(Clone)]
pub struct HiggsSpec<const N: usize> {
    pub phi: LoopAlgField<N>,
}

impl<const N: usize> HiggsSpec<N> {
    pub fn zero(len: usize) -> Self {
        HiggsSpec {
            phi: LoopAlgField::zero(len),
        }
    }

    pub fn seeded<R: Rng + ?Sized>(rng: &mut R, len: usize, base_dim: usize, amplitude: f64, torus: bool) -> Self {
        HiggsSpec {
            phi: LoopAlgField::seeded(rng, len, base_dim, amplitude, torus),
        }
    }

    /// `λΦ + (1 − λ)Φ'`
    pub fn convex(&self, other: &Self, lambda: f64) -> Self {
        HiggsSpec {
            phi: self.phi.combine(lambda, &other.phi, 1.0 - lambda),
        }
    }
}

/// `Φ(m, (γ, θ)) = ρ_{−θ}(ad(γ⁻¹)Φ_U(m) + γ⁻¹∂γ)`.
pub fn global_higgs<const N: usize>(higgs: &HiggsSpec<N>, at: &BundlePoint<N>) -> LoopAlg<N> {
    let gamma = at.fiber.loop_part();
    gamma
        .adjoint_inv(&higgs.phi.eval(&at.base))
        .add(&gamma.log_derivative())
        .rotate(-at.fiber.angle())
}

/// `(A, a)` and optionally `Φ` pulled back to a chart in one pass.
pub struct ConnectionGrids<const N: usize> {
    pub a_loop: GridForm<LoopAlg<N>>,
    pub a_real: GridForm<f64>,
    pub higgs: Option<GridForm<LoopAlg<N>>>,
}

pub fn sample_connection<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: Option<&HiggsSpec<N>>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<ConnectionGrids<N>> {
    let grid = chart.grid().clone();
    let nodes = chart.sample_nodes(|jet| {
        let frame = spec.frame(&jet.point);
        let (a_loop, a_real): (Vec<_>, Vec<_>) = jet.tangents.iter().map(|t| frame.eval(t)).unzip();
        let phi = higgs.map(|h| global_higgs(h, &jet.point));
        (a_loop, a_real, phi)
    });
    let mut loops = Vec::with_capacity(nodes.len());
    let mut reals = Vec::with_capacity(nodes.len());
    let mut phis = Vec::with_capacity(nodes.len());
    for (l, r, p) in nodes {
        loops.push(l);
        reals.push(r);
        if let Some(p) = p {
            phis.push(vec![p]);
        }
    }
    Ok(ConnectionGrids {
        a_loop: GridForm::from_node_vecs(grid.clone(), 1, loops),
        a_real: GridForm::from_node_vecs(grid.clone(), 1, reals),
        higgs: higgs.map(|_| GridForm::from_node_vecs(grid, 0, phis)),
    })
}

fn require_dim(dim: usize, required: usize) -> Result<()> {
    if dim < required {
        Err(Error::ChartTooSmall { dim, required })
    } else {
        Ok(())
    }
}

/// Spectral `∂` applied to every component.
pub fn loop_derivative<const N: usize>(form: &GridForm<LoopAlg<N>>) -> GridForm<LoopAlg<N>> {
    form.map(LoopAlg::derivative)
}

/// `F = dA + ½[A∧A] − a∧∂A`, `f = da` from sampled `(A, a)`.
pub fn curvature_from<const N: usize>(
    a_loop: &GridForm<LoopAlg<N>>,
    a_real: &GridForm<f64>,
) -> Result<(GridForm<LoopAlg<N>>, GridForm<f64>)> {
    let da = a_loop.exterior_derivative()?;
    let aa = a_loop.wedge(a_loop, &Bracket)?;
    let a_da = a_real.wedge(&loop_derivative(a_loop), &ScalarMul)?;
    let big_f = da.axpy(0.5, &aa)?.axpy(-1.0, &a_da)?;
    Ok((big_f, a_real.exterior_derivative()?))
}

/// `(F, f)` pulled back to a chart into `P`.
pub fn curvature_pair<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<(GridForm<LoopAlg<N>>, GridForm<f64>)> {
    require_dim(chart.dim(), 2)?;
    let g = sample_connection(spec, None, chart)?;
    curvature_from(&g.a_loop, &g.a_real)
}

/// `∇Φ = dΦ + [A, Φ] − ∂A − a∂Φ` from sampled data.
pub fn nabla_from<const N: usize>(
    a_loop: &GridForm<LoopAlg<N>>,
    a_real: &GridForm<f64>,
    phi: &GridForm<LoopAlg<N>>,
) -> Result<GridForm<LoopAlg<N>>> {
    let d_phi = phi.exterior_derivative()?;
    let a_phi = a_loop.wedge(phi, &Bracket)?;
    let a_dphi = a_real.wedge(&loop_derivative(phi), &ScalarMul)?;
    d_phi
        .add(&a_phi)?
        .axpy(-1.0, &loop_derivative(a_loop))?
        .axpy(-1.0, &a_dphi)
}

pub fn nabla_higgs<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<GridForm<LoopAlg<N>>> {
    require_dim(chart.dim(), 1)?;
    let g = sample_connection(spec, Some(higgs), chart)?;
    nabla_from(
        &g.a_loop,
        &g.a_real,
        g.higgs.as_ref().expect("sampled with Higgs field"),
    )
}

/// Interior residual of `dF − ([F∧A] − f∧∂A + a∧∂F)`.
pub fn bianchi_residual<const N: usize>(spec: &ConnectionSpec<N>, chart: &ProbeChart<BundlePoint<N>>) -> Result<f64> {
    require_dim(chart.dim(), 3)?;
    let g = sample_connection(spec, None, chart)?;
    let (big_f, f) = curvature_from(&g.a_loop, &g.a_real)?;
    let lhs = big_f.exterior_derivative()?;
    let rhs = big_f
        .wedge(&g.a_loop, &Bracket)?
        .axpy(-1.0, &f.wedge(&loop_derivative(&g.a_loop), &ScalarMul)?)?
        .add(&g.a_real.wedge(&loop_derivative(&big_f), &ScalarMul)?)?;
    lhs.interior_distance(&rhs, 2)
}

/// The difference map: `τ` with `p₁·τ = p₂`.
pub fn difference_map<const N: usize>(p1: &BundlePoint<N>, p2: &BundlePoint<N>) -> Result<SdElem<N>> {
    let gap = p1
        .base
        .iter()
        .zip(&p2.base)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if gap > 1e-12 || p1.base.len() != p2.base.len() {
        return Err(Error::BaseMismatch(gap));
    }
    p1.fiber.inv().try_mul(&p2.fiber)
}

/// Smooth family in `P`: a base family and a fiber family.
#[derive(Clone, Debug)]
pub struct BundleFamily<const N: usize> {
    pub base: PointFamily,
    pub fiber: SdFamily<N>,
}

impl<const N: usize> BundleFamily<N> {
    pub fn eval(&self, x: &[f64]) -> BundlePoint<N> {
        BundlePoint::new(self.base.eval(x), self.fiber.eval(x))
    }
}

/// `x ↦ (p₁(x), …, p_k(x))` over a common base family.
#[derive(Clone, Debug)]
pub struct FibreProductFamily<const N: usize> {
    pub base: PointFamily,
    pub fibers: Vec<SdFamily<N>>,
}

impl<const N: usize> FibreProductFamily<N> {
    pub fn eval(&self, x: &[f64]) -> Vec<BundlePoint<N>> {
        let m = self.base.eval(x);
        self.fibers
            .iter()
            .map(|f| BundlePoint::new(m.clone(), f.eval(x)))
            .collect()
    }
}

/// Component chart `x ↦ p_i(x)` of a fibre-product chart.
pub fn component<const N: usize>(chart: &ProbeChart<Vec<BundlePoint<N>>>, i: usize) -> ProbeChart<BundlePoint<N>> {
    chart.map(move |v| v[i].clone())
}

/// Chart of difference maps `x ↦ τ(p₁(x), p₂(x))`.
pub fn difference_chart<const N: usize>(
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
    i: usize,
    j: usize,
) -> ProbeChart<SdElem<N>> {
    chart.map(move |v| difference_map(&v[i], &v[j]).expect("fibre-product charts share the base"))
}

/// `A(c·k) − ρ_{−θ}(ad(γ⁻¹)A(c) − a(c)γ⁻¹∂γ)` and `a(c·k) − a(c)` for a
/// fixed `k = (γ, θ)`, as an interior max.
pub fn connection_equivariance_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
    k: &SdElem<N>,
) -> Result<f64> {
    let kk = k.clone();
    let moved = chart.map(move |p| p.act(&kk));
    let g0 = sample_connection(spec, None, chart)?;
    let g1 = sample_connection(spec, None, &moved)?;
    let gamma = k.loop_part().clone();
    let log_d = gamma.log_derivative();
    let theta = k.angle();
    let expected = g0.a_loop.zip_map(&g0.a_real, |a, r| {
        let mut y = gamma.adjoint_inv(a);
        y.axpy(-r, &log_d);
        y.rotate(-theta)
    })?;
    Ok(g1
        .a_loop
        .interior_distance(&expected, 2)?
        .max(g1.a_real.interior_distance(&g0.a_real, 2)?))
}

/// `A(ι(ξ)) − ξ` and `a(δ) − 1` at a point.
pub fn verticality_residual<const N: usize>(spec: &ConnectionSpec<N>, at: &BundlePoint<N>, xi: &LoopAlg<N>) -> f64 {
    let frame = spec.frame(at);
    let (a, r) = frame.eval(&BundleTangent::vertical(at, xi, 0.0));
    let (a_delta, r_delta) = frame.eval(&BundleTangent::vertical(at, &LoopAlg::zero(xi.len()), 1.0));
    a.sub(xi)
        .max_norm()
        .max(r.abs())
        .max(a_delta.max_norm())
        .max((r_delta - 1.0).abs())
}

/// `Φ(p·k) − ρ_{−θ}(ad(γ⁻¹)Φ(p) + γ⁻¹∂γ)`.
pub fn higgs_equivariance_residual<const N: usize>(higgs: &HiggsSpec<N>, at: &BundlePoint<N>, k: &SdElem<N>) -> f64 {
    let lhs = global_higgs(higgs, &at.act(k));
    let gamma = k.loop_part();
    let rhs = gamma
        .adjoint_inv(&global_higgs(higgs, at))
        .add(&gamma.log_derivative())
        .rotate(-k.angle());
    lhs.sub(&rhs).max_norm()
}

/// `∇Φ(c·k) − ρ_{−θ}(ad(γ⁻¹)∇Φ(c))` for a fixed `k`.
pub fn nabla_equivariance_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
    k: &SdElem<N>,
) -> Result<f64> {
    let kk = k.clone();
    let moved = chart.map(move |p| p.act(&kk));
    let n0 = nabla_higgs(spec, higgs, chart)?;
    let n1 = nabla_higgs(spec, higgs, &moved)?;
    let gamma = k.loop_part().clone();
    let theta = k.angle();
    let expected = n0.map(|x| gamma.adjoint_inv(x).rotate(-theta));
    n1.interior_distance(&expected, 2)
}

/// `ad(τ)ρ_{θ_τ}(Φ₂) − Φ₁ − Z(τ)` over the nodes of a chart into `P^[2]`.
pub fn higgs_difference_residual<const N: usize>(
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let res = chart.sample_points(|pts| -> Result<f64> {
        let tau = difference_map(&pts[0], &pts[1])?;
        let phi1 = global_higgs(higgs, &pts[0]);
        let phi2 = global_higgs(higgs, &pts[1]);
        let lhs = tau.loop_part().adjoint(&phi2.rotate(tau.angle()));
        Ok(lhs.sub(&phi1).sub(&tau.loop_part().z_map()).max_norm())
    });
    res.into_iter().try_fold(0.0_f64, |m, r| r.map(|r| m.max(r)))
}

/// `ad(τ)ρ_{θ_τ}(F₂) − F₁ + f₁Z(τ)` on a chart into `P^[2]`.
pub fn curvature_difference_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let (f1, r1) = curvature_pair(spec, &component(chart, 0))?;
    let (f2, _) = curvature_pair(spec, &component(chart, 1))?;
    let taus = chart.sample_points(|pts| difference_map(&pts[0], &pts[1]));
    let taus: Vec<SdElem<N>> = taus.into_iter().collect::<Result<_>>()?;
    let zs: Vec<LoopAlg<N>> = taus.iter().map(|t| t.loop_part().z_map()).collect();
    let c = f1.component_count();
    let grid = chart.grid();
    let mut worst: f64 = 0.0;
    for n in (0..grid.nodes()).filter(|&n| grid.is_interior(n, 2)) {
        let tau = &taus[n];
        for s in 0..c {
            let lhs = tau.loop_part().adjoint(&f2.node(n)[s].rotate(tau.angle()));
            let mut r = lhs.sub(&f1.node(n)[s]);
            r.axpy(r1.node(n)[s], &zs[n]);
            worst = worst.max(r.max_norm());
        }
    }
    Ok(worst)
}

/// Expanded `(A, a)` transport along the difference map:
/// `A₂ = ρ_{−θ_τ}(ad(τ⁻¹)A₁ − a₁τ⁻¹∂τ) + ρ_{−θ_τ}(τ⁻¹dτ)`, `a₂ = a₁ + dθ_τ`.
pub fn difference_connection_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let g1 = sample_connection(spec, None, &component(chart, 0))?;
    let g2 = sample_connection(spec, None, &component(chart, 1))?;
    let tau_chart = difference_chart(chart, 0, 1);
    let mc = tau_chart.sample_form(1, |tau, t| tau.maurer_cartan(t[0]))?;
    let taus = tau_chart.sample_points(|t| (t.loop_part().clone(), t.loop_part().log_derivative(), t.angle()));
    let grid = chart.grid();
    let mut worst: f64 = 0.0;
    for n in (0..grid.nodes()).filter(|&n| grid.is_interior(n, 2)) {
        let (gamma, log_d, theta) = &taus[n];
        for s in 0..grid.dim() {
            let (a1, r1) = (&g1.a_loop.node(n)[s], g1.a_real.node(n)[s]);
            let (mc_loop, mc_angle) = &mc.node(n)[s];
            let mut y = gamma.adjoint_inv(a1);
            y.axpy(-r1, log_d);
            let expect = y.rotate(-theta).add(mc_loop);
            worst = worst
                .max(g2.a_loop.node(n)[s].sub(&expect).max_norm())
                .max((g2.a_real.node(n)[s] - r1 - mc_angle).abs());
        }
    }
    Ok(worst)
}

/// `τ₁₂τ₂₃ − τ₁₃` for three points over one base point.
pub fn cocycle_residual<const N: usize>(p1: &BundlePoint<N>, p2: &BundlePoint<N>, p3: &BundlePoint<N>) -> Result<f64> {
    let t12 = difference_map(p1, p2)?;
    let t23 = difference_map(p2, p3)?;
    let t13 = difference_map(p1, p3)?;
    Ok(t12.mul(&t23).distance(&t13))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::forms::{convergence_order, Grid, MultiIndex, TangentScheme};
    use crate::probes::{bundle_chart, fibre_product_chart, ProbeShape};

    const LEN: usize = 64;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn shape(chart_dim: usize, torus: bool) -> ProbeShape {
        ProbeShape {
            len: LEN,
            base_dim: 4,
            chart_dim,
            extent: 0.05,
            amplitude: 0.6,
            torus,
        }
    }

    fn seeded_point(r: &mut ChaCha8Rng) -> BundlePoint<2> {
        let base = (0..4).map(|_| r.gen_range(-1.0..1.0)).collect();
        BundlePoint::new(
            base,
            SdElem::new(LoopG::random(r, LEN, 0.6, false), r.gen_range(0.0..6.0)),
        )
    }

    fn section_chart_2d(center: Vec<f64>) -> ProbeChart<BundlePoint<2>> {
        let family = PointFamily::axis_aligned(center, 2, 1.0);
        ProbeChart::new(Grid::uniform(2, 17).unwrap(), move |x| {
            BundlePoint::section(family.eval(x), LEN)
        })
    }

    fn torus_loop(r: &mut ChaCha8Rng) -> LoopAlg<2> {
        LoopAlg::random(r, LEN, 0.6, true)
    }

    #[test]
    fn vertical_vectors_are_reproduced() {
        let mut r = rng(1);
        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false, true);
        let xi = LoopAlg::random(&mut r, LEN, 0.6, false);
        let section = BundlePoint::section(vec![0.1, 0.2, 0.3, 0.4], LEN);
        let (a, t) = global_connection(&spec, &section, &BundleTangent::vertical(&section, &xi, 0.7));
        assert!(a.sub(&xi).max_norm() < 1e-12);
        assert!((t - 0.7).abs() < 1e-14);
        for _ in 0..4 {
            let p = seeded_point(&mut r);
            assert!(verticality_residual(&spec, &p, &xi) < 1e-10);
        }
    }

    #[test]
    fn flat_spec_gives_zero_on_base_tangents() {
        let spec = ConnectionSpec::<2>::flat(4, LEN);
        let p = BundlePoint::section(vec![0.3; 4], LEN);
        let v = BundleTangent {
            base: vec![1.0, -2.0, 0.5, 3.0],
            fiber: SdTangent::zero(LEN),
        };
        let (a, t) = global_connection(&spec, &p, &v);
        assert_eq!(a.max_norm(), 0.0);
        assert_eq!(t, 0.0);
    }

    #[test]
    fn connection_transforms_under_the_right_action() {
        let mut r = rng(2);
        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false, true);
        let chart = bundle_chart::<2, _>(&mut r, &shape(2, false), 9)
            .unwrap()
            .with_scheme(TangentScheme::Richardson);
        for angle in [0.0, 1.3, std::f64::consts::PI / 8.0] {
            let k = SdElem::new(LoopG::random(&mut r, LEN, 0.6, false), angle);
            assert!(connection_equivariance_residual(&spec, &chart, &k).unwrap() < 1e-8);
        }
    }

    #[test]
    fn higgs_examples() {
        let mut r = rng(3);
        let higgs = HiggsSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false);
        let m = vec![0.2, -0.1, 0.4, 0.0];
        let at_section = global_higgs(&higgs, &BundlePoint::section(m.clone(), LEN));
        assert!(at_section.sub(&higgs.phi.eval(&m)).max_norm() < 1e-14);

        let gamma = LoopG::<2>::random(&mut r, LEN, 0.6, false);
        let phi = global_higgs(
            &HiggsSpec::zero(LEN),
            &BundlePoint::new(m, SdElem::new(gamma.clone(), 0.0)),
        );
        assert!(phi.sub(&gamma.log_derivative()).max_norm() < 1e-12);
    }

    #[test]
    fn higgs_equivariance_and_convexity() {
        let mut r = rng(4);
        let h1 = HiggsSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false);
        let h2 = HiggsSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false);
        for lambda in [0.0, 0.3, 1.0] {
            let h = h1.convex(&h2, lambda);
            for _ in 0..3 {
                let p = seeded_point(&mut r);
                let k = SdElem::new(LoopG::random(&mut r, LEN, 0.6, false), r.gen_range(0.0..6.0));
                assert!(higgs_equivariance_residual(&h, &p, &k) < 1e-8);
            }
        }
    }

    #[test]
    fn curvature_of_flat_and_linear_data() {
        let mut r = rng(5);
        let chart = section_chart_2d(vec![0.1, 0.2, 0.3, 0.4]);
        let (big_f, f) = curvature_pair(&ConnectionSpec::<2>::flat(4, LEN), &chart).unwrap();
        assert_eq!(big_f.max_norm(), 0.0);
        assert_eq!(f.max_norm(), 0.0);

        let zero = LoopAlgField::zero(LEN);
        let spec = ConnectionSpec::<2>::new(
            vec![zero.clone(); 4],
            vec![
                ScalarField::Zero,
                ScalarField::coordinate(0, 1.0),
                ScalarField::Zero,
                ScalarField::Zero,
            ],
        )
        .unwrap();
        let (_, f) = curvature_pair(&spec, &chart).unwrap();
        let top = MultiIndex::from_axes(&[0, 1]);
        for n in 0..chart.grid().nodes() {
            assert!((f.get(n, top).unwrap() - 1.0).abs() < 1e-10);
        }

        let c = torus_loop(&mut r);
        let cc = c.clone();
        let a1 = LoopAlgField::from_fn(LEN, move |m| cc.scale(m[0]));
        let spec = ConnectionSpec::new(vec![zero.clone(), a1, zero.clone(), zero], vec![ScalarField::Zero; 4]).unwrap();
        let (big_f, _) = curvature_pair(&spec, &chart).unwrap();
        for n in 0..chart.grid().nodes() {
            assert!(big_f.get(n, top).unwrap().sub(&c).max_norm() < 1e-10);
        }
    }

    #[test]
    fn nabla_examples() {
        let mut r = rng(6);
        let chart = section_chart_2d(vec![0.1, 0.2, 0.3, 0.4]);
        let flat = ConnectionSpec::<2>::flat(4, LEN);
        let constant = HiggsSpec {
            phi: LoopAlgField::constant(LoopAlg::random(&mut r, LEN, 0.6, false)),
        };
        assert!(nabla_higgs(&flat, &constant, &chart).unwrap().max_norm() < 1e-12);

        let c = LoopAlg::random(&mut r, LEN, 0.6, false);
        let zero = LoopAlgField::zero(LEN);
        let spec = ConnectionSpec::new(
            vec![LoopAlgField::constant(c.clone()), zero.clone(), zero.clone(), zero],
            vec![ScalarField::Zero; 4],
        )
        .unwrap();
        let nabla = nabla_higgs(&spec, &HiggsSpec::zero(LEN), &chart).unwrap();
        let expect = c.derivative().scale(-1.0);
        for n in 0..chart.grid().nodes() {
            assert!(nabla.node(n)[0].sub(&expect).max_norm() < 1e-10);
            assert!(nabla.node(n)[1].max_norm() < 1e-12);
        }
    }

    #[test]
    fn nabla_is_equivariant() {
        let mut r = rng(7);
        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false, true);
        let higgs = HiggsSpec::seeded(&mut r, LEN, 4, 0.5, false);
        let chart = bundle_chart::<2, _>(&mut r, &shape(2, false), 9)
            .unwrap()
            .with_scheme(TangentScheme::Richardson);
        let k = SdElem::new(LoopG::random(&mut r, LEN, 0.6, false), 2.1);
        assert!(nabla_equivariance_residual(&spec, &higgs, &chart, &k).unwrap() < 1e-7);
    }

    fn bianchi_study(spec: &ConnectionSpec<2>, chart: &ProbeChart<BundlePoint<2>>) -> Vec<(f64, f64)> {
        [9, 17]
            .iter()
            .map(|&res| {
                let c = chart.regrid(Grid::uniform(3, res).unwrap());
                (c.grid().max_spacing(), bianchi_residual(spec, &c).unwrap())
            })
            .collect()
    }

    #[test]
    fn bianchi_flat_and_abelian() {
        let mut r = rng(8);
        let flat_chart = crate::probes::section_chart::<2, _>(&mut r, &shape(3, false), 9).unwrap();
        assert!(bianchi_residual(&ConnectionSpec::flat(4, LEN), &flat_chart).unwrap() < 1e-12);

        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, true, true);
        let chart = bundle_chart::<2, _>(&mut r, &shape(3, true), 9).unwrap();
        let study = bianchi_study(&spec, &chart);
        assert!(study[1].1 < 1e-6, "{study:?}");
    }

    #[test]
    fn bianchi_converges_for_seeded_data() {
        let mut r = rng(9);
        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false, true);
        let chart = bundle_chart::<2, _>(&mut r, &shape(3, false), 9).unwrap();
        let study = bianchi_study(&spec, &chart);
        let order = convergence_order(study[0].0, study[0].1, study[1].0, study[1].1);
        assert!(study[1].1 < 1e-6 && order >= 1.8, "{study:?} {order}");
    }

    #[test]
    fn difference_map_basics() {
        let mut r = rng(10);
        let p = seeded_point(&mut r);
        assert!(difference_map(&p, &p).unwrap().distance(&SdElem::identity(LEN)) < 1e-12);
        for _ in 0..5 {
            let p1 = seeded_point(&mut r);
            let mut p2 = seeded_point(&mut r);
            let mut p3 = seeded_point(&mut r);
            p2.base = p1.base.clone();
            p3.base = p1.base.clone();
            assert!(cocycle_residual(&p1, &p2, &p3).unwrap() < 1e-10);
            assert!(p1.act(&difference_map(&p1, &p2).unwrap()).fiber.distance(&p2.fiber) < 1e-10);
        }
        let q = BundlePoint::section(vec![0.0; 4], LEN);
        assert!(matches!(difference_map(&p, &q), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn difference_map_identities_on_fibre_products() {
        let mut r = rng(11);
        let spec = ConnectionSpec::<2>::seeded(&mut r, LEN, 4, 0.5, false, true);
        let higgs = HiggsSpec::seeded(&mut r, LEN, 4, 0.5, false);
        let chart = fibre_product_chart::<2, _>(&mut r, &shape(2, false), 2, 9).unwrap();
        assert!(higgs_difference_residual(&higgs, &chart).unwrap() < 1e-10);
        let transport = chart.clone().with_scheme(TangentScheme::Richardson);
        assert!(difference_connection_residual(&spec, &transport).unwrap() < 1e-7);
        let study: Vec<(f64, f64)> = [9, 17]
            .iter()
            .map(|&res| {
                let c = chart.regrid(Grid::uniform(2, res).unwrap());
                (
                    c.grid().max_spacing(),
                    curvature_difference_residual(&spec, &c).unwrap(),
                )
            })
            .collect();
        let order = convergence_order(study[0].0, study[0].1, study[1].0, study[1].1);
        assert!(study[1].1 < 1e-6 && order >= 1.8, "{study:?} {order}");
    }
}
