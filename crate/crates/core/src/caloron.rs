//! The caloron transform: `LG⋊S¹`-bundle data `(A, a, Φ)` on `P` becomes a
//! `G`-connection `Ã` on `P × G × S¹` that descends to the quotient by
//! `LG⋊S¹`.

use std::f64::consts::PI;

use crate::bundle::{
    curvature_from, nabla_from, sample_connection, BundlePoint, BundleTangent, ConnectionFrame, ConnectionSpec,
    HiggsSpec,
};
use crate::error::{Error, Result};
use crate::fields::{GroupFamily, PointFamily};
use crate::forms::{Bracket, FnPairing, FormValue, GridForm, Inner, ProbeChart, StateSpace};
use crate::lie::{AlgebraElement, GroupElement, Mat};
use crate::loops::{angle_difference, canonical_angle, LoopAlg, SdElem};

/// `Ā = A + aΦ` on one tangent.
pub fn join_equivariant<const N: usize>(a_loop: &LoopAlg<N>, a_real: f64, phi: &LoopAlg<N>) -> LoopAlg<N> {
    let mut out = a_loop.clone();
    out.axpy(a_real, phi);
    out
}

/// Inverse of [`join_equivariant`] given the `S¹`-component `a`:
/// `(Ā − aΦ, a, Φ)`.
pub fn split_equivariant<const N: usize>(
    a_bar: &LoopAlg<N>,
    a_real: f64,
    phi: &LoopAlg<N>,
) -> (LoopAlg<N>, f64, LoopAlg<N>) {
    let mut a_loop = a_bar.clone();
    a_loop.axpy(-a_real, phi);
    (a_loop, a_real, phi.clone())
}

/// The equivariant connection `Ā` on the trivialized model.
pub struct EquivariantConnection<'a, const N: usize> {
    pub spec: &'a ConnectionSpec<N>,
    pub higgs: &'a HiggsSpec<N>,
}

impl<const N: usize> EquivariantConnection<'_, N> {
    pub fn eval(&self, at: &BundlePoint<N>, v: &BundleTangent<N>) -> LoopAlg<N> {
        let (a, r) = self.spec.frame(at).eval(v);
        join_equivariant(&a, r, &crate::bundle::global_higgs(self.higgs, at))
    }

    /// `Φ(p) = Ā_p(δ_p)`.
    pub fn higgs_from(&self, at: &BundlePoint<N>) -> LoopAlg<N> {
        self.eval(at, &BundleTangent::vertical(at, &LoopAlg::zero(at.len()), 1.0))
    }

    /// `(A, a)` recovered from `Ā`, `a` and the recovered `Φ`.
    pub fn split(&self, at: &BundlePoint<N>, v: &BundleTangent<N>) -> (LoopAlg<N>, f64, LoopAlg<N>) {
        let (_, r) = self.spec.frame(at).eval(v);
        split_equivariant(&self.eval(at, v), r, &self.higgs_from(at))
    }
}

/// Largest error of split∘join and join∘split at `at` on `v`.
pub fn round_trip_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    at: &BundlePoint<N>,
    v: &BundleTangent<N>,
) -> f64 {
    let conn = EquivariantConnection { spec, higgs };
    let (a, r) = spec.frame(at).eval(v);
    let phi = crate::bundle::global_higgs(higgs, at);
    let (a2, r2, phi2) = conn.split(at, v);
    let split_join = a2.sub(&a).max_norm().max((r2 - r).abs()).max(phi2.sub(&phi).max_norm());
    let a_bar = conn.eval(at, v);
    let (a3, r3, phi3) = split_equivariant(&a_bar, r, &phi);
    let join_split = join_equivariant(&a3, r3, &phi3).sub(&a_bar).max_norm();
    split_join.max(join_split)
}

/// Point `(p, g, θ)` of `P × G × S¹`.
#[derive(Clone, Debug)]
pub struct CaloronPoint<const N: usize> {
    pub bundle: BundlePoint<N>,
    pub g: GroupElement<N>,
    theta: f64,
}

/// Tangent `(v_P, δg, dθ)`.
#[derive(Clone, Debug)]
pub struct CaloronTangent<const N: usize> {
    pub bundle: BundleTangent<N>,
    pub g: Mat<N>,
    pub theta: f64,
}

impl<const N: usize> CaloronPoint<N> {
    pub fn new(bundle: BundlePoint<N>, g: GroupElement<N>, theta: f64) -> Self {
        CaloronPoint {
            bundle,
            g,
            theta: canonical_angle(theta),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(p, g, θ)·(γ, φ) = (p·(γ, φ), γ(θ)⁻¹g, θ − φ)`.
    pub fn act(&self, k: &SdElem<N>) -> Self {
        let gamma_theta = k.loop_part().eval_at(self.theta);
        CaloronPoint::new(
            self.bundle.act(k),
            gamma_theta.inv().mul(&self.g),
            self.theta - k.angle(),
        )
    }

    /// Right `G`-action `(p, g, θ)·h = (p, gh, θ)`.
    pub fn act_g(&self, h: &GroupElement<N>) -> Self {
        CaloronPoint {
            bundle: self.bundle.clone(),
            g: self.g.mul(h),
            theta: self.theta,
        }
    }
}

impl<const N: usize> CaloronTangent<N> {
    /// Tangent of `s ↦ (p, g exp(sξ), θ)`.
    pub fn vertical_g(at: &CaloronPoint<N>, xi: &AlgebraElement<N>) -> Self {
        CaloronTangent {
            bundle: BundleTangent {
                base: vec![0.0; at.bundle.base.len()],
                fiber: crate::loops::SdTangent::zero(at.bundle.len()),
            },
            g: *at.g.matrix() * *xi.matrix(),
            theta: 0.0,
        }
    }
}

impl<const N: usize> FormValue for CaloronTangent<N> {
    fn zero_like(&self) -> Self {
        CaloronTangent {
            bundle: self.bundle.zero_like(),
            g: Mat::zero(),
            theta: 0.0,
        }
    }
    fn axpy(&mut self, s: f64, x: &Self) {
        self.bundle.axpy(s, &x.bundle);
        self.g.axpy(s, &x.g);
        self.theta += s * x.theta;
    }
    fn norm(&self) -> f64 {
        self.bundle.norm().max(self.g.norm()).max(self.theta.abs())
    }
}

impl<const N: usize> StateSpace for CaloronPoint<N> {
    type Tangent = CaloronTangent<N>;
    fn secant(plus: &Self, minus: &Self, width: f64) -> CaloronTangent<N> {
        CaloronTangent {
            bundle: BundlePoint::secant(&plus.bundle, &minus.bundle, width),
            g: GroupElement::secant(&plus.g, &minus.g, width),
            theta: angle_difference(plus.theta, minus.theta) / width,
        }
    }
}

/// Point data for `Ã` shared by all tangents.
pub struct CaloronFrame<const N: usize> {
    connection: ConnectionFrame<N>,
    phi_theta: AlgebraElement<N>,
    theta: f64,
    g: GroupElement<N>,
}

impl<const N: usize> CaloronFrame<N> {
    pub fn new(spec: &ConnectionSpec<N>, higgs: &HiggsSpec<N>, at: &CaloronPoint<N>) -> Self {
        CaloronFrame {
            connection: spec.frame(&at.bundle),
            phi_theta: crate::bundle::global_higgs(higgs, &at.bundle).eval_at(at.theta),
            theta: at.theta,
            g: at.g,
        }
    }

    /// `Ã = ad(g⁻¹)(A(θ) + Φ(θ)(a + dθ)) + g⁻¹δg`.
    pub fn eval(&self, v: &CaloronTangent<N>) -> AlgebraElement<N> {
        let (a, r) = self.connection.eval(&v.bundle);
        let mut x = a.eval_at(self.theta);
        x.axpy(r + v.theta, &self.phi_theta);
        let mc = AlgebraElement::project(&(self.g.matrix().dagger() * v.g));
        self.g.inv().adjoint(&x) + mc
    }
}

pub fn caloron_connection<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    at: &CaloronPoint<N>,
    v: &CaloronTangent<N>,
) -> AlgebraElement<N> {
    CaloronFrame::new(spec, higgs, at).eval(v)
}

/// `Ã` sampled on a chart.
pub fn sample_caloron_connection<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
) -> Result<GridForm<AlgebraElement<N>>> {
    let nodes = chart.sample_nodes(|jet| {
        let frame = CaloronFrame::new(spec, higgs, &jet.point);
        jet.tangents.iter().map(|t| frame.eval(t)).collect()
    });
    Ok(GridForm::from_node_vecs(chart.grid().clone(), 1, nodes))
}

/// `dÃ + ½[Ã∧Ã]` by grid differencing.
pub fn differenced_curvature<const N: usize>(
    connection: &GridForm<AlgebraElement<N>>,
) -> Result<GridForm<AlgebraElement<N>>> {
    connection
        .exterior_derivative()?
        .axpy(0.5, &connection.wedge(connection, &Bracket)?)
}

/// `ad(g⁻¹)(F + fΦ + ∇Φ∧(a + dθ))` at the chart's `θ`, from sampled bundle
/// ingredients.
pub fn caloron_curvature<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
) -> Result<GridForm<AlgebraElement<N>>> {
    if chart.dim() < 2 {
        return Err(Error::ChartTooSmall {
            dim: chart.dim(),
            required: 2,
        });
    }
    let grids = sample_connection(spec, Some(higgs), &chart.map(|c| c.bundle))?;
    let phi = grids.higgs.as_ref().expect("sampled with Higgs field");
    let (big_f, f) = curvature_from(&grids.a_loop, &grids.a_real)?;
    let nabla = nabla_from(&grids.a_loop, &grids.a_real, phi)?;
    let d_theta = chart.sample_form(1, |_, t| t[0].theta)?;
    let b = grids.a_real.add(&d_theta)?;
    let scale_loop = FnPairing(|x: &LoopAlg<N>, s: &f64| x.scale(*s));
    let loop_part = big_f
        .add(&f.wedge(phi, &crate::forms::ScalarMul)?)?
        .add(&nabla.wedge(&b, &scale_loop)?)?;
    let frames = chart.sample_points(|c| (c.theta, c.g.inv()));
    let grid = chart.grid().clone();
    let nodes = (0..grid.nodes())
        .map(|n| {
            let (theta, g_inv) = &frames[n];
            loop_part
                .node(n)
                .iter()
                .map(|x| g_inv.adjoint(&x.eval_at(*theta)))
                .collect()
        })
        .collect();
    Ok(GridForm::from_node_vecs(grid, 2, nodes))
}

/// Closed-form minus differenced `F̃`.
pub fn curvature_consistency_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
) -> Result<f64> {
    let closed = caloron_curvature(spec, higgs, chart)?;
    let differenced = differenced_curvature(&sample_caloron_connection(spec, higgs, chart)?)?;
    closed.interior_distance(&differenced, 2)
}

/// `p₁ = −(1/8π²)⟨F̃∧F̃⟩`.
pub fn pontryagin_form<const N: usize>(curvature: &GridForm<AlgebraElement<N>>) -> Result<GridForm<f64>> {
    if curvature.grid().dim() < 4 {
        return Err(Error::DegreeOverflow {
            degree: 4,
            dim: curvature.grid().dim(),
        });
    }
    Ok(curvature.wedge(curvature, &Inner)?.scale(-1.0 / (8.0 * PI * PI)))
}

/// `Ã` on the chart translated by `k` minus `Ã` on the chart.
pub fn action_invariance_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
    k: &SdElem<N>,
) -> Result<f64> {
    let kk = k.clone();
    let moved = chart.map(move |c| c.act(&kk));
    sample_caloron_connection(spec, higgs, &moved)?
        .interior_distance(&sample_caloron_connection(spec, higgs, chart)?, 0)
}

/// `F̃` (closed form) on the translated chart minus `F̃` on the chart.
pub fn curvature_invariance_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
    k: &SdElem<N>,
) -> Result<f64> {
    let kk = k.clone();
    let moved = chart.map(move |c| c.act(&kk));
    caloron_curvature(spec, higgs, &moved)?.interior_distance(&caloron_curvature(spec, higgs, chart)?, 2)
}

/// `Ã(c·h) − ad(h⁻¹)Ã(c)` for a fixed `h ∈ G`.
pub fn g_equivariance_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<CaloronPoint<N>>,
    h: &GroupElement<N>,
) -> Result<f64> {
    let hh = *h;
    let moved = chart.map(move |c| c.act_g(&hh));
    let h_inv = h.inv();
    let expected = sample_caloron_connection(spec, higgs, chart)?.map(|x| h_inv.adjoint(x));
    sample_caloron_connection(spec, higgs, &moved)?.interior_distance(&expected, 0)
}

/// Smooth family in `P × G × S¹`.
#[derive(Clone, Debug)]
pub struct CaloronFamily<const N: usize> {
    pub bundle: crate::bundle::BundleFamily<N>,
    pub g: GroupFamily<N>,
    pub theta: PointFamily,
}

impl<const N: usize> CaloronFamily<N> {
    pub fn eval(&self, x: &[f64]) -> CaloronPoint<N> {
        CaloronPoint::new(self.bundle.eval(x), self.g.eval(x), self.theta.eval(x)[0])
    }
}
