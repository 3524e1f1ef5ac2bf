//! Central-extension cocycle `(R, α)` on powers of `LG⋊S¹` and the lifting
//! bundle gerbe data `(ε, B, H)`.
//!
//! All of these forms are imaginary; only their real coefficients are
//! stored and the factor `i` is applied when reporting.

use std::f64::consts::PI;

use crate::bundle::{
    component, curvature_from, difference_chart, difference_map, loop_derivative, sample_connection, BundlePoint,
    BundleTangent, ConnectionGrids, ConnectionSpec, HiggsSpec,
};
use crate::error::{Error, Result};
use crate::forms::{fibre_delta, group_delta, GridForm, Inner, ProbeChart, ScalarMul};
use crate::loops::{LoopAlg, SdElem, SdTangent};

/// `γ⁻¹δγ` of the loop component, without rotation.
pub fn loop_maurer_cartan<const N: usize>(at: &SdElem<N>, v: &SdTangent<N>) -> LoopAlg<N> {
    at.loop_part().left_translate(&v.loop_direction)
}

/// `R(v₁, v₂) = (1/4π)∫⟨Θ(v₁), ∂Θ(v₂)⟩ − ⟨Θ(v₂), ∂Θ(v₁)⟩`.
pub fn r_value<const N: usize>(at: &SdElem<N>, v1: &SdTangent<N>, v2: &SdTangent<N>) -> f64 {
    let t1 = loop_maurer_cartan(at, v1);
    let t2 = loop_maurer_cartan(at, v2);
    (t1.pairing(&t2.derivative()) - t2.pairing(&t1.derivative())) / (4.0 * PI)
}

/// `α` at `(k₁, k₂)`: `(1/2π)∫⟨ρ_{−θ₁}(γ₁⁻¹δγ₁) − ½t₁Z(γ₂), Z(γ₂)⟩`.
///
/// Only the tangent in the first slot enters and the value is left
/// invariant in that slot.
pub fn alpha_value<const N: usize>(at: &[SdElem<N>], v: &[SdTangent<N>]) -> f64 {
    let (theta, t) = at[0].maurer_cartan(&v[0]);
    let z = at[1].loop_part().z_map();
    let mut x = theta;
    x.axpy(-0.5 * t, &z);
    x.pairing(&z) / (2.0 * PI)
}

/// Sampler for `R` on charts into 1-tuples.
pub fn r_form<const N: usize>(chart: &ProbeChart<Vec<SdElem<N>>>) -> Result<GridForm<f64>> {
    chart.sample_form(2, |p, t| r_value(&p[0], &t[0][0], &t[1][0]))
}

/// Sampler for `α` on charts into pairs.
pub fn alpha_form<const N: usize>(chart: &ProbeChart<Vec<SdElem<N>>>) -> Result<GridForm<f64>> {
    chart.sample_form(1, |p, t| alpha_value(p, t[0]))
}

/// `dα − δR` on a chart into `K̃²`.
pub fn d_alpha_residual<const N: usize>(chart: &ProbeChart<Vec<SdElem<N>>>) -> Result<f64> {
    let d_alpha = alpha_form(chart)?.exterior_derivative()?;
    let delta_r = group_delta(chart, 1, r_form)?;
    d_alpha.interior_distance(&delta_r, 2)
}

/// `δα` on a chart into `K̃³`.
pub fn delta_alpha_residual<const N: usize>(chart: &ProbeChart<Vec<SdElem<N>>>) -> Result<f64> {
    Ok(group_delta(chart, 2, alpha_form)?.max_norm())
}

/// `α(k k₁, k₂; k·v₁) − α(k₁, k₂; v₁)` for a fixed `k`.
pub fn alpha_left_invariance_residual<const N: usize>(
    chart: &ProbeChart<Vec<SdElem<N>>>,
    k: &SdElem<N>,
) -> Result<f64> {
    let kk = k.clone();
    let moved = chart.map(move |mut p: Vec<SdElem<N>>| {
        p[0] = kk.mul(&p[0]);
        p
    });
    alpha_form(&moved)?.interior_distance(&alpha_form(chart)?, 0)
}

/// `R` on the chart with every loop rotated by `φ`, minus `R` on the chart.
pub fn r_rotation_residual<const N: usize>(chart: &ProbeChart<Vec<SdElem<N>>>, phi: f64) -> Result<f64> {
    let rotated = chart.map(move |p: Vec<SdElem<N>>| {
        p.into_iter()
            .map(|k| SdElem::new(k.loop_part().rotate(phi), k.angle()))
            .collect::<Vec<_>>()
    });
    r_form(&rotated)?.interior_distance(&r_form(chart)?, 0)
}

/// `ε(X₁, X₂) = (1/2π)∫⟨A(X₁) − ½a(X₁)Z(τ), Z(τ)⟩` with `τ = τ(p₁, p₂)`.
pub fn epsilon_value<const N: usize>(
    spec: &ConnectionSpec<N>,
    at: &[BundlePoint<N>],
    v: &[BundleTangent<N>],
) -> Result<f64> {
    let tau = difference_map(&at[0], &at[1])?;
    let (a, r) = spec.frame(&at[0]).eval(&v[0]);
    let z = tau.loop_part().z_map();
    let mut x = a;
    x.axpy(-0.5 * r, &z);
    Ok(x.pairing(&z) / (2.0 * PI))
}

/// Sampler for `ε` on charts into `P^[2]`.
pub fn epsilon_form<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<GridForm<f64>> {
    let values = chart.sample_nodes(|jet| {
        (0..jet.tangents.len())
            .map(|i| epsilon_value(spec, &jet.point, &jet.tangents[i]))
            .collect::<Result<Vec<f64>>>()
    });
    let nodes = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(GridForm::from_node_vecs(chart.grid().clone(), 1, nodes))
}

/// `ε − α_{(1,τ)}(A(X₁), dτ)` over the nodes of a `P^[2]` chart.
pub fn epsilon_alpha_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let eps = epsilon_form(spec, chart)?;
    let len = chart.point(&vec![0.5; chart.dim()])[0].len();
    let values = chart.sample_nodes(|jet| -> Result<Vec<f64>> {
        let tau = difference_map(&jet.point[0], &jet.point[1])?;
        let frame = spec.frame(&jet.point[0]);
        let unit = SdElem::identity(len);
        Ok(jet
            .tangents
            .iter()
            .map(|t| {
                let (a, r) = frame.eval(&t[0]);
                let lifted = SdTangent::left_invariant(&unit, &a, r);
                alpha_value(&[unit.clone(), tau.clone()], &[lifted, SdTangent::zero(len)])
            })
            .collect())
    });
    let nodes = values.into_iter().collect::<Result<Vec<_>>>()?;
    eps.interior_distance(&GridForm::from_node_vecs(chart.grid().clone(), 1, nodes), 0)
}

/// Chart of `(τ₁₂, τ₂₃)` from a chart into `P^[3]`.
fn tau_pair_chart<const N: usize>(chart: &ProbeChart<Vec<BundlePoint<N>>>) -> ProbeChart<Vec<SdElem<N>>> {
    chart.map(|p: Vec<BundlePoint<N>>| {
        vec![
            difference_map(&p[0], &p[1]).expect("fibre-product charts share the base"),
            difference_map(&p[1], &p[2]).expect("fibre-product charts share the base"),
        ]
    })
}

/// `δε − τ*α` on a chart into `P^[3]`.
pub fn delta_epsilon_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let delta = fibre_delta(chart, 2, |c| epsilon_form(spec, c))?;
    let pulled = alpha_form(&tau_pair_chart(chart))?;
    delta.interior_distance(&pulled, 0)
}

/// `B` from sampled `(A, a, Φ)`:
/// `(1/4π)∫⟨A∧∂A⟩ − 2⟨F + ½fΦ, Φ⟩`.
pub fn curving_from<const N: usize>(grids: &ConnectionGrids<N>) -> Result<GridForm<f64>> {
    let phi = grids.higgs.as_ref().ok_or(Error::GridMismatch)?;
    let (big_f, f) = curvature_from(&grids.a_loop, &grids.a_real)?;
    let shifted = big_f.axpy(0.5, &f.wedge(phi, &ScalarMul)?)?;
    let integrand = grids
        .a_loop
        .wedge(&loop_derivative(&grids.a_loop), &Inner)?
        .axpy(-2.0, &shifted.wedge(phi, &Inner)?)?;
    Ok(integrand.loop_integrate().scale(1.0 / (4.0 * PI)))
}

pub fn curving_form<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<GridForm<f64>> {
    if chart.dim() < 2 {
        return Err(Error::ChartTooSmall {
            dim: chart.dim(),
            required: 2,
        });
    }
    curving_from(&sample_connection(spec, Some(higgs), chart)?)
}

/// `H = dB`.
pub fn three_curvature<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<GridForm<f64>> {
    if chart.dim() < 3 {
        return Err(Error::ChartTooSmall {
            dim: chart.dim(),
            required: 3,
        });
    }
    curving_form(spec, higgs, chart)?.exterior_derivative()
}

/// `δB − (τ*R − dε)` on a chart into `P^[2]`.
pub fn delta_curving_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let delta = fibre_delta(chart, 1, |c| curving_form(spec, higgs, &component(c, 0)))?;
    let tau = difference_chart(chart, 0, 1).map(|t| vec![t]);
    let rhs = r_form(&tau)?.sub(&epsilon_form(spec, chart)?.exterior_derivative()?)?;
    delta.interior_distance(&rhs, 2)
}

/// `H` through two points over the same base family: both must equal the
/// pullback of one base form.
pub fn descent_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let h1 = three_curvature(spec, higgs, &component(chart, 0))?;
    let h2 = three_curvature(spec, higgs, &component(chart, 1))?;
    h1.interior_distance(&h2, 2)
}

/// `dH` on a chart of dimension at least 4.
pub fn closed_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<f64> {
    if chart.dim() < 4 {
        return Err(Error::ChartTooSmall {
            dim: chart.dim(),
            required: 4,
        });
    }
    Ok(three_curvature(spec, higgs, chart)?
        .exterior_derivative()?
        .interior_max(3))
}

/// `d(τ*Z) − ad(τ)∂(τ⁻¹dτ)` on a chart into `P^[2]`, with `τ` the loop
/// component of the difference map.
pub fn dz_residual<const N: usize>(chart: &ProbeChart<Vec<BundlePoint<N>>>) -> Result<f64> {
    let tau = difference_chart(chart, 0, 1);
    let z = tau.sample_form(0, |t, _| t.loop_part().z_map())?;
    let rhs = tau.sample_form(1, |t, v| {
        t.loop_part().adjoint(&loop_maurer_cartan(t, v[0]).derivative())
    })?;
    z.exterior_derivative()?.interior_distance(&rhs, 2)
}
