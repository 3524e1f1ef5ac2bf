//! The string 3-form `−(1/4π²)∫⟨(F + fΦ)∧∇Φ⟩dθ`, its reduction for `a = 0`,
//! and the fiber-integration identity against the caloron `p₁`.
//!
//! Loop-valued forms on 4-dimensional charts do not fit in memory at useful
//! resolutions, so the ingredients `F + fΦ` and `∇Φ` are assembled node by
//! node from slabs of connection data along axis 0. The stencils are the
//! ones [`GridForm::exterior_derivative`] uses.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::bundle::{component, global_higgs, BundlePoint, ConnectionSpec, HiggsSpec};
use crate::caloron::pontryagin_form;
use crate::error::{Error, Result};
use crate::forms::{lookup_table, multi_indices, CheckResult, Grid, GridForm, Jet, ProbeChart, StateSpace};
use crate::gerbe::three_curvature;
use crate::lie::{AlgebraElement, GroupElement};
use crate::loops::LoopAlg;

/// Which formula assembles the ingredients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Formula {
    /// `F = dA + ½[A∧A] − a∧∂A`, `∇Φ = dΦ + [A,Φ] − ∂A − a∂Φ`, plus `fΦ`.
    Full,
    /// `F = dA + ½[A∧A]`, `∇Φ = dΦ + [A,Φ] − ∂A`.
    Reduced,
}

/// Connection data at one node.
struct NodeData<const N: usize> {
    a_loop: Vec<LoopAlg<N>>,
    a_loop_d: Vec<LoopAlg<N>>,
    a_real: Vec<f64>,
    phi: LoopAlg<N>,
    phi_d: LoopAlg<N>,
}

impl<const N: usize> NodeData<N> {
    fn from_jet(spec: &ConnectionSpec<N>, higgs: &HiggsSpec<N>, jet: &Jet<BundlePoint<N>>) -> Self {
        let frame = spec.frame(&jet.point);
        let (a_loop, a_real): (Vec<_>, Vec<_>) = jet.tangents.iter().map(|t| frame.eval(t)).unzip();
        let phi = global_higgs(higgs, &jet.point);
        NodeData {
            a_loop_d: a_loop.iter().map(LoopAlg::derivative).collect(),
            a_loop,
            a_real,
            phi_d: phi.derivative(),
            phi,
        }
    }
}

/// Slabs of node data along axis 0, keyed by slab index.
struct Slabs<D> {
    stride: usize,
    slabs: BTreeMap<usize, Vec<D>>,
}

impl<D> Slabs<D> {
    fn at(&self, node: usize) -> &D {
        &self.slabs[&(node / self.stride)][node % self.stride]
    }
}

/// Node-ordered `out(n, data)` where `out` may read `data` at any node of
/// the axis-0 stencil of `n`. At most three slabs are held at once.
fn stream_nodes<S, D, T>(
    chart: &ProbeChart<S>,
    data: impl Fn(&Jet<S>) -> D + Sync,
    out: impl Fn(usize, &Slabs<D>) -> T + Sync,
) -> Vec<T>
where
    S: StateSpace,
    D: Send + Sync,
    T: Send,
{
    let grid = chart.grid();
    let r = grid.resolution(0);
    let stride = grid.stride(0);
    let mut slabs = Slabs {
        stride,
        slabs: BTreeMap::new(),
    };
    let mut result = Vec::with_capacity(grid.nodes());
    for i in 0..r {
        let needed = match i {
            0 => 0..3,
            _ if i == r - 1 => r - 3..r,
            _ => i - 1..i + 2,
        };
        slabs.slabs.retain(|k, _| *k >= needed.start);
        for k in needed {
            slabs.slabs.entry(k).or_insert_with(|| {
                (k * stride..(k + 1) * stride)
                    .into_par_iter()
                    .map(|n| data(&chart.jet(n)))
                    .collect()
            });
        }
        let view = &slabs;
        result.par_extend((i * stride..(i + 1) * stride).into_par_iter().map(|n| out(n, view)));
    }
    result
}

/// `F + fΦ` on 2-indices and `∇Φ` on axes at one node, with `a`.
#[derive(Clone, Debug)]
pub struct StringIngredients<const N: usize> {
    pub twisted: Vec<LoopAlg<N>>,
    pub nabla: Vec<LoopAlg<N>>,
    pub a_real: Vec<f64>,
}

impl<const N: usize> StringIngredients<N> {
    fn assemble(grid: &Grid, node: usize, data: &Slabs<NodeData<N>>, formula: Formula) -> Self {
        let here = data.at(node);
        let partial_loop = |axis: usize, f: &dyn Fn(&NodeData<N>) -> &LoopAlg<N>| {
            let mut out = LoopAlg::zero(here.phi.len());
            for (n, w) in grid.stencil(node, axis).iter() {
                out.axpy(w, f(data.at(n)));
            }
            out
        };
        let partial_real = |axis: usize, j: usize| -> f64 {
            grid.stencil(node, axis)
                .iter()
                .map(|(n, w)| w * data.at(n).a_real[j])
                .sum()
        };
        let full = formula == Formula::Full;
        let twisted = multi_indices(grid.dim(), 2)
            .into_iter()
            .map(|k| {
                let mut axes = k.axes();
                let (i, j) = (axes.next().expect("2-index"), axes.next().expect("2-index"));
                let mut x = partial_loop(i, &|d| &d.a_loop[j]);
                x.axpy(-1.0, &partial_loop(j, &|d| &d.a_loop[i]));
                x.axpy(1.0, &here.a_loop[i].bracket(&here.a_loop[j]));
                if full {
                    x.axpy(-here.a_real[i], &here.a_loop_d[j]);
                    x.axpy(here.a_real[j], &here.a_loop_d[i]);
                    x.axpy(partial_real(i, j) - partial_real(j, i), &here.phi);
                }
                x
            })
            .collect();
        let nabla = (0..grid.dim())
            .map(|i| {
                let mut x = partial_loop(i, &|d| &d.phi);
                x.axpy(1.0, &here.a_loop[i].bracket(&here.phi));
                x.axpy(-1.0, &here.a_loop_d[i]);
                if full {
                    x.axpy(-here.a_real[i], &here.phi_d);
                }
                x
            })
            .collect();
        StringIngredients {
            twisted,
            nabla,
            a_real: if full {
                here.a_real.clone()
            } else {
                vec![0.0; grid.dim()]
            },
        }
    }

    /// `−(1/4π²)∫⟨X∧∇Φ⟩` on every 3-index, `X = F + fΦ`.
    fn string_components(&self, dim: usize) -> Vec<f64> {
        let pairs = lookup_table(dim, 2);
        multi_indices(dim, 3)
            .into_iter()
            .map(|k| {
                let s: f64 = k
                    .axes()
                    .enumerate()
                    .map(|(pos, c)| {
                        let sign = if (k.degree() - 1 - pos) % 2 == 0 { 1.0 } else { -1.0 };
                        sign * self.twisted[pairs[k.without(c).0 as usize]].pairing(&self.nabla[c])
                    })
                    .sum();
                -s / (4.0 * PI * PI)
            })
            .collect()
    }
}

fn require_dim(dim: usize, required: usize) -> Result<()> {
    if dim < required {
        Err(Error::ChartTooSmall { dim, required })
    } else {
        Ok(())
    }
}

fn ingredients<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
    formula: Formula,
) -> Vec<StringIngredients<N>> {
    let grid = chart.grid().clone();
    stream_nodes(
        chart,
        |jet| NodeData::from_jet(spec, higgs, jet),
        |n, data| StringIngredients::assemble(&grid, n, data, formula),
    )
}

fn form_on<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
    formula: Formula,
) -> Result<GridForm<f64>> {
    require_dim(chart.dim(), 3)?;
    let grid = chart.grid().clone();
    let dim = grid.dim();
    let nodes = stream_nodes(
        chart,
        |jet| NodeData::from_jet(spec, higgs, jet),
        |n, data| StringIngredients::assemble(&grid, n, data, formula).string_components(dim),
    );
    Ok(GridForm::from_node_vecs(grid, 3, nodes))
}

/// The string form pulled back along a chart into `P`.
pub fn string_form_on<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<BundlePoint<N>>,
) -> Result<GridForm<f64>> {
    form_on(spec, higgs, chart, Formula::Full)
}

/// The canonical section over a base chart.
pub fn section_of<const N: usize>(base: &ProbeChart<Vec<f64>>, len: usize) -> ProbeChart<BundlePoint<N>> {
    base.map(move |m| BundlePoint::section(m, len))
}

/// The string form on a base chart, through the canonical section.
pub fn string_form<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    base: &ProbeChart<Vec<f64>>,
) -> Result<GridForm<f64>> {
    string_form_on(spec, higgs, &section_of(base, spec.len()))
}

/// `−(1/4π²)∫⟨F∧∇Φ⟩` with `F = dA + ½[A∧A]` and `∇Φ = dΦ + [A,Φ] − ∂A`.
pub fn ms03_form<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    base: &ProbeChart<Vec<f64>>,
) -> Result<GridForm<f64>> {
    if !spec.real_part_is_zero() {
        return Err(Error::NonzeroRealConnection);
    }
    form_on(spec, higgs, &section_of(base, spec.len()), Formula::Reduced)
}

/// `S − dB/2π` along the section, away from the faces.
pub fn gerbe_binding_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    base: &ProbeChart<Vec<f64>>,
) -> Result<f64> {
    let section = section_of(base, spec.len());
    let s = string_form_on(spec, higgs, &section)?;
    let h = three_curvature(spec, higgs, &section)?.scale(1.0 / TAU);
    s.interior_distance(&h, 2)
}

/// The string form through two points over the same base family.
pub fn section_independence_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<Vec<BundlePoint<N>>>,
) -> Result<f64> {
    let s1 = string_form_on(spec, higgs, &component(chart, 0))?;
    let s2 = string_form_on(spec, higgs, &component(chart, 1))?;
    s1.interior_distance(&s2, 0)
}

/// `dS` on a base chart of dimension at least 4.
pub fn closedness_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    base: &ProbeChart<Vec<f64>>,
) -> Result<f64> {
    require_dim(base.dim(), 4)?;
    Ok(string_form(spec, higgs, base)?.exterior_derivative()?.interior_max(2))
}

/// `F̃` on `chart × [0,1]`, the last axis carrying `θ = 2πx` through the loop
/// sample angles, built from per-node ingredients over `chart`. Base-base
/// components are `ad(g⁻¹)(F + fΦ + ∇Φ∧a)(θ)`, base-`θ` ones `2π ad(g⁻¹)∇Φ(θ)`.
pub fn lifted_curvature<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<(BundlePoint<N>, GroupElement<N>)>,
) -> Result<(Vec<StringIngredients<N>>, GridForm<AlgebraElement<N>>)> {
    require_dim(chart.dim(), 3)?;
    let len = spec.len();
    let base_grid = chart.grid().clone();
    let dim = base_grid.dim();
    let mut res = base_grid.resolutions().to_vec();
    res.push(len + 1);
    let grid = Grid::new(res)?;
    let bundle = chart.map(|(p, _)| p);
    let parts = ingredients(spec, higgs, &bundle, Formula::Full);
    let g_inv = chart.sample_points(|(_, g)| g.inv());
    let base_pairs = lookup_table(dim, 2);
    let indices = multi_indices(dim + 1, 2);
    let nodes: Vec<Vec<AlgebraElement<N>>> = (0..base_grid.nodes())
        .into_par_iter()
        .flat_map_iter(|b| {
            let part = &parts[b];
            let g = &g_inv[b];
            let loops: Vec<LoopAlg<N>> = indices
                .iter()
                .map(|k| {
                    let mut axes = k.axes();
                    let (i, j) = (axes.next().expect("2-index"), axes.next().expect("2-index"));
                    if j == dim {
                        part.nabla[i].scale(TAU)
                    } else {
                        let mut x = part.twisted[base_pairs[k.0 as usize]].clone();
                        x.axpy(part.a_real[j], &part.nabla[i]);
                        x.axpy(-part.a_real[i], &part.nabla[j]);
                        x
                    }
                })
                .collect();
            (0..=len).map(move |t| loops.iter().map(|x| g.adjoint(&x.samples()[t % len])).collect())
        })
        .collect();
    Ok((parts, GridForm::from_node_vecs(grid, 2, nodes)))
}

/// Largest difference between `∫_{S¹} p₁` and the string form on a chart
/// into `P × G`.
pub fn fiber_integration_residual<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    chart: &ProbeChart<(BundlePoint<N>, GroupElement<N>)>,
) -> Result<f64> {
    let (parts, curvature) = lifted_curvature(spec, higgs, chart)?;
    let dim = chart.dim();
    let pushed = pontryagin_form(&curvature)?.fiber_integrate(dim)?;
    let direct = GridForm::from_node_vecs(
        chart.grid().clone(),
        3,
        parts.iter().map(|p| p.string_components(dim)).collect(),
    );
    pushed.interior_distance(&direct, 0)
}

/// The string form together with its two bindings.
#[derive(Clone, Debug)]
pub struct StringFormResult {
    pub form: GridForm<f64>,
    /// `S − dB/2π` over the refinement study.
    pub gerbe: CheckResult,
    /// `∫p₁ − S` at the finest resolution.
    pub fiber: CheckResult,
}

/// Runs both bindings on `base` regridded to each resolution, coarse to fine.
/// The fiber check pairs the section with the constant `g = 1`.
pub fn analyze<const N: usize>(
    spec: &ConnectionSpec<N>,
    higgs: &HiggsSpec<N>,
    base: &ProbeChart<Vec<f64>>,
    resolutions: &[usize],
    gerbe_tolerance: f64,
    fiber_tolerance: f64,
) -> Result<StringFormResult> {
    let finest = *resolutions.last().ok_or(Error::BadResolution(0))?;
    let study = resolutions
        .iter()
        .map(|&r| {
            let chart = base.regrid(Grid::uniform(base.dim(), r)?);
            Ok((chart.grid().max_spacing(), gerbe_binding_residual(spec, higgs, &chart)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let chart = base.regrid(Grid::uniform(base.dim(), finest)?);
    let len = spec.len();
    let product = chart.map(move |m| (BundlePoint::section(m, len), GroupElement::identity()));
    let fiber = fiber_integration_residual(spec, higgs, &product)?;
    Ok(StringFormResult {
        form: string_form(spec, higgs, &chart)?,
        gerbe: CheckResult::convergent("string form vs dB/2π", &study, gerbe_tolerance),
        fiber: CheckResult::exact("fiber-integrated p1 vs string form", fiber, fiber_tolerance),
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::caloron::{caloron_curvature, CaloronPoint};
    use crate::fields::{GroupFamily, LoopAlgField, PointFamily, ScalarField};
    use crate::forms::convergence_order;
    use crate::probes::{fibre_product_chart, ProbeShape};

    const LEN: usize = 64;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn base_chart<R: rand::Rng>(r: &mut R, chart_dim: usize, res: usize) -> ProbeChart<Vec<f64>> {
        let family = PointFamily::seeded(r, chart_dim, 4, 0.05);
        ProbeChart::new(Grid::uniform(chart_dim, res).unwrap(), move |x| family.eval(x))
    }

    fn seeded<R: rand::Rng>(r: &mut R, len: usize, with_real: bool) -> (ConnectionSpec<2>, HiggsSpec<2>) {
        let spec = ConnectionSpec::seeded(r, len, 4, 0.5, false, with_real);
        let higgs = HiggsSpec::seeded(r, len, 4, 0.5, false);
        (spec, higgs)
    }

    fn study(mut residual: impl FnMut(usize) -> f64, dim: usize, coarse: usize, fine: usize) -> (f64, f64) {
        let h = |res: usize| Grid::uniform(dim, res).unwrap().max_spacing();
        let (r1, r2) = (residual(coarse), residual(fine));
        (r2, convergence_order(h(coarse), r1, h(fine), r2))
    }

    fn torus_h() -> AlgebraElement<2> {
        AlgebraElement::<2>::torus_basis()[0]
    }

    /// `A_U = m₀ cos φ H dm₁`, `a_U = m₁ dm₂`, `Φ_U = m₂ cos φ H`.
    fn abelian() -> (ConnectionSpec<2>, HiggsSpec<2>) {
        let h = torus_h();
        let cos_h = LoopAlg::from_fn(LEN, |p| h.scale(p.cos()));
        let a_loop = vec![
            LoopAlgField::zero(LEN),
            LoopAlgField::separable(LEN, vec![(ScalarField::coordinate(0, 1.0), cos_h.clone())]),
            LoopAlgField::zero(LEN),
        ];
        let a_real = vec![ScalarField::Zero, ScalarField::Zero, ScalarField::coordinate(1, 1.0)];
        let spec = ConnectionSpec::new(a_loop, a_real).unwrap();
        let higgs = HiggsSpec {
            phi: LoopAlgField::separable(LEN, vec![(ScalarField::coordinate(2, 1.0), cos_h)]),
        };
        (spec, higgs)
    }

    fn unit_cube(res: usize) -> ProbeChart<Vec<f64>> {
        let family = PointFamily::axis_aligned(vec![0.3, -0.2, 0.4], 3, 1.0);
        ProbeChart::new(Grid::uniform(3, res).unwrap(), move |x| family.eval(x))
    }

    #[test]
    fn flat_with_constant_higgs_vanishes() {
        let spec = ConnectionSpec::<2>::flat(4, LEN);
        let higgs = HiggsSpec {
            phi: LoopAlgField::constant(LoopAlg::random(&mut rng(1), LEN, 0.5, false)),
        };
        let base = base_chart(&mut rng(2), 3, 9);
        assert!(string_form(&spec, &higgs, &base).unwrap().max_norm() < 1e-14);
        assert!(ms03_form(&spec, &higgs, &base).unwrap().max_norm() < 1e-14);
    }

    #[test]
    fn abelian_hand_value() {
        let (spec, higgs) = abelian();
        let s = string_form(&spec, &higgs, &unit_cube(9)).unwrap();
        let expected = -torus_h().inner(&torus_h()) / (4.0 * PI);
        let worst = s.values().iter().map(|v| (v - expected).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn ms03_rejects_real_part_and_matches_reduction() {
        let mut r = rng(3);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let base = base_chart(&mut r, 3, 9);
        assert_eq!(
            ms03_form(&spec, &higgs, &base).unwrap_err(),
            Error::NonzeroRealConnection
        );
        let reduced = spec.without_real_part();
        let full = string_form(&reduced, &higgs, &base).unwrap();
        let ms03 = ms03_form(&reduced, &higgs, &base).unwrap();
        assert!(full.interior_distance(&ms03, 0).unwrap() < 1e-12);
        assert!(full.max_norm() > 1e-6, "{}", full.max_norm());
    }

    #[test]
    fn matches_gerbe_three_curvature() {
        let mut r = rng(4);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let base = base_chart(&mut r, 3, 9);
        let (res, order) = study(
            |n| gerbe_binding_residual(&spec, &higgs, &base.regrid(Grid::uniform(3, n).unwrap())).unwrap(),
            3,
            9,
            17,
        );
        assert!(res < 1e-6 && order >= 1.8, "{res} {order}");
    }

    #[test]
    fn independent_of_section() {
        let mut r = rng(5);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let shape = ProbeShape {
            len: LEN,
            base_dim: 4,
            chart_dim: 3,
            extent: 0.05,
            amplitude: 0.6,
            torus: false,
        };
        let p2 = fibre_product_chart::<2, _>(&mut r, &shape, 2, 9).unwrap();
        let (res, order) = study(
            |n| section_independence_residual(&spec, &higgs, &p2.regrid(Grid::uniform(3, n).unwrap())).unwrap(),
            3,
            9,
            17,
        );
        assert!(res < 1e-6 && order >= 1.8, "{res} {order}");
    }

    #[test]
    fn closed_on_four_dimensional_charts() {
        let mut r = rng(6);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let base = base_chart(&mut r, 4, 9);
        let (res, order) = study(
            |n| closedness_residual(&spec, &higgs, &base.regrid(Grid::uniform(4, n).unwrap())).unwrap(),
            4,
            9,
            13,
        );
        assert!(res < 1e-6 && order >= 1.8, "{res} {order}");
    }

    #[test]
    fn fiber_integration_seeded() {
        let mut r = rng(7);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let base = base_chart(&mut r, 3, 9);
        let g = GroupFamily::<2>::seeded(&mut r, 3, 0.6, 0.05);
        let product = ProbeChart::new(base.grid().clone(), move |x| {
            (BundlePoint::section(base.point(x), LEN), g.eval(x))
        });
        let residual = fiber_integration_residual(&spec, &higgs, &product).unwrap();
        assert!(residual < 1e-8, "{residual}");
    }

    #[test]
    fn fiber_integration_abelian_hand_value() {
        let (spec, higgs) = abelian();
        let cube = unit_cube(9);
        let product = cube.map(|m| (BundlePoint::section(m, LEN), GroupElement::identity()));
        let (_, curvature) = lifted_curvature(&spec, &higgs, &product).unwrap();
        let pushed = pontryagin_form(&curvature).unwrap().fiber_integrate(3).unwrap();
        let expected = -torus_h().inner(&torus_h()) / (4.0 * PI);
        let worst = pushed.values().iter().map(|v| (v - expected).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
    }

    /// The structured lift against the generic caloron curvature on the
    /// product chart, with `θ` sampled on the loop grid.
    #[test]
    fn lift_matches_generic_caloron_curvature() {
        const SHORT: usize = 16;
        let mut r = rng(8);
        let (spec, higgs) = seeded(&mut r, SHORT, true);
        let base = PointFamily::seeded(&mut r, 3, 4, 0.05);
        let fiber = crate::fields::SdFamily::<2>::seeded(&mut r, SHORT, 3, 0.6, 0.05, false);
        let g = GroupFamily::<2>::seeded(&mut r, 3, 0.6, 0.05);
        let (b, f, gg) = (base.clone(), fiber.clone(), g.clone());
        let product = ProbeChart::new(Grid::uniform(3, 9).unwrap(), move |x| {
            (BundlePoint::new(b.eval(x), f.eval(x)), gg.eval(x))
        });
        let (_, lifted) = lifted_curvature(&spec, &higgs, &product).unwrap();
        let caloron = ProbeChart::new(Grid::new(vec![9, 9, 9, SHORT + 1]).unwrap(), move |x| {
            CaloronPoint::new(
                BundlePoint::new(base.eval(&x[..3]), fiber.eval(&x[..3])),
                g.eval(&x[..3]),
                TAU * x[3],
            )
        });
        let generic = caloron_curvature(&spec, &higgs, &caloron).unwrap();
        let gap = lifted.interior_distance(&generic, 0).unwrap();
        assert!(gap < 1e-10, "{gap}");
    }

    #[test]
    fn analyze_reports_both_bindings() {
        let mut r = rng(9);
        let (spec, higgs) = seeded(&mut r, LEN, true);
        let base = base_chart(&mut r, 3, 9);
        let out = analyze(&spec, &higgs, &base, &[9, 17], 1e-6, 1e-8).unwrap();
        assert!(out.gerbe.pass && out.fiber.pass, "{} {}", out.gerbe, out.fiber);
        assert_eq!(out.form.grid().resolution(0), 17);
    }
}
