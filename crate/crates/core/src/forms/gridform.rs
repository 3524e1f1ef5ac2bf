use rayon::prelude::*;

use super::exterior::{binomial, lookup_table, multi_indices, wedge_sign, MultiIndex};
use super::grid::Grid;
use super::value::{FormValue, Pairing};
use crate::error::{Error, Result};
use crate::loops::RealLoop;

/// A `k`-form pulled back to a grid: `data[node · C(d,k) + slot]`, with slots
/// in lexicographic multi-index order.
#[derive(Clone, Debug, PartialEq)]
pub struct GridForm<V> {
    grid: Grid,
    degree: usize,
    data: Vec<V>,
    stencil_order: u8,
}

impl<V> GridForm<V> {
    pub fn from_node_vecs(grid: Grid, degree: usize, nodes: Vec<Vec<V>>) -> Self {
        let ncomp = binomial(grid.dim(), degree);
        debug_assert!(nodes.iter().all(|n| n.len() == ncomp));
        GridForm {
            grid,
            degree,
            data: nodes.into_iter().flatten().collect(),
            stencil_order: 0,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 0 for sampled data, 2 once a difference stencil has been applied.
    pub fn stencil_order(&self) -> u8 {
        self.stencil_order
    }

    pub fn component_count(&self) -> usize {
        binomial(self.grid.dim(), self.degree)
    }

    pub fn indices(&self) -> Vec<MultiIndex> {
        multi_indices(self.grid.dim(), self.degree)
    }

    pub fn node(&self, node: usize) -> &[V] {
        let c = self.component_count();
        &self.data[node * c..(node + 1) * c]
    }

    pub fn get(&self, node: usize, index: MultiIndex) -> Option<&V> {
        let slot = self.indices().iter().position(|&m| m == index)?;
        Some(&self.node(node)[slot])
    }

    pub fn values(&self) -> &[V] {
        &self.data
    }

    pub fn map<W: Send>(&self, f: impl Fn(&V) -> W + Sync) -> GridForm<W>
    where
        V: Sync,
    {
        GridForm {
            grid: self.grid.clone(),
            degree: self.degree,
            data: self.data.par_iter().map(&f).collect(),
            stencil_order: self.stencil_order,
        }
    }

    pub fn zip_map<W: Sync, X: Send>(&self, other: &GridForm<W>, f: impl Fn(&V, &W) -> X + Sync) -> Result<GridForm<X>>
    where
        V: Sync,
    {
        if self.grid != other.grid || self.degree != other.degree {
            return Err(Error::GridMismatch);
        }
        Ok(GridForm {
            grid: self.grid.clone(),
            degree: self.degree,
            data: self.data.par_iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
            stencil_order: self.stencil_order.max(other.stencil_order),
        })
    }
}

impl<V: FormValue> GridForm<V> {
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| {
            let mut s = a.clone();
            s.axpy(1.0, b);
            s
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a.difference(b))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v.scaled(s))
    }

    /// `self + s · other`
    pub fn axpy(&self, s: f64, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| {
            let mut r = a.clone();
            r.axpy(s, b);
            r
        })
    }

    /// Max component norm over nodes at least `margin` away from the boundary.
    pub fn interior_max(&self, margin: usize) -> f64 {
        let c = self.component_count();
        (0..self.grid.nodes())
            .into_par_iter()
            .filter(|&n| self.grid.is_interior(n, margin))
            .map(|n| {
                self.data[n * c..(n + 1) * c]
                    .iter()
                    .map(FormValue::norm)
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Max component norm over all nodes.
    pub fn max_norm(&self) -> f64 {
        self.interior_max(0)
    }

    /// Interior max norm of `self − other`.
    pub fn interior_distance(&self, other: &Self, margin: usize) -> Result<f64> {
        Ok(self.sub(other)?.interior_max(margin))
    }

    /// Second-order partial of component `slot` along `axis` at `node`:
    /// central in the interior, one-sided three-point at the faces.
    pub fn partial(&self, node: usize, axis: usize, slot: usize) -> V {
        let c = self.component_count();
        let at = |n: usize| &self.data[n * c + slot];
        let mut out = at(node).zero_like();
        for (n, w) in self.grid.stencil(node, axis).iter() {
            out.axpy(w, at(n));
        }
        out
    }

    /// Exterior derivative at one node:
    /// `(dω)_K = Σ_{a∈K} (−1)^{pos(a)} ∂_a ω_{K∖a}`.
    pub fn derivative_at(&self, node: usize) -> Vec<V> {
        let dim = self.grid.dim();
        let lookup = lookup_table(dim, self.degree);
        multi_indices(dim, self.degree + 1)
            .into_iter()
            .map(|k| {
                let mut acc: Option<V> = None;
                for (pos, a) in k.axes().enumerate() {
                    let slot = lookup[k.without(a).0 as usize];
                    let term = self.partial(node, a, slot);
                    let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                    match acc.as_mut() {
                        None => acc = Some(term.scaled(sign)),
                        Some(v) => v.axpy(sign, &term),
                    }
                }
                acc.expect("nonempty multi-index")
            })
            .collect()
    }

    /// Grid exterior derivative.
    pub fn exterior_derivative(&self) -> Result<Self> {
        let dim = self.grid.dim();
        if self.degree >= dim {
            return Err(Error::DegreeOverflow {
                degree: self.degree + 1,
                dim,
            });
        }
        let nodes: Vec<Vec<V>> = (0..self.grid.nodes())
            .into_par_iter()
            .map(|n| self.derivative_at(n))
            .collect();
        let mut out = GridForm::from_node_vecs(self.grid.clone(), self.degree + 1, nodes);
        out.stencil_order = 2;
        Ok(out)
    }

    /// Bilinear wedge with shuffle signs and a samplewise pairing.
    pub fn wedge<W, P>(&self, other: &GridForm<W>, pairing: &P) -> Result<GridForm<P::Output>>
    where
        W: FormValue,
        P: Pairing<V, W>,
    {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let dim = self.grid.dim();
        let (p, q) = (self.degree, other.degree);
        if p + q > dim {
            return Err(Error::DegreeOverflow { degree: p + q, dim });
        }
        let lp = lookup_table(dim, p);
        let lq = lookup_table(dim, q);
        let terms: Vec<(MultiIndex, Vec<(usize, usize, f64)>)> = multi_indices(dim, p + q)
            .into_iter()
            .map(|k| {
                let split = multi_indices(dim, p)
                    .into_iter()
                    .filter(|i| i.0 & !k.0 == 0)
                    .map(|i| {
                        let j = MultiIndex(k.0 & !i.0);
                        (lp[i.0 as usize], lq[j.0 as usize], wedge_sign(i, j))
                    })
                    .collect();
                (k, split)
            })
            .collect();
        let nodes: Vec<Vec<P::Output>> = (0..self.grid.nodes())
            .into_par_iter()
            .map(|n| {
                let (a, b) = (self.node(n), other.node(n));
                terms
                    .iter()
                    .map(|(_, split)| {
                        let mut acc: Option<P::Output> = None;
                        for &(i, j, sign) in split {
                            let v = pairing.pair(&a[i], &b[j]);
                            match acc.as_mut() {
                                None => acc = Some(v.scaled(sign)),
                                Some(s) => s.axpy(sign, &v),
                            }
                        }
                        acc.expect("nonempty split")
                    })
                    .collect()
            })
            .collect();
        let mut out = GridForm::from_node_vecs(self.grid.clone(), p + q, nodes);
        out.stencil_order = self.stencil_order.max(other.stencil_order);
        Ok(out)
    }

    /// Integrates the components containing `axis` over that axis with the
    /// periodic trapezoid rule, using the convention `ω' ∧ dx_axis ↦ ∫ ω'`.
    pub fn fiber_integrate(&self, axis: usize) -> Result<Self> {
        let dim = self.grid.dim();
        if axis >= dim {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        if self.degree == 0 {
            return Err(Error::DegreeOverflow { degree: 0, dim });
        }
        let reduced = self.grid.without_axis(axis)?;
        let lookup = lookup_table(dim, self.degree);
        let lift = |m: MultiIndex| -> MultiIndex {
            MultiIndex(
                m.axes()
                    .map(|a| if a >= axis { a + 1 } else { a })
                    .fold(1u8 << axis, |acc, a| acc | (1 << a)),
            )
        };
        let slots: Vec<(usize, f64)> = multi_indices(dim - 1, self.degree - 1)
            .into_iter()
            .map(|m| {
                let k = lift(m);
                let after = k.axes().filter(|&a| a > axis).count();
                (lookup[k.0 as usize], if after % 2 == 0 { 1.0 } else { -1.0 })
            })
            .collect();
        let r = self.grid.resolution(axis);
        let h = self.grid.spacing(axis);
        let s = self.grid.stride(axis);
        let nodes: Vec<Vec<V>> = (0..reduced.nodes())
            .into_par_iter()
            .map(|rn| {
                // Re-insert index 0 along `axis` to locate the fiber's first node.
                let mut base = 0;
                let mut ra = 0;
                for a in 0..dim {
                    if a != axis {
                        base += reduced.index_along(rn, ra) * self.grid.stride(a);
                        ra += 1;
                    }
                }
                slots
                    .iter()
                    .map(|&(slot, sign)| {
                        let c = self.component_count();
                        let mut acc = self.data[base * c + slot].zero_like();
                        for j in 0..r - 1 {
                            acc.axpy(sign * h, &self.data[(base + j * s) * c + slot]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(GridForm::from_node_vecs(reduced, self.degree - 1, nodes))
    }
}

impl GridForm<RealLoop> {
    /// `∫_{S¹} · dθ` applied to every component.
    pub fn loop_integrate(&self) -> GridForm<f64> {
        self.map(RealLoop::integrate)
    }
}

impl GridForm<f64> {
    /// Tensor-product Simpson quadrature of the top component over `[0,1]^d`.
    pub fn integrate_top(&self) -> Result<f64> {
        let dim = self.grid.dim();
        if self.degree != dim {
            return Err(Error::NotTopDegree {
                degree: self.degree,
                dim,
            });
        }
        let weights: Vec<Vec<f64>> = (0..dim)
            .map(|a| {
                let r = self.grid.resolution(a);
                let h = self.grid.spacing(a);
                (0..r)
                    .map(|i| {
                        let w = if i == 0 || i == r - 1 {
                            1.0
                        } else if i % 2 == 1 {
                            4.0
                        } else {
                            2.0
                        };
                        w * h / 3.0
                    })
                    .collect()
            })
            .collect();
        let sum: Vec<f64> = (0..self.grid.nodes())
            .into_par_iter()
            .map(|n| {
                let w: f64 = (0..dim).map(|a| weights[a][self.grid.index_along(n, a)]).product();
                w * self.data[n]
            })
            .collect();
        Ok(sum.iter().sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{ProbeChart, ScalarMul};
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn coords_chart(dim: usize, res: usize) -> ProbeChart<Vec<f64>> {
        ProbeChart::new(Grid::uniform(dim, res).unwrap(), |x: &[f64]| x.to_vec())
    }

    fn scalar(chart: &ProbeChart<Vec<f64>>, f: impl Fn(&[f64]) -> f64 + Sync) -> GridForm<f64> {
        chart.sample_form(0, |p, _| f(p)).unwrap()
    }

    fn dx(chart: &ProbeChart<Vec<f64>>, axis: usize) -> GridForm<f64> {
        chart.sample_form(1, |_, t| t[0][axis]).unwrap()
    }

    #[test]
    fn derivative_of_constant_and_linear() {
        let c = coords_chart(3, 9);
        let k = scalar(&c, |_| 3.5);
        assert_eq!(k.exterior_derivative().unwrap().max_norm(), 0.0);
        let x1 = scalar(&c, |x| x[0]);
        let d = x1.exterior_derivative().unwrap();
        assert_eq!(d.degree(), 1);
        for n in 0..c.grid().nodes() {
            let v = d.node(n);
            assert!((v[0] - 1.0).abs() < 1e-10 && v[1].abs() < 1e-10 && v[2].abs() < 1e-10);
        }
        assert_eq!(d.stencil_order(), 2);
        assert!(dx(&c, 0).sub(&d).unwrap().max_norm() < 1e-10);
    }

    fn smooth(x: &[f64]) -> f64 {
        (1.3 * x[0] + 0.4).sin() * (0.7 * x[1] - 0.2).cos() + x[0] * x[1] * x[1]
    }

    #[test]
    fn dd_vanishes_and_d_converges_at_second_order() {
        let mut errs = Vec::new();
        for res in [17, 33] {
            let c = coords_chart(2, res);
            let f = scalar(&c, smooth);
            let df = f.exterior_derivative().unwrap();
            assert!(df.exterior_derivative().unwrap().interior_max(2) < 1e-10);
            let exact = c
                .sample_form(1, |x, t| {
                    let g0 = 1.3 * (1.3 * x[0] + 0.4).cos() * (0.7 * x[1] - 0.2).cos() + x[1] * x[1];
                    let g1 = -0.7 * (1.3 * x[0] + 0.4).sin() * (0.7 * x[1] - 0.2).sin() + 2.0 * x[0] * x[1];
                    g0 * t[0][0] + g1 * t[0][1]
                })
                .unwrap();
            errs.push(df.interior_distance(&exact, 2).unwrap());
        }
        let order = (errs[0] / errs[1]).log2();
        assert!((1.8..=2.2).contains(&order), "{errs:?} {order}");
    }

    #[test]
    fn wedge_basics() {
        let c = coords_chart(3, 9);
        let w = dx(&c, 0).wedge(&dx(&c, 1), &ScalarMul).unwrap();
        assert_eq!(w.degree(), 2);
        for n in 0..c.grid().nodes() {
            assert_eq!(w.node(n), &[1.0, 0.0, 0.0]);
        }
        let top = w.wedge(&dx(&c, 2), &ScalarMul).unwrap();
        assert!((top.integrate_top().unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(
            w.wedge(&w, &ScalarMul).unwrap_err(),
            Error::DegreeOverflow { degree: 4, dim: 3 }
        );
    }

    #[test]
    fn integrate_top_examples() {
        let c = coords_chart(2, 33);
        let s = c
            .sample_form(2, |x, t| {
                let v = (PI * x[0]).sin().powi(2) * (PI * x[1]).sin().powi(2);
                v * (t[0][0] * t[1][1] - t[0][1] * t[1][0])
            })
            .unwrap();
        assert!((s.integrate_top().unwrap() - 0.25).abs() < 1e-6);
        // Additivity: integral over [0,1/2]×[0,1] plus [1/2,1]×[0,1].
        let f = |x: &[f64]| (x[0] * 2.0).exp() * (1.0 + x[1] * x[1]);
        let area = |lo: f64| {
            let sub = ProbeChart::new(Grid::uniform(2, 33).unwrap(), move |u: &[f64]| {
                vec![lo + 0.5 * u[0], u[1]]
            });
            sub.sample_form(2, |x, t| f(x) * (t[0][0] * t[1][1] - t[0][1] * t[1][0]))
                .unwrap()
                .integrate_top()
                .unwrap()
        };
        let whole = ProbeChart::new(Grid::uniform(2, 65).unwrap(), |u: &[f64]| u.to_vec())
            .sample_form(2, |x, t| f(x) * (t[0][0] * t[1][1] - t[0][1] * t[1][0]))
            .unwrap()
            .integrate_top()
            .unwrap();
        assert!((area(0.0) + area(0.5) - whole).abs() < 1e-8);
    }

    #[test]
    fn loop_integrate_examples() {
        let c = coords_chart(1, 9);
        let mk = |f: fn(f64) -> f64| {
            c.sample_form(0, move |_, _| {
                RealLoop((0..64).map(|j| f(TAU * j as f64 / 64.0)).collect())
            })
            .unwrap()
            .loop_integrate()
        };
        assert!((mk(|_| 1.5).node(0)[0] - TAU * 1.5).abs() < 1e-12);
        assert!(mk(f64::cos).node(3)[0].abs() < 1e-12);
        assert!((mk(|t| t.cos().powi(2)).node(5)[0] - PI).abs() < 1e-12);
    }

    #[test]
    fn fiber_integration_examples() {
        // Axis 1 parametrizes θ = 2πx₁.
        let c = ProbeChart::new(Grid::new(vec![9, 65]).unwrap(), |x: &[f64]| vec![x[0], TAU * x[1]]);
        let f_dtheta = c.sample_form(1, |x, t| (1.0 + x[0]) * t[0][1]).unwrap();
        let r = f_dtheta.fiber_integrate(1).unwrap();
        for n in 0..r.grid().nodes() {
            let x0 = r.grid().coords(n)[0];
            assert!((r.node(n)[0] - TAU * (1.0 + x0)).abs() < 1e-9);
        }
        let no_fiber = c.sample_form(1, |_, t| t[0][0]).unwrap();
        assert!(no_fiber.fiber_integrate(1).unwrap().max_norm() < 1e-15);
        let s2 = c
            .sample_form(2, |x, t| x[1].sin().powi(2) * (t[0][0] * t[1][1] - t[0][1] * t[1][0]))
            .unwrap();
        let r = s2.fiber_integrate(1).unwrap();
        assert!(r.node(4).iter().all(|v| (v - PI).abs() < 1e-9));
        assert!(matches!(s2.fiber_integrate(2), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn leibniz_and_commuting_with_pullback() {
        let mut errs = Vec::new();
        for res in [17, 33] {
            let c = coords_chart(3, res);
            let w = scalar(&c, smooth).wedge(&dx(&c, 2), &ScalarMul).unwrap();
            let eta = c
                .sample_form(1, |x, t| (x[2] * 0.8).sin() * t[0][0] + x[0] * x[1] * t[0][1])
                .unwrap();
            let lhs = w.wedge(&eta, &ScalarMul).unwrap().exterior_derivative().unwrap();
            let rhs = w
                .exterior_derivative()
                .unwrap()
                .wedge(&eta, &ScalarMul)
                .unwrap()
                .sub(&w.wedge(&eta.exterior_derivative().unwrap(), &ScalarMul).unwrap())
                .unwrap();
            errs.push(lhs.interior_distance(&rhs, 2).unwrap());
        }
        let order = (errs[0] / errs[1]).log2();
        assert!(errs[1] < 1e-3 && order > 1.8, "{errs:?}");
    }

    fn form_strategy(dim: usize, deg: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-2.0f64..2.0, binomial(dim, deg))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn graded_commutativity(a in form_strategy(4, 1), b in form_strategy(4, 2), c in form_strategy(4, 2)) {
            let grid = Grid::uniform(4, 9).unwrap();
            let constant = |v: Vec<f64>, deg| GridForm::from_node_vecs(grid.clone(), deg, vec![v; grid.nodes()]);
            let (w1, w2, w2b) = (constant(a, 1), constant(b, 2), constant(c, 2));
            let lhs = w1.wedge(&w2, &ScalarMul).unwrap();
            let rhs = w2.wedge(&w1, &ScalarMul).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().max_norm() < 1e-14);
            let lhs = w2.wedge(&w2b, &ScalarMul).unwrap();
            let rhs = w2b.wedge(&w2, &ScalarMul).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().max_norm() < 1e-14);
            prop_assert!(w1.wedge(&w1, &ScalarMul).unwrap().max_norm() == 0.0);
        }
    }
}
