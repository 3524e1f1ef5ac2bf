use std::sync::Arc;

use rayon::prelude::*;

use super::exterior::multi_indices;
use super::gridform::GridForm;
use super::value::FormValue;
use crate::error::{Error, Result};
use crate::lie::{GroupElement, Mat};
use crate::loops::{angle_difference, SdElem, SdTangent};

/// Tensor grid on `[0,1]^d`, axis 0 varying slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    res: Vec<usize>,
    strides: Vec<usize>,
}

impl Grid {
    /// Per-axis resolutions, each odd and at least 9.
    pub fn new(res: Vec<usize>) -> Result<Self> {
        if let Some(&r) = res.iter().find(|&&r| r < 9 || r % 2 == 0) {
            return Err(Error::BadResolution(r));
        }
        if res.is_empty() || res.len() > 6 {
            return Err(Error::ChartTooSmall {
                dim: res.len(),
                required: 1,
            });
        }
        let mut strides = vec![1; res.len()];
        for a in (0..res.len() - 1).rev() {
            strides[a] = strides[a + 1] * res[a + 1];
        }
        Ok(Grid { res, strides })
    }

    pub fn uniform(dim: usize, res: usize) -> Result<Self> {
        Self::new(vec![res; dim])
    }

    pub fn dim(&self) -> usize {
        self.res.len()
    }

    pub fn resolution(&self, axis: usize) -> usize {
        self.res[axis]
    }

    pub fn resolutions(&self) -> &[usize] {
        &self.res
    }

    pub fn nodes(&self) -> usize {
        self.res.iter().product()
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        1.0 / (self.res[axis] - 1) as f64
    }

    /// Coarsest spacing, the `h` of convergence studies.
    pub fn max_spacing(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).fold(0.0, f64::max)
    }

    pub fn index_along(&self, node: usize, axis: usize) -> usize {
        (node / self.strides[axis]) % self.res[axis]
    }

    pub fn coords(&self, node: usize) -> Vec<f64> {
        (0..self.dim())
            .map(|a| self.index_along(node, a) as f64 * self.spacing(a))
            .collect()
    }

    /// At least `margin` nodes away from every face.
    pub fn is_interior(&self, node: usize, margin: usize) -> bool {
        (0..self.dim()).all(|a| {
            let i = self.index_along(node, a);
            i >= margin && i + margin < self.res[a]
        })
    }

    /// Second-order first-derivative stencil along `axis` at `node`:
    /// central in the interior, one-sided three-point at the faces.
    pub fn stencil(&self, node: usize, axis: usize) -> Stencil {
        let s = self.strides[axis];
        let r = self.res[axis];
        let h = self.spacing(axis);
        let i = self.index_along(node, axis);
        if i == 0 {
            Stencil::new(&[(node, -1.5 / h), (node + s, 2.0 / h), (node + 2 * s, -0.5 / h)])
        } else if i == r - 1 {
            Stencil::new(&[(node, 1.5 / h), (node - s, -2.0 / h), (node - 2 * s, 0.5 / h)])
        } else {
            Stencil::new(&[(node + s, 0.5 / h), (node - s, -0.5 / h)])
        }
    }

    /// The grid with one axis removed.
    pub fn without_axis(&self, axis: usize) -> Result<Grid> {
        if axis >= self.dim() {
            return Err(Error::AxisOutOfRange { axis, dim: self.dim() });
        }
        let mut res = self.res.clone();
        res.remove(axis);
        Grid::new(res)
    }
}

/// Node offsets and weights of a difference stencil.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stencil {
    points: [(usize, f64); 3],
    len: usize,
}

impl Stencil {
    fn new(points: &[(usize, f64)]) -> Self {
        let mut out = Stencil {
            points: [(0, 0.0); 3],
            len: points.len(),
        };
        out.points[..points.len()].copy_from_slice(points);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.points[..self.len].iter().copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().map(|(n, _)| n)
    }
}

/// A space charts can map into: tangents are secants of nearby states.
pub trait StateSpace: Clone + Send + Sync + 'static {
    type Tangent: FormValue;
    /// `(plus − minus) / width` in ambient coordinates.
    fn secant(plus: &Self, minus: &Self, width: f64) -> Self::Tangent;
}

impl StateSpace for f64 {
    type Tangent = f64;
    fn secant(plus: &Self, minus: &Self, width: f64) -> f64 {
        (plus - minus) / width
    }
}

impl<const N: usize> StateSpace for GroupElement<N> {
    type Tangent = Mat<N>;
    fn secant(plus: &Self, minus: &Self, width: f64) -> Mat<N> {
        (*plus.matrix() - *minus.matrix()).scale(1.0 / width)
    }
}

impl<const N: usize> StateSpace for SdElem<N> {
    type Tangent = SdTangent<N>;
    fn secant(plus: &Self, minus: &Self, width: f64) -> SdTangent<N> {
        SdTangent {
            loop_direction: plus
                .loop_part()
                .samples()
                .iter()
                .zip(minus.loop_part().samples())
                .map(|(a, b)| (*a.matrix() - *b.matrix()).scale(1.0 / width))
                .collect(),
            angle_rate: angle_difference(plus.angle(), minus.angle()) / width,
        }
    }
}

impl<S: StateSpace> StateSpace for Vec<S> {
    type Tangent = Vec<S::Tangent>;
    fn secant(plus: &Self, minus: &Self, width: f64) -> Self::Tangent {
        plus.iter().zip(minus).map(|(a, b)| S::secant(a, b, width)).collect()
    }
}

impl<A: StateSpace, B: StateSpace> StateSpace for (A, B) {
    type Tangent = (A::Tangent, B::Tangent);
    fn secant(plus: &Self, minus: &Self, width: f64) -> Self::Tangent {
        (A::secant(&plus.0, &minus.0, width), B::secant(&plus.1, &minus.1, width))
    }
}

/// How chart tangents are differenced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TangentScheme {
    /// Central difference with step equal to the grid spacing, `O(h²)`.
    #[default]
    Central,
    /// Richardson combination of steps `h` and `h/2`, `O(h⁴)`.
    Richardson,
}

/// State at a node together with its partials along every axis.
#[derive(Clone, Debug)]
pub struct Jet<S: StateSpace> {
    pub coords: Vec<f64>,
    pub point: S,
    pub tangents: Vec<S::Tangent>,
}

impl<S: StateSpace> Jet<S> {
    /// Values of a `degree`-form on every increasing multi-index of tangents.
    pub fn components<V>(&self, degree: usize, f: impl Fn(&S, &[&S::Tangent]) -> V) -> Vec<V> {
        multi_indices(self.tangents.len(), degree)
            .into_iter()
            .map(|m| {
                let t: Vec<&S::Tangent> = m.axes().map(|a| &self.tangents[a]).collect();
                f(&self.point, &t)
            })
            .collect()
    }
}

type Evaluator<S> = Arc<dyn Fn(&[f64]) -> S + Send + Sync>;

/// Smooth family `[0,1]^d → S` sampled on a grid.
#[derive(Clone)]
pub struct ProbeChart<S> {
    grid: Grid,
    eval: Evaluator<S>,
    scheme: TangentScheme,
}

impl<S: StateSpace> ProbeChart<S> {
    pub fn new(grid: Grid, eval: impl Fn(&[f64]) -> S + Send + Sync + 'static) -> Self {
        ProbeChart {
            grid,
            eval: Arc::new(eval),
            scheme: TangentScheme::Central,
        }
    }

    pub fn with_scheme(mut self, scheme: TangentScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn scheme(&self) -> TangentScheme {
        self.scheme
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn point(&self, x: &[f64]) -> S {
        (self.eval)(x)
    }

    /// Same chart with the evaluator post-composed by `f`.
    pub fn map<T: StateSpace>(&self, f: impl Fn(S) -> T + Send + Sync + 'static) -> ProbeChart<T> {
        let eval = self.eval.clone();
        ProbeChart {
            grid: self.grid.clone(),
            eval: Arc::new(move |x| f(eval(x))),
            scheme: self.scheme,
        }
    }

    /// Same evaluator on a different grid.
    pub fn regrid(&self, grid: Grid) -> Self {
        ProbeChart {
            grid,
            eval: self.eval.clone(),
            scheme: self.scheme,
        }
    }

    fn secant_along(&self, x: &[f64], axis: usize, step: f64) -> S::Tangent {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[axis] += step;
        xm[axis] -= step;
        S::secant(&(self.eval)(&xp), &(self.eval)(&xm), 2.0 * step)
    }

    /// Partial of the state along `axis` at parameter `x`.
    pub fn tangent(&self, x: &[f64], axis: usize) -> S::Tangent {
        let h = self.grid.spacing(axis);
        match self.scheme {
            TangentScheme::Central => self.secant_along(x, axis, h),
            TangentScheme::Richardson => {
                let coarse = self.secant_along(x, axis, h);
                let mut fine = self.secant_along(x, axis, 0.5 * h);
                fine = fine.scaled(4.0 / 3.0);
                fine.axpy(-1.0 / 3.0, &coarse);
                fine
            }
        }
    }

    pub fn jet_at(&self, x: &[f64]) -> Jet<S> {
        Jet {
            coords: x.to_vec(),
            point: (self.eval)(x),
            tangents: (0..self.dim()).map(|a| self.tangent(x, a)).collect(),
        }
    }

    pub fn jet(&self, node: usize) -> Jet<S> {
        self.jet_at(&self.grid.coords(node))
    }

    /// Node-parallel map over jets; output order is node order.
    pub fn sample_nodes<T: Send>(&self, f: impl Fn(&Jet<S>) -> T + Sync) -> Vec<T> {
        (0..self.grid.nodes())
            .into_par_iter()
            .map(|n| f(&self.jet(n)))
            .collect()
    }

    /// Node-parallel map over states only (no tangents are computed).
    pub fn sample_points<T: Send>(&self, f: impl Fn(&S) -> T + Sync) -> Vec<T> {
        (0..self.grid.nodes())
            .into_par_iter()
            .map(|n| f(&(self.eval)(&self.grid.coords(n))))
            .collect()
    }

    /// `ω_I(x) = ω(point(x); ∂_{i₁}, …, ∂_{i_k})` on every node.
    pub fn sample_form<V: Send>(
        &self,
        degree: usize,
        f: impl Fn(&S, &[&S::Tangent]) -> V + Sync,
    ) -> Result<GridForm<V>> {
        if degree > self.dim() {
            return Err(Error::DegreeOverflow {
                degree,
                dim: self.dim(),
            });
        }
        let nodes = if degree == 0 {
            self.sample_points(|p| vec![f(p, &[])])
        } else {
            self.sample_nodes(|jet| jet.components(degree, &f))
        };
        Ok(GridForm::from_node_vecs(self.grid.clone(), degree, nodes))
    }
}
