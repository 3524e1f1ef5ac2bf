//! The simplicial coboundary on group powers and on fibre products.

use super::grid::{ProbeChart, StateSpace};
use super::gridform::GridForm;
use super::value::FormValue;
use crate::error::{Error, Result};

/// Multiplication used by the inner face maps of a group power.
pub trait GroupLike {
    fn group_mul(&self, other: &Self) -> Self;
}

impl<const N: usize> GroupLike for crate::loops::SdElem<N> {
    fn group_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// The `n+1` group faces `d₀ … d_n` of an `n`-tuple: `d₀` drops the first
/// factor, `d_i` multiplies factors `i` and `i+1`, `d_n` drops the last.
pub fn group_faces<S: GroupLike + Clone>(points: &[S]) -> Vec<Vec<S>> {
    (0..=points.len()).map(|i| group_face(points, i)).collect()
}

fn group_face<S: GroupLike + Clone>(points: &[S], i: usize) -> Vec<S> {
    let n = points.len();
    if i == 0 {
        points[1..].to_vec()
    } else if i == n {
        points[..n - 1].to_vec()
    } else {
        let mut face = points[..i - 1].to_vec();
        face.push(points[i - 1].group_mul(&points[i]));
        face.extend_from_slice(&points[i + 1..]);
        face
    }
}

/// The projections of an `n`-tuple omitting one point each.
pub fn fibre_faces<S: Clone>(points: &[S]) -> Vec<Vec<S>> {
    (0..points.len()).map(|i| fibre_face(points, i)).collect()
}

fn fibre_face<S: Clone>(points: &[S], i: usize) -> Vec<S> {
    let mut face = points.to_vec();
    face.remove(i);
    face
}

fn alternating_sum<S, V>(
    chart: &ProbeChart<Vec<S>>,
    faces: usize,
    face: impl Fn(&[S], usize) -> Vec<S> + Copy + Send + Sync + 'static,
    sample: impl Fn(&ProbeChart<Vec<S>>) -> Result<GridForm<V>>,
) -> Result<GridForm<V>>
where
    S: StateSpace,
    V: FormValue,
{
    let mut acc: Option<GridForm<V>> = None;
    for i in 0..faces {
        let term = sample(&chart.map(move |pts: Vec<S>| face(&pts, i)))?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc = Some(match acc {
            None => term.scale(sign),
            Some(a) => a.axpy(sign, &term)?,
        });
    }
    Ok(acc.expect("at least two faces"))
}

/// `δω = Σ_{i=0}^{p+1} (−1)^i d_i^*ω` for a form on `K^p`, pulled back along
/// a chart into `K^{p+1}`.
///
/// `sample` pulls `ω` back along a chart into `p`-tuples; it is applied to
/// the chart composed with each face map, so no interpolation is involved.
pub fn group_delta<S, V>(
    chart: &ProbeChart<Vec<S>>,
    p: usize,
    sample: impl Fn(&ProbeChart<Vec<S>>) -> Result<GridForm<V>>,
) -> Result<GridForm<V>>
where
    S: StateSpace + GroupLike,
    V: FormValue,
{
    if !(1..=2).contains(&p) {
        return Err(Error::UnsupportedSimplicialDegree(p));
    }
    alternating_sum(chart, p + 2, group_face::<S>, sample)
}

/// `δω = Σ_{i=1}^{p+1} (−1)^{i−1} π_i^*ω` for a form on the `p`-fold fibre
/// product, pulled back along a chart into `(p+1)`-tuples.
pub fn fibre_delta<S, V>(
    chart: &ProbeChart<Vec<S>>,
    p: usize,
    sample: impl Fn(&ProbeChart<Vec<S>>) -> Result<GridForm<V>>,
) -> Result<GridForm<V>>
where
    S: StateSpace,
    V: FormValue,
{
    if !(1..=2).contains(&p) {
        return Err(Error::UnsupportedSimplicialDegree(p));
    }
    alternating_sum(chart, p + 1, fibre_face::<S>, sample)
}
