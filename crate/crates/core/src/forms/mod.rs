//! Numerical exterior calculus on probe charts.
//!
//! A [`ProbeChart`] is a smooth map from `[0,1]^d` into some state space,
//! sampled on a tensor grid. Forms are pulled back to the chart and stored as
//! [`GridForm`]s: one value per node and per strictly increasing multi-index.
//! Tangents come from central differences of the evaluator; the exterior
//! derivative differences the stored components.

mod check;
mod exterior;
mod grid;
mod gridform;
mod simplicial;
mod value;

pub use check::{convergence_order, CheckKind, CheckResult, FLAT_FLOOR, MIN_ORDER};
pub(crate) use exterior::lookup_table;
pub use exterior::{binomial, multi_indices, wedge_sign, MultiIndex};
pub use grid::{Grid, Jet, ProbeChart, StateSpace, Stencil, TangentScheme};
pub use gridform::GridForm;
pub use simplicial::{fibre_delta, fibre_faces, group_delta, group_faces, GroupLike};
pub use value::{Bracket, FnPairing, FormValue, Inner, Pairing, ScalarMul};
