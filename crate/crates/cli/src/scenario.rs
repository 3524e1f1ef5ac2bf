//! The named scenarios and the connection data they carry.

use std::fmt;

use caloron_core::bundle::{ConnectionSpec, HiggsSpec};
use caloron_core::fields::{LoopAlgField, ScalarField};
use caloron_core::lie::AlgebraElement;
use caloron_core::loops::LoopAlg;
use caloron_core::probes::ProbeShape;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

/// Base dimension of every identity scenario.
pub const BASE_DIM: usize = 4;
/// Chart extent in base and Lie-algebra coordinates.
pub const EXTENT: f64 = 0.05;
/// Loop amplitude of probe families.
pub const AMPLITUDE: f64 = 0.6;
/// Amplitude of seeded connection and Higgs data.
pub const SPEC_AMPLITUDE: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Scenario {
    /// Trivial connection, zero Higgs field, constant probe loops.
    Flat,
    /// Torus-valued data with a hand-computable string form.
    Abelian,
    /// Seeded generic data.
    SeededNonabelian,
    /// `S³ × S¹` with the bundle clutched by the unit quaternions.
    ClutchedS3xS1,
    /// The sphere of loops `θ ↦ exp(θv)` in `LSU(2)`.
    LoopGroupSphere,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Flat,
        Scenario::Abelian,
        Scenario::SeededNonabelian,
        Scenario::ClutchedS3xS1,
        Scenario::LoopGroupSphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Flat => "flat",
            Scenario::Abelian => "abelian",
            Scenario::SeededNonabelian => "seededNonabelian",
            Scenario::ClutchedS3xS1 => "clutchedS3xS1",
            Scenario::LoopGroupSphere => "loopGroupSphere",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Scenarios that evaluate a global integral instead of the identity checks.
    pub fn is_integral(self) -> bool {
        matches!(self, Scenario::ClutchedS3xS1 | Scenario::LoopGroupSphere)
    }

    /// Position in [`Scenario::ALL`], used to derive rng streams.
    pub fn index(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Connection data and probe shape of an identity scenario.
#[derive(Clone)]
pub struct Fixture<const N: usize> {
    pub scenario: Scenario,
    pub spec: ConnectionSpec<N>,
    pub higgs: HiggsSpec<N>,
    pub len: usize,
    pub amplitude: f64,
    pub torus: bool,
}

/// `H`, the first torus generator.
pub fn torus_generator<const N: usize>() -> AlgebraElement<N> {
    AlgebraElement::<N>::torus_basis()[0]
}

/// `A_U = m₀ cos φ H dm₁`, `a_U = m₁ dm₂`, `Φ_U = m₂ cos φ H`, whose
/// string form is the constant `−⟨H,H⟩/4π · dm₀∧dm₁∧dm₂`.
pub fn abelian_data<const N: usize>(len: usize) -> (ConnectionSpec<N>, HiggsSpec<N>) {
    let h = torus_generator::<N>();
    let cos_h = LoopAlg::from_fn(len, |p| h.scale(p.cos()));
    let mut a_loop = vec![LoopAlgField::zero(len); BASE_DIM];
    a_loop[1] = LoopAlgField::separable(len, vec![(ScalarField::coordinate(0, 1.0), cos_h.clone())]);
    let mut a_real = vec![ScalarField::Zero; BASE_DIM];
    a_real[2] = ScalarField::coordinate(1, 1.0);
    let spec = ConnectionSpec::new(a_loop, a_real).expect("consistent sample counts");
    let higgs = HiggsSpec {
        phi: LoopAlgField::separable(len, vec![(ScalarField::coordinate(2, 1.0), cos_h)]),
    };
    (spec, higgs)
}

impl<const N: usize> Fixture<N> {
    /// Data of an identity scenario; `None` for integral scenarios.
    pub fn new(scenario: Scenario, len: usize, seed: u64) -> Option<Self> {
        let (spec, higgs, amplitude, torus) = match scenario {
            Scenario::Flat => (ConnectionSpec::flat(BASE_DIM, len), HiggsSpec::zero(len), 0.0, false),
            Scenario::Abelian => {
                let (spec, higgs) = abelian_data(len);
                (spec, higgs, AMPLITUDE, true)
            }
            Scenario::SeededNonabelian => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(scenario.index() * 1000);
                let spec = ConnectionSpec::seeded(&mut rng, len, BASE_DIM, SPEC_AMPLITUDE, false, true);
                let higgs = HiggsSpec::seeded(&mut rng, len, BASE_DIM, SPEC_AMPLITUDE, false);
                (spec, higgs, AMPLITUDE, false)
            }
            Scenario::ClutchedS3xS1 | Scenario::LoopGroupSphere => return None,
        };
        Some(Fixture {
            scenario,
            spec,
            higgs,
            len,
            amplitude,
            torus,
        })
    }

    /// Probe shape for charts of dimension `chart_dim`.
    pub fn shape(&self, chart_dim: usize) -> ProbeShape {
        ProbeShape {
            len: self.len,
            base_dim: BASE_DIM,
            chart_dim,
            extent: EXTENT,
            amplitude: self.amplitude,
            torus: self.torus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(Scenario::from_name(s.name()), Some(s));
        }
    }

    #[test]
    fn integral_scenarios_have_no_fixture() {
        assert!(Fixture::<2>::new(Scenario::ClutchedS3xS1, 16, 1).is_none());
        assert!(Fixture::<2>::new(Scenario::Flat, 16, 1).is_some());
    }
}
