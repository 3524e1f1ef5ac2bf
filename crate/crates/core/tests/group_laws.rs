//! Group laws of `LG⋊S¹` and the caloron join/split on sampled loops,
//! through the public API only.

use std::f64::consts::TAU;

use caloron_core::caloron::{join_equivariant, split_equivariant};
use caloron_core::loops::{LoopAlg, LoopG, SdElem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LEN: usize = 32;

fn element(rng: &mut ChaCha8Rng, step: usize) -> SdElem<2> {
    SdElem::new(LoopG::random(rng, LEN, 0.7, false), TAU * step as f64 / LEN as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semidirect_product_is_a_group(seed in any::<u64>(), steps in prop::array::uniform3(0usize..LEN)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = steps.map(|s| element(&mut rng, s));
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        prop_assert!(left.distance(&right) < 1e-12);
        prop_assert!(a.mul(&a.inv()).distance(&SdElem::identity(LEN)) < 1e-12);
        prop_assert!(a.inv().mul(&a).distance(&SdElem::identity(LEN)) < 1e-12);
    }

    #[test]
    fn rotation_is_an_action(seed in any::<u64>(), s in 0usize..LEN, t in 0usize..LEN) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = LoopG::<2>::random(&mut rng, LEN, 0.7, false);
        let h = LoopG::<2>::random(&mut rng, LEN, 0.7, false);
        let (s, t) = (TAU * s as f64 / LEN as f64, TAU * t as f64 / LEN as f64);
        prop_assert!(g.rotate(s).rotate(t).distance(&g.rotate(s + t)) < 1e-13);
        prop_assert!(g.mul(&h).rotate(s).distance(&g.rotate(s).mul(&h.rotate(s))) < 1e-13);
    }

    #[test]
    fn join_then_split_is_identity(seed in any::<u64>(), a in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a_loop = LoopAlg::<2>::random(&mut rng, LEN, 0.5, false);
        let phi = LoopAlg::<2>::random(&mut rng, LEN, 0.5, false);
        let (back, a_back, phi_back) = split_equivariant(&join_equivariant(&a_loop, a, &phi), a, &phi);
        prop_assert!(back.sub(&a_loop).max_norm() < 1e-14);
        prop_assert_eq!(a_back, a);
        prop_assert_eq!(phi_back, phi);
    }
}

#[test]
fn off_grid_rotation_of_band_limited_algebra_loops_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xi = LoopAlg::<3>::random(&mut rng, 64, 0.5, false);
    let (s, t) = (0.3137, -1.2);
    assert!(xi.rotate(s).rotate(t).sub(&xi.rotate(s + t)).max_norm() < 1e-12);
    let pointwise = xi.eval_at(0.77 - s);
    let rotated = xi.rotate(s).eval_at(0.77);
    let mut diff = rotated;
    diff.axpy(-1.0, &pointwise);
    assert!(diff.norm() < 1e-12);
}
