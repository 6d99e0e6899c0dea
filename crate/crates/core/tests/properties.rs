mod common;

use std::collections::BTreeSet;

use common::*;
use epikit_core::affine::{facet_barycentres, kac_to_point, point_to_kac, KacCoords, Lattice};
use epikit_core::depth::min_depth;
use epikit_core::fm::nontrivial_ray;
use epikit_core::intertwine::intertwiners;
use epikit_core::stability::{is_cone_trivial, positive_affine_relation, SupportProfile};
use epikit_core::{compute_sx, AffineRoot, Root};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn delta_span_exhaustive() {
    for name in ["A3", "B4", "C3", "D4", "F4", "G2"] {
        delta_span(&sys(name)).unwrap();
    }
}

#[test]
fn delta_gradients_span_up_to_rank_6() {
    for s in systems_up_to(6) {
        delta_span(&s).unwrap();
    }
}

#[test]
fn generic_primes_give_delta() {
    for s in systems_up_to(4) {
        generic_abelianization(&s, 5).unwrap();
        generic_abelianization(&s, 7).unwrap();
    }
    for name in ["A3", "D4", "D5", "E6"] {
        generic_abelianization(&sys(name), 2).unwrap();
    }
}

#[test]
fn chevalley_jacobi() {
    for s in systems_up_to(4) {
        jacobi(&s).unwrap();
    }
}

#[test]
fn chevalley_magnitudes() {
    for s in systems_up_to(6) {
        constant_magnitudes(&s).unwrap();
    }
}

#[test]
fn deciders_agree_small() {
    let (checked, trivial) = fm_lp_agreement(7, 100, 4, 4).unwrap();
    assert_eq!(checked, 400);
    assert!(trivial > 0 && trivial < checked);
}

#[test]
fn equivariance_small() {
    weyl_equivariance(11, 2000).unwrap();
}

fn g2_p3_profiles(extra_upper: &[bool; 6]) -> Vec<SupportProfile> {
    let (a, b, a1, c, d, e) =
        (ar(&[-3, -2], 1), ar(&[-3, -1], 1), ar(&[1, 0], 0), ar(&[1, 1], 0), ar(&[3, 1], 0), ar(&[3, 2], 0));
    let all = [a.clone(), b.clone(), a1.clone(), c.clone(), d.clone(), e.clone()];
    let quads = [
        [&a, &a1, &b, &e],
        [&a, &a1, &c, &e],
        [&a, &d, &b, &c],
        [&a, &d, &e, &c],
        [&a1, &d, &b, &c],
        [&a1, &d, &b, &e],
    ];
    quads
        .iter()
        .map(|qd| {
            let lower: Vec<AffineRoot> = qd.iter().map(|r| (*r).clone()).collect();
            let mut upper = lower.clone();
            upper.extend(all.iter().zip(extra_upper).filter(|(_, &k)| k).map(|(r, _)| r.clone()));
            SupportProfile::new(lower, upper).unwrap()
        })
        .collect()
}

fn root_set(max_rank: usize) -> impl Strategy<Value = (Vec<Root>, Vec<Root>)> {
    (1..=max_rank, any::<u64>()).prop_map(|(rank, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_support(&mut rng, rank), random_support(&mut rng, rank))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bigger_support_stays_trivial((s, t) in root_set(5)) {
        let n = s[0].rank();
        prop_assume!(t[0].rank() == n);
        if is_cone_trivial(&s).unwrap().trivial {
            let mut u = s.clone();
            u.extend(t);
            prop_assert!(is_cone_trivial(&u).unwrap().trivial);
        }
    }

    #[test]
    fn rays_are_integral_and_in_cone((s, _) in root_set(6)) {
        let rows: Vec<Vec<i64>> = s.iter().map(|r| r.coords.clone()).collect();
        if let Some(ray) = nontrivial_ray(&rows) {
            prop_assert!(ray.iter().any(|c| !c.is_zero()));
            for r in &rows {
                let v: num_bigint::BigInt = r.iter().zip(&ray).map(|(a, b)| num_bigint::BigInt::from(*a) * b).sum();
                prop_assert!(!v.is_positive());
            }
        }
    }

    #[test]
    fn affine_relations_balance(seed in any::<u64>(), rank in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots: Vec<AffineRoot> = random_support(&mut rng, rank)
            .into_iter()
            .enumerate()
            .map(|(i, g)| AffineRoot::new(g, i as i64 % 3 - 1))
            .collect();
        if let Some(rel) = positive_affine_relation(&roots) {
            let mut sum = vec![epikit_core::Q::zero(); rank];
            for (r, a) in &rel {
                prop_assert!(a.is_positive());
                for (s, &c) in sum.iter_mut().zip(&r.gradient.coords) {
                    *s += a * epikit_core::Q::from_integer(c.into());
                }
            }
            prop_assert!(sum.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kac_round_trip(b in proptest::collection::vec(0u64..5, 3)) {
        prop_assume!(b.iter().any(|&v| v > 0));
        let g2 = sys("G2");
        let k = KacCoords::new(b).unwrap();
        let x = kac_to_point(&g2, &k).unwrap();
        prop_assert_eq!(point_to_kac(&g2, &x).unwrap(), k);
    }

    #[test]
    fn depth_is_weyl_invariant(seed in any::<u64>()) {
        let g2 = sys("G2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_affine_weyl(&mut rng, &g2);
        let family = g2_p3_profiles(&[true; 6]);
        let moved: Vec<SupportProfile> = family
            .iter()
            .map(|p| SupportProfile::new(
                p.lower.iter().map(|r| w.act_root(r)),
                p.upper.iter().map(|r| w.act_root(r)),
            ).unwrap())
            .collect();
        let d0 = min_depth(&g2, &family).unwrap();
        let d1 = min_depth(&g2, &moved).unwrap();
        prop_assert_eq!(d0.depth, d1.depth);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn filters_monotone_in_upper(mask in proptest::array::uniform6(any::<bool>())) {
        let g2 = sys("G2");
        let x = kac_to_point(&g2, &KacCoords::new(vec![1, 1, 0]).unwrap()).unwrap();
        let small = intertwiners(&g2, &x, &g2_p3_profiles(&mask), Lattice::SimplyConnected).unwrap();
        let big = intertwiners(&g2, &x, &g2_p3_profiles(&[true; 6]), Lattice::SimplyConnected).unwrap();
        prop_assert!(small.iter().all(|w| big.contains(w)));
    }
}

#[test]
fn sx_contains_delta_for_small_primes() {
    for name in ["B3", "C3", "F4", "G2"] {
        let s = sys(name);
        for k in facet_barycentres(&s) {
            let x = kac_to_point(&s, &k).unwrap();
            let Ok(v) = compute_sx(&s, 2, 2, &x) else { continue };
            let delta = epikit_core::delta_x(&s, &x).unwrap();
            if delta.delta == epikit_core::Q::from_integer(1.into()) {
                assert_eq!(v.dim(), 0);
                continue;
            }
            let d: BTreeSet<AffineRoot> = delta.roots.into_iter().collect();
            assert!(d.is_subset(&v.roots()), "{name} {:?}", k.b);
        }
    }
}
