use num_rational::BigRational;
use proptest::prelude::*;

use xxz_paths::correlations::{
    fluctuation_distribution, multipoint_numerator, spin_down_prob, spin_up_prob, CorrelationQuery,
    FluctuationQuery, Spin,
};
use xxz_paths::higher_dim::{particle_hole_holds, z2d_oracle, z2d_product, z2d_reduction};
use xxz_paths::lattice_paths::{transfer_partition, BoxSpec, Path, Step};
use xxz_paths::partition::{identities, z_closed, z_generalized, ZCache};
use xxz_paths::{Execution, QPoly};

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u64..24, -50i64..50), 0..8).prop_map(QPoly::from_terms)
}

fn rational_q() -> impl Strategy<Value = BigRational> {
    (1i64..40, 1i64..40).prop_map(|(a, b)| BigRational::new(a.into(), (a + b).into()))
}

fn path(max_steps: usize) -> impl Strategy<Value = Path> {
    prop::collection::vec(prop::bool::ANY, 0..=max_steps)
        .prop_map(|bits| Path::from_origin(bits.into_iter().map(|h| if h { Step::H } else { Step::V }).collect()))
}

fn sector_box() -> impl Strategy<Value = BoxSpec> {
    (0u64..8, 0u64..8, 0u64..6, 0u64..6)
        .prop_map(|(n0, m0, dn, dm)| BoxSpec { n0, m0, n: n0 + dn, m: m0 + dm })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QPoly::zero());
        prop_assert_eq!(&a * &QPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), q in rational_q()) {
        prop_assert_eq!((&a * &b).evaluate(&q), a.evaluate(&q) * b.evaluate(&q));
        prop_assert_eq!((&a + &b).evaluate(&q), a.evaluate(&q) + b.evaluate(&q));
    }

    #[test]
    fn serde_roundtrip(a in poly()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: QPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn exponent_is_area_plus_triangle(p in path(16)) {
        let n = p.horizontal_count();
        prop_assert_eq!(p.weight_exponent(), n * (n + 1) + 2 * p.area());
    }

    #[test]
    fn parity_and_reversal(p in path(16)) {
        let (n, m) = (p.horizontal_count(), p.vertical_count());
        let f = p.parity();
        let t = p.time_reverse();
        prop_assert_eq!(p.area() + f.area(), n * m);
        prop_assert_eq!(p.area() + t.area(), n * m);
        prop_assert_eq!(f.time_reverse().area(), p.area());
        prop_assert_eq!(f.parity(), p.clone());
        prop_assert_eq!(t.time_reverse(), p.clone());
        prop_assert_eq!(f.time_reverse().end(), (m, n));
    }

    #[test]
    fn spins_roundtrip(p in path(16)) {
        prop_assert_eq!(Path::from_spins(&p.spins()), p.clone());
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Path>().unwrap(), p);
    }

    #[test]
    fn generalized_matches_transfer(b in sector_box()) {
        prop_assert_eq!(z_generalized(&b), transfer_partition(&b));
        prop_assert!(identities::generalized_reflection(&b).is_ok());
    }

    #[test]
    fn translation_holds(b in sector_box(), fx in 0u64..8, fy in 0u64..8) {
        let (x, y) = (fx.min(b.n0), fy.min(b.m0));
        prop_assert!(identities::translation(&b, x, y).is_ok());
    }

    #[test]
    fn markov_holds(b in sector_box(), t in 0u64..100) {
        let span = b.width() + b.height();
        let z = b.n0 + b.m0 + t % (span + 1);
        prop_assert!(identities::markov(&b, z).is_ok());
    }

    #[test]
    fn q_pascal_and_reversal(n in 1u64..20, m in 1u64..20) {
        prop_assert!(identities::upper_corner(n, m).is_ok());
        prop_assert!(identities::q_pascal_second(n, m).is_ok());
        prop_assert!(identities::time_reversal(n, m).is_ok());
        prop_assert!(identities::ratio_diagonal(n, m).is_ok());
    }
}

fn spin_sites() -> impl Strategy<Value = (u64, u64, Vec<u64>)> {
    (0u64..5, 0u64..5)
        .prop_filter("nonempty chain", |(n, m)| n + m >= 1)
        .prop_flat_map(|(n, m)| {
            let l = n + m;
            (Just(n), Just(m), prop::collection::btree_set(1..=l, 1..=(l as usize).min(3)))
        })
        .prop_map(|(n, m, s)| (n, m, s.into_iter().collect()))
}

fn pattern_weight(n: u64, m: u64, c: Vec<(u64, Spin)>, cache: &ZCache) -> QPoly {
    let q = CorrelationQuery::new(n, m, c).unwrap();
    if q.count_infeasible() {
        QPoly::zero()
    } else {
        multipoint_numerator(&q, cache)
    }
}

fn assignments(sites: &[u64]) -> Vec<Vec<(u64, Spin)>> {
    (0u32..(1 << sites.len()))
        .map(|s| {
            sites
                .iter()
                .enumerate()
                .map(|(i, x)| (*x, if s >> i & 1 == 1 { Spin::Down } else { Spin::Up }))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_probability((n, m, sites) in spin_sites()) {
        let cache = ZCache::new();
        let total: QPoly = assignments(&sites).into_iter().map(|c| pattern_weight(n, m, c, &cache)).sum();
        prop_assert_eq!(total, z_closed(n, m));
    }

    #[test]
    fn marginal_consistency((n, m, sites) in spin_sites(), drop in 0usize..3) {
        prop_assume!(sites.len() >= 2);
        let cache = ZCache::new();
        let k = drop % sites.len();
        let extra = sites[k];
        let rest: Vec<u64> = sites.iter().copied().filter(|x| *x != extra).collect();
        for c in assignments(&rest) {
            let summed: QPoly = [Spin::Down, Spin::Up]
                .into_iter()
                .map(|s| {
                    let mut full = c.clone();
                    full.push((extra, s));
                    full.sort_by_key(|(x, _)| *x);
                    pattern_weight(n, m, full, &cache)
                })
                .sum();
            prop_assert_eq!(summed, pattern_weight(n, m, c, &cache));
        }
    }

    #[test]
    fn flip_reflection_symmetry(n in 0u64..6, m in 0u64..6, t in 0u64..100) {
        prop_assume!(n + m >= 1);
        let cache = ZCache::new();
        let x = 1 + t % (n + m);
        let a = spin_down_prob(n, m, x, &cache).unwrap();
        let b = spin_up_prob(m, n, n + m - x + 1, &cache).unwrap();
        prop_assert!(a.same_value(&b));
    }

    #[test]
    fn fluctuations_symmetric(half in 1u64..6, w in 1u64..6) {
        prop_assume!(w <= half);
        let fq = FluctuationQuery::new(2 * half, 2 * w).unwrap();
        let d = fluctuation_distribution(&fq, &ZCache::new(), Execution::Parallel);
        prop_assert!(d.is_normalised());
        prop_assert!(d.is_symmetric());
        prop_assert!(d.mean_numerator().is_zero());
    }

    #[test]
    fn reduction_three_way(n in 1u64..4, m in 1u64..4, t in 0u64..100) {
        let k = t % (n * m + 1);
        let r = z2d_reduction(n, m, k);
        prop_assert_eq!(&r, &z2d_product(n, m)[k as usize]);
        prop_assert_eq!(&r, &z2d_oracle(n, m, k));
        prop_assert!(particle_hole_holds(n, m, k));
    }
}
