use proptest::prelude::*;
use qdelta::basefield::{FiniteField, RatFunc, RationalField};
use qdelta::invariants::{coin_dim, semigroup_gaps};
use qdelta::jacobian::omat::OMat;
use qdelta::series::{TruncatedSeries as TS, Val};
use qdelta::verify::{random_normal_form, run_random, Check, Shape};
use qdelta::series::Budget;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coin_matches_gap_count(m in 2usize..18, n in 2usize..18, fq in prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)]), g in prop::collection::vec(0u32..9, 1..6), d in prop::collection::vec(0u32..9, 1..6)) {
        prop_assume!(gcd(m, n) == 1);
        let f = FiniteField::new(fq.0, fq.1, None).unwrap();
        let unit = |v: &[u32]| -> Vec<u32> {
            let mut u: Vec<u32> = v.iter().map(|c| c % f.size()).collect();
            if u[0] == 0 { u[0] = 1; }
            u
        };
        let c = coin_dim(m, n, &unit(&g), &unit(&d), &f, None).unwrap();
        let gaps = semigroup_gaps(m, n).unwrap();
        prop_assert_eq!(c.rowred_gaps, gaps.clone());
        prop_assert_eq!(c.dimension, gaps.len());
        prop_assert_eq!(c.conductor_exponent, gaps.last().map_or(0, |x| x + 1));
    }

    /// For a square matrix over K[[S]] the Smith exponents add up to v(det).
    #[test]
    fn smith_sum_is_det_valuation(entries in prop::collection::vec(prop::collection::vec(0i64..3, 4), 9)) {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let n = 12;
        let t = RatFunc::var(&k, 0);
        let ser = |c: &[i64]| TS::from_coeffs(&k, c.iter().enumerate().map(|(i, &x)| RatFunc::from_int(&k, x).mul(&t.pow(i as u64))).collect(), n);
        let a: Vec<Vec<TS>> = entries.chunks(3).map(|row| row.iter().map(|c| ser(c)).collect()).collect();
        let det = {
            let m = |i: usize, j: usize| &a[i][j];
            let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
            let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
            let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
            t1.sub(&t2).add(&t3)
        };
        let s = OMat::from_rows(&k, n, 3, a).unwrap().smith(false, false);
        match det.valuation() {
            Val::Finite(v) if s.rank() == 3 => prop_assert_eq!(s.sum(), v),
            Val::Finite(_) => prop_assert!(false, "full rank det but rank {}", s.rank()),
            Val::AtLeast(_) => prop_assert!(s.rank() < 3 || s.exponents.iter().sum::<usize>() >= n),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random single-generator normal forms pass every applicable check.
    #[test]
    fn random_single_generator(p in prop::sample::select(vec![2u32, 3, 5]), seed in 0u64..10_000) {
        let rp = random_normal_form(p, Shape::Single, seed).unwrap();
        let r = run_random(&rp, Budget::default());
        prop_assert!(r.passed(), "{:?}: {:?} {:?}", rp.relations, r.error, r.outcomes.iter().filter(|o| !o.holds).collect::<Vec<_>>());
        prop_assert!(r.outcomes.iter().any(|o| o.check == Check::JacRoutes));
    }
}
