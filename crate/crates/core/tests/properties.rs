use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use semigroup_forge::honest::{minimal_embedding_dimension_with, MeOptions};
use semigroup_forge::kunz::{self, FaceClass, KunzPoint};
use semigroup_forge::oracle::{semigroup_of_curve, value_pivots, value_pivots_by_matrix, OracleConfig};
use semigroup_forge::puiseux::{
    characteristic_from_support, generators_to_puiseux, puiseux_to_generators, teissier_planarity,
    PuiseuxCharacteristic,
};
use semigroup_forge::semigroup::NumericalSemigroup;
use semigroup_forge::series::{pullback, MonomialPolynomial, ParamCurve, Polynomial, TruncatedSeries};

fn numerical_gens() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=30, 1..=5)
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a: u64, &b| a.gcd(&b)) == 1)
}

/// All sums of `gens` up to `limit`, by plain reachability.
fn brute_force(gens: &[u64], limit: u64) -> BTreeSet<u64> {
    let mut reached = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(v) = frontier.pop() {
        for &g in gens {
            if v + g <= limit && reached.insert(v + g) {
                frontier.push(v + g);
            }
        }
    }
    reached
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_under_addition(gens in numerical_gens()) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let top = s.conductor() + s.multiplicity();
        let members = s.elements_up_to(top);
        for &a in &members {
            for &b in &members {
                prop_assert!(s.contains((a + b) as i64));
            }
        }
    }

    #[test]
    fn minimal_generators_idempotent(gens in numerical_gens()) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let t = NumericalSemigroup::from_generators(s.minimal_generators()).unwrap();
        prop_assert_eq!(t.minimal_generators(), s.minimal_generators());
        prop_assert_eq!(&t, &s);
        prop_assert!(s.embedding_dimension() as u64 <= s.multiplicity());
    }

    #[test]
    fn matches_brute_force(gens in numerical_gens()) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let limit = 2 * s.conductor() + 1;
        let expected = brute_force(&gens, limit);
        let actual: BTreeSet<u64> = s.elements_up_to(limit).into_iter().collect();
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn apery_sets_are_class_minima(gens in numerical_gens(), pick in 0usize..5) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let g = s.minimal_generators();
        let m = g[pick % g.len()];
        let apery = s.apery_set(m).unwrap();
        prop_assert_eq!(apery.len() as u64, m);
        for (r, &w) in apery.iter().enumerate() {
            prop_assert_eq!(w % m, r as u64);
            prop_assert!(s.contains(w as i64));
            prop_assert!(w < m || !s.contains((w - m) as i64));
        }
    }

    #[test]
    fn series_orders_add(
        a in prop::collection::vec(-3i64..=3, 1..12),
        b in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        let trunc = 30;
        let f = TruncatedSeries::from_coeffs(a.iter().map(|&v| rat(v)).collect()).truncate(trunc);
        let g = TruncatedSeries::from_coeffs(b.iter().map(|&v| rat(v)).collect()).truncate(trunc);
        let prod = f.mul(&g);
        match (f.order(), g.order()) {
            (Some(i), Some(j)) => prop_assert_eq!(prod.order(), Some(i + j)),
            _ => prop_assert_eq!(prod.order(), None),
        }
    }

    #[test]
    fn pullback_is_multiplicative(
        ya in 3u64..9, yb in 9u64..15, za in 5u64..12,
        p in prop::collection::vec((0u32..3, 0u32..3, -2i64..=2), 1..4),
        q in prop::collection::vec((0u32..3, 0u32..3, -2i64..=2), 1..4),
    ) {
        let curve = ParamCurve::new(vec![
            Polynomial::monomial(2),
            Polynomial::sum_of_powers(&[ya, yb]),
            Polynomial::monomial(za),
        ]).unwrap();
        let poly = |terms: &[(u32, u32, i64)]| {
            terms.iter().fold(MonomialPolynomial::zero(), |acc, &(i, j, c)| {
                acc.add(&MonomialPolynomial::term(vec![0, i, j], rat(c)))
            })
        };
        let (p, q) = (poly(&p), poly(&q));
        let trunc = 60;
        let lhs = pullback(&p.mul(&q), &curve, trunc);
        let rhs = pullback(&p, &curve, trunc).mul(&pullback(&q, &curve, trunc));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn monomial_curves_give_their_semigroup(exps in prop::collection::vec(2u64..=13, 2..=3)) {
        prop_assume!(exps.iter().fold(0, |a: u64, &b| a.gcd(&b)) == 1);
        let curve = ParamCurve::monomial(&exps).unwrap();
        let s = semigroup_of_curve(&curve, &OracleConfig::default()).unwrap();
        prop_assert_eq!(s, NumericalSemigroup::from_generators(&exps).unwrap());
    }

    #[test]
    fn both_echelon_routes_agree(a in 3u64..7, b in 7u64..12, c in 12u64..16, k in -2i64..=2) {
        let mut y = Polynomial::monomial(b);
        y.add_term(c, rat(k));
        let curve = ParamCurve::new(vec![Polynomial::monomial(a), y]).unwrap();
        let trunc = 40;
        prop_assert_eq!(value_pivots(&curve, trunc).unwrap(), value_pivots_by_matrix(&curve, trunc).unwrap());
    }

    #[test]
    fn puiseux_recursion_round_trips(m in 2u64..=12, steps in prop::collection::vec(1u64..=20, 1..=4)) {
        let mut lambda = vec![m];
        let mut divisor = m;
        let mut last = m;
        for step in steps {
            if divisor == 1 {
                break;
            }
            let mut next = last + step;
            while next % divisor == 0 {
                next += 1;
            }
            divisor = divisor.gcd(&next);
            lambda.push(next);
            last = next;
        }
        prop_assume!(divisor == 1);
        let lambda = PuiseuxCharacteristic::new(lambda).unwrap();
        let b = puiseux_to_generators(&lambda);
        prop_assert!(teissier_planarity(&b).unwrap().is_planar());
        prop_assert_eq!(generators_to_puiseux(&b).unwrap(), lambda.clone());
        let support: BTreeSet<u64> = lambda.as_slice()[1..].iter().copied().collect();
        prop_assert_eq!(characteristic_from_support(m, &support).unwrap(), lambda);
    }

    #[test]
    fn me_verdict_chain(gens in numerical_gens()) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let options = MeOptions { skip_witness: true, ..MeOptions::default() };
        let v = minimal_embedding_dimension_with(&s, &options).unwrap();
        prop_assert!(1 <= v.lower && v.lower <= v.upper);
        prop_assert!(v.upper <= s.embedding_dimension());
        prop_assert!(s.embedding_dimension() as u64 <= s.multiplicity());
        prop_assert!(!v.exact || v.lower == v.upper);
    }
}

#[test]
fn kunz_round_trip_and_faces() {
    for (p, face) in kunz::enumerate_points(33) {
        let s = kunz::semigroup_of_point(&p).unwrap();
        assert_eq!(kunz::kunz_point_of(&s).unwrap(), p);
        assert_eq!(kunz::embedding_dim_from_face(&p).unwrap(), s.embedding_dimension());
        assert!(face.is_inside());
    }
}

#[test]
fn kunz_outside_points_are_not_apery_points() {
    for x1 in (5..30).step_by(4) {
        for x2 in (6..30).step_by(4) {
            for x3 in (7..30).step_by(4) {
                let p = KunzPoint::new(x1, x2, x3).unwrap();
                let s = NumericalSemigroup::from_generators(&[4, x1, x2, x3]).unwrap();
                let round = kunz::kunz_point_of(&s).unwrap();
                let outside = matches!(kunz::classify_face(&p), FaceClass::Outside(_));
                assert_eq!(outside, round != p, "{p}");
            }
        }
    }
}
