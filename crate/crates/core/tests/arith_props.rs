use std::collections::BTreeMap;

use proptest::prelude::*;

use elie_core::arith::{eval_matrix, ff_det, ff_rank, rat, rational_rank, Poly, Rational, Var};

const VARS: [&str; 3] = ["x", "y", "b1"];

/// Sums of up to four terms `c x^i y^j b1^k` with small exponents.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, i, j, k)| {
            let t = &(&Poly::int(c) * &Poly::var("x").pow(i)) * &(&Poly::var("y").pow(j) * &Poly::var("b1").pow(k));
            &acc + &t
        })
    })
}

fn point() -> impl Strategy<Value = BTreeMap<Var, Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=5), 3).prop_map(|vals| {
        VARS.iter()
            .zip(vals)
            .map(|(v, (n, d))| (Var::new(v), rat(n) / rat(d)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &Poly::zero(), p.clone());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(-(-p.clone()), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), at in point()) {
        let (ep, eq) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!((&p + &q).eval(&at).unwrap(), &ep + &eq);
        prop_assert_eq!((&p * &q).eval(&at).unwrap(), &ep * &eq);
        prop_assert_eq!(Poly::one().eval(&at).unwrap(), rat(1));
    }

    #[test]
    fn display_parses_back(p in poly()) {
        prop_assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Specializing never raises the rank, and a product through `k` columns
    /// has rank at most `k`.
    #[test]
    fn generic_rank_bounds_specializations(
        a in prop::collection::vec(prop::collection::vec(poly(), 2), 3),
        b in prop::collection::vec(prop::collection::vec(poly(), 3), 2),
        at in point(),
    ) {
        let m: Vec<Vec<Poly>> = (0..3)
            .map(|i| (0..3).map(|j| (0..2).fold(Poly::zero(), |s, k| &s + &(&a[i][k] * &b[k][j]))).collect())
            .collect();
        let generic = ff_rank(&m).unwrap().rank;
        prop_assert!(generic <= 2);
        prop_assert!(rational_rank(&eval_matrix(&m, &at).unwrap()).unwrap() <= generic);
        prop_assert!(ff_det(&m).unwrap().is_zero());
    }

    #[test]
    fn determinant_commutes_with_evaluation(m in prop::collection::vec(prop::collection::vec(poly(), 3), 3), at in point()) {
        let d = ff_det(&m).unwrap().eval(&at).unwrap();
        let e = eval_matrix(&m, &at).unwrap();
        let want = &(&(&e[0][0] * &(&(&e[1][1] * &e[2][2]) - &(&e[1][2] * &e[2][1])))
            - &(&e[0][1] * &(&(&e[1][0] * &e[2][2]) - &(&e[1][2] * &e[2][0]))))
            + &(&e[0][2] * &(&(&e[1][0] * &e[2][1]) - &(&e[1][1] * &e[2][0])));
        prop_assert_eq!(d, want);
    }
}
