use proptest::prelude::*;

use elie_core::arith::Poly;
use elie_core::cartan::{builtin_gcm, Family};
use elie_core::electrical::crosscheck;
use elie_core::km::KmAlgebra;
use elie_core::lie::{LieAlgebra, LieExpr};
use elie_core::matrix::{LoopAlgebra, MatrixAlgebra};

use LieExpr::{E, F, H};

/// Generators and brackets of two like generators, each with its root.
fn words(rank: usize) -> Vec<(LieExpr, Vec<i64>)> {
    let unit = |i: usize, s: i64| (0..rank).map(|k| if k == i { s } else { 0 }).collect::<Vec<_>>();
    let mut out = Vec::new();
    for i in 0..rank {
        out.push((H(i), vec![0; rank]));
        out.push((E(i), unit(i, 1)));
        out.push((F(i), unit(i, -1)));
        for j in 0..rank {
            let add = |s: i64| unit(i, s).iter().zip(unit(j, s)).map(|(a, b)| a + b).collect();
            out.push((LieExpr::br(E(i), E(j)), add(1)));
            out.push((LieExpr::br(F(i), F(j)), add(-1)));
        }
    }
    out
}

fn element(rank: usize) -> impl Strategy<Value = LieExpr> {
    let n = words(rank).len();
    prop::collection::vec((-4i64..=4, 0..n), 1..5).prop_map(move |terms| {
        let ws = words(rank);
        LieExpr::sum(terms.into_iter().map(|(c, k)| (Poly::int(c), ws[k].0.clone())).collect())
    })
}

fn vanishes<A: LieAlgebra>(alg: &A, x: LieExpr) -> Result<(), TestCaseError> {
    let v = x.eval(alg).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(alg.is_zero(&v), "{:?}", alg.witness(&v));
    Ok(())
}

fn antisymmetry(x: &LieExpr, y: &LieExpr) -> LieExpr {
    LieExpr::sum(vec![
        (Poly::one(), LieExpr::br(x.clone(), y.clone())),
        (Poly::one(), LieExpr::br(y.clone(), x.clone())),
    ])
}

fn jacobi(x: &LieExpr, y: &LieExpr, z: &LieExpr) -> LieExpr {
    let t = |a: &LieExpr, b: &LieExpr, c: &LieExpr| (Poly::one(), LieExpr::br(a.clone(), LieExpr::br(b.clone(), c.clone())));
    LieExpr::sum(vec![t(x, y, z), t(y, z, x), t(z, x, y)])
}

fn g2() -> KmAlgebra {
    KmAlgebra::new(&builtin_gcm(Family::G, 2).unwrap(), 6).unwrap()
}

/// Affine `A_1^(1)`; three factors of height at most 2 stay within 7.
fn affine_a1() -> KmAlgebra {
    KmAlgebra::new(&builtin_gcm(Family::Rank2(2, 2), 2).unwrap(), 7).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn km_antisymmetry_and_jacobi_g2(x in element(2), y in element(2), z in element(2)) {
        let alg = g2();
        vanishes(&alg, antisymmetry(&x, &y))?;
        vanishes(&alg, jacobi(&x, &y, &z))?;
    }

    #[test]
    fn km_antisymmetry_and_jacobi_affine(x in element(2), y in element(2), z in element(2)) {
        let alg = affine_a1();
        vanishes(&alg, antisymmetry(&x, &y))?;
        vanishes(&alg, jacobi(&x, &y, &z))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `[g_a, g_b]` lies in `g_(a+b)`.
    #[test]
    fn km_bracket_respects_grading(i in 0usize..14, j in 0usize..14) {
        let alg = affine_a1();
        let ws = words(2);
        let (x, a) = &ws[i];
        let (y, b) = &ws[j];
        let v = LieExpr::br(x.clone(), y.clone()).eval(&alg).unwrap();
        let want: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
        for (k, _) in alg.components(&v) {
            prop_assert_eq!(alg.root_of(&k), want.clone());
        }
    }

    /// `e^(s ad f_i)` is an automorphism.
    #[test]
    fn ad_exp_is_an_automorphism(i in 0usize..3, s in -5i64..=5, y in element(3), z in element(3)) {
        let alg = MatrixAlgebra::new(Family::A, 3).unwrap();
        let g = |w: LieExpr| LieExpr::ad_exp(Poly::int(s), F(i), w);
        let lhs = g(LieExpr::br(y.clone(), z.clone()));
        let rhs = LieExpr::br(g(y), g(z));
        vanishes(&alg, LieExpr::sum(vec![(Poly::one(), lhs), (Poly::int(-1), rhs)]))?;
    }

    #[test]
    fn ad_exp_is_an_automorphism_km(i in 0usize..2, s in -3i64..=3, y in element(2), z in element(2)) {
        let alg = g2();
        let g = |w: LieExpr| LieExpr::ad_exp(Poly::int(s), E(i), w);
        let lhs = g(LieExpr::br(y.clone(), z.clone()));
        let rhs = LieExpr::br(g(y), g(z));
        vanishes(&alg, LieExpr::sum(vec![(Poly::one(), lhs), (Poly::int(-1), rhs)]))?;
    }

    /// The central cocycle of the loop model satisfies Jacobi.
    #[test]
    fn loop_jacobi(x in element(3), y in element(3), z in element(3)) {
        let alg = LoopAlgebra::new(3).unwrap();
        vanishes(&alg, antisymmetry(&x, &y))?;
        vanishes(&alg, jacobi(&x, &y, &z))?;
    }

    #[test]
    fn matrix_jacobi_c3(x in element(3), y in element(3), z in element(3)) {
        let alg = MatrixAlgebra::new(Family::C, 3).unwrap();
        vanishes(&alg, jacobi(&x, &y, &z))?;
    }
}

#[test]
fn km_matches_matrix_on_a3() {
    let r = crosscheck(Family::A, 3, 100, 2024).unwrap();
    assert_eq!(r.checks.len(), 100);
    assert!(r.passed(), "{:#?}", r.checks.iter().find(|c| !c.status.is_ok()));
}

#[test]
fn km_matches_matrix_on_other_classical_types() {
    for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::D, 4)] {
        let r = crosscheck(f, n, 20, 5).unwrap();
        assert!(r.passed(), "{f}{n}: {:#?}", r.checks.iter().find(|c| !c.status.is_ok()));
    }
}
