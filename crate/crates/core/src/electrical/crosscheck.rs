//! Kac-Moody engine against the matrix model on random brackets.
//!
//! Both models express results in their own coordinates, so each bracket is
//! rewritten in a common basis of Lie words in `e`, `f`, `h` before the
//! comparison.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::km_height;
use super::report::{Check, VerificationReport};
use super::ElectricalError;
use crate::arith::{ff_kernel, Poly, Rational};
use crate::cartan::{builtin_gcm, Family};
use crate::km::KmAlgebra;
use crate::lie::{LieAlgebra, LieError, LieExpr};
use crate::matrix::MatrixAlgebra;

fn coords<A: LieAlgebra>(alg: &A, x: &A::Elem, keys: &[A::Key]) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::default(); keys.len()];
    for (k, p) in alg.components(x) {
        let i = keys.binary_search(&k).ok()?;
        v[i] = p.as_constant()?;
    }
    Some(v)
}

/// Words `h_i`, `e_i`, `f_i` and left-normed brackets, one per root
/// content (root spaces are one-dimensional in finite type).
fn word_basis<A: LieAlgebra>(alg: &A) -> Result<Vec<LieExpr>, LieError> {
    let n = alg.gcm().rank();
    let mut words: Vec<LieExpr> = (0..n).map(LieExpr::H).collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for letter in [LieExpr::E as fn(usize) -> LieExpr, LieExpr::F] {
        let mut frontier: Vec<(Vec<u32>, LieExpr)> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                (c, letter(i))
            })
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (c, w) in frontier {
                if seen.contains(&c) || alg.is_zero(&w.eval(alg)?) {
                    continue;
                }
                seen.insert(c.clone());
                words.push(w.clone());
                for i in 0..n {
                    let mut d = c.clone();
                    d[i] += 1;
                    if !seen.contains(&d) {
                        next.push((d, LieExpr::br(letter(i), w.clone())));
                    }
                }
            }
            frontier = next;
        }
        seen.clear();
    }
    Ok(words)
}

/// Coordinates of `x` against the evaluated `basis`.
fn solve<A: LieAlgebra>(alg: &A, basis: &[A::Elem], x: &A::Elem) -> Result<Vec<Rational>, String> {
    let mut keys: Vec<A::Key> = basis
        .iter()
        .chain(std::iter::once(x))
        .flat_map(|b| alg.components(b).into_iter().map(|(k, _)| k))
        .collect();
    keys.sort();
    keys.dedup();
    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .chain(std::iter::once(x))
        .map(|b| coords(alg, b, &keys).ok_or_else(|| "non-constant coordinates".to_string()))
        .collect::<Result<_, _>>()?;
    let m: Vec<Vec<Poly>> = (0..keys.len())
        .map(|r| cols.iter().map(|c| Poly::constant(c[r].clone())).collect())
        .collect();
    let kernel = ff_kernel(&m).map_err(|e| e.to_string())?;
    let n = basis.len();
    let v = kernel
        .into_iter()
        .find(|v| !v[n].is_zero())
        .ok_or_else(|| "bracket is outside the span of the basis".to_string())?;
    let last = v[n].as_constant().ok_or("non-constant kernel")?;
    v[..n]
        .iter()
        .map(|p| p.as_constant().map(|c| -c / &last).ok_or_else(|| "non-constant kernel".to_string()))
        .collect()
}

fn random_expr(words: &[LieExpr], rng: &mut ChaCha8Rng) -> LieExpr {
    LieExpr::sum(
        words
            .iter()
            .filter_map(|w| {
                let c = rng.gen_range(-5i64..=5);
                (c != 0).then(|| (Poly::int(c), w.clone()))
            })
            .collect(),
    )
}

fn bracket_coords<A: LieAlgebra>(alg: &A, words: &[LieExpr], x: &LieExpr, y: &LieExpr) -> Result<Vec<Rational>, String> {
    let basis: Vec<A::Elem> = words.iter().map(|w| w.eval(alg)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let z = LieExpr::br(x.clone(), y.clone()).eval(alg).map_err(|e| e.to_string())?;
    solve(alg, &basis, &z)
}

/// Compares `pairs` random brackets in a finite classical type.
pub fn crosscheck(family: Family, rank: usize, pairs: usize, seed: u64) -> Result<VerificationReport, ElectricalError> {
    let gcm = builtin_gcm(family, rank)?;
    let matrix = MatrixAlgebra::new(family, rank)?;
    let km = KmAlgebra::new(&gcm, km_height(&gcm, usize::MAX))?;
    let words = word_basis(&matrix)?;
    let mut report = VerificationReport::new(
        format!("Kac-Moody engine vs matrix model on {family}{rank}"),
        format!("{} | {}", matrix.describe(), km.describe()),
    );
    report.budgets.height = Some(km.model().height());
    let reference = "[x,y] has the same coordinates in both models";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..pairs {
        let (x, y) = (random_expr(&words, &mut rng), random_expr(&words, &mut rng));
        let name = format!("crosscheck pair {}", k + 1);
        let check = match (bracket_coords(&matrix, &words, &x, &y), bracket_coords(&km, &words, &x, &y)) {
            (Ok(a), Ok(b)) => Check::expect(&name, reference, a == b, || {
                let i = a.iter().zip(&b).position(|(p, q)| p != q).unwrap_or(0);
                format!("coordinate {i}: matrix {} vs km {}", a[i], b[i])
            }),
            (Err(e), _) | (_, Err(e)) => Check::error(&name, reference, e),
        };
        report.push(check);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_basis_and_agreement() {
        let m = MatrixAlgebra::new(Family::A, 2).unwrap();
        assert_eq!(word_basis(&m).unwrap().len(), 8);
        let r = crosscheck(Family::A, 2, 10, 3).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }
}
