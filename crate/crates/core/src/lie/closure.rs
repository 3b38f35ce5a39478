use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;

use super::{LieAlgebra, LieError};
use crate::arith::{random_assignment, Poly, Rational, Var};

/// Row-echelon span of sparse rational vectors indexed by ordered keys.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: Vec<(K, BTreeMap<K, Rational>)>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            let Some(c) = v.get(p).cloned() else { continue };
            for (k, x) in row {
                let entry = v.entry(k.clone()).or_insert_with(Rational::zero);
                *entry -= &c * x;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<K, Rational>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: &BTreeMap<K, Rational>) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.iter().next() else {
            return false;
        };
        let (p, inv) = (p.clone(), Rational::one() / lead);
        let row = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.push((p, row));
        true
    }
}

/// Filtered dimensions of the subalgebra generated by a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    /// `per_degree[d-1] = dim F_d - dim F_{d-1}`.
    pub per_degree: Vec<usize>,
    pub total: usize,
    /// False when the degree bound was reached with new elements still
    /// appearing (only allowed when the caller asked for a bounded run).
    pub stabilized: bool,
    /// Whether the ranks come from random specializations.
    pub generic: bool,
}

fn coords<A: LieAlgebra>(alg: &A, x: &A::Elem) -> Result<BTreeMap<A::Key, Rational>, LieError> {
    alg.components(x)
        .into_iter()
        .map(|(k, p)| {
            p.as_constant()
                .map(|c| (k, c))
                .ok_or_else(|| LieError::Unsupported(format!("coefficient {p} is not a number")))
        })
        .collect()
}

/// Closure of the span of `gens` (all coefficients numeric) under brackets.
/// Returns the per-degree dimensions and a basis ordered by degree.
pub fn closure_exact<A: LieAlgebra>(
    alg: &A,
    gens: &[A::Elem],
    max_degree: usize,
    bounded: bool,
) -> Result<(Vec<usize>, bool, Vec<A::Elem>), LieError> {
    let mut span = SparseEchelon::new();
    let mut basis = Vec::new();
    let mut new: Vec<A::Elem> = Vec::new();
    for g in gens {
        if span.insert(&coords(alg, g)?) {
            new.push(g.clone());
        }
    }
    let mut per_degree = vec![new.len()];
    basis.extend(new.iter().cloned());
    let mut degree = 1;
    while !new.is_empty() {
        if degree == max_degree {
            if bounded {
                return Ok((per_degree, false, basis));
            }
            return Err(LieError::NoStabilization(max_degree));
        }
        let mut next = Vec::new();
        for g in gens {
            for n in &new {
                let x = alg.bracket(g, n)?;
                if span.insert(&coords(alg, &x)?) {
                    next.push(x);
                }
            }
        }
        degree += 1;
        if !next.is_empty() {
            per_degree.push(next.len());
        }
        basis.extend(next.iter().cloned());
        new = next;
    }
    while per_degree.last() == Some(&0) && per_degree.len() > 1 {
        per_degree.pop();
    }
    Ok((per_degree, true, basis))
}

fn specialize<A: LieAlgebra>(alg: &A, x: &A::Elem, asg: &BTreeMap<Var, Rational>) -> A::Elem {
    let map: BTreeMap<Var, Poly> = asg.iter().map(|(v, r)| (*v, Poly::constant(r.clone()))).collect();
    alg.map_coeffs(x, &|p| p.substitute(&map))
}

/// Closure dimensions over `Q[params]`, computed at three independent random
/// specializations that must agree. Parameter-free families are computed once.
pub fn subalgebra_closure<A: LieAlgebra, R: Rng>(
    alg: &A,
    gens: &[A::Elem],
    max_degree: usize,
    bounded: bool,
    rng: &mut R,
) -> Result<ClosureResult, LieError> {
    let vars: BTreeSet<Var> = gens
        .iter()
        .flat_map(|g| alg.components(g))
        .flat_map(|(_, p)| p.vars())
        .collect();
    if vars.is_empty() {
        let (per_degree, stabilized, _) = closure_exact(alg, gens, max_degree, bounded)?;
        return Ok(ClosureResult {
            total: per_degree.iter().sum(),
            per_degree,
            stabilized,
            generic: false,
        });
    }
    let mut runs = Vec::new();
    for _ in 0..3 {
        let asg = random_assignment(vars.iter().copied(), rng);
        let special: Vec<A::Elem> = gens.iter().map(|g| specialize(alg, g, &asg)).collect();
        let (per_degree, stabilized, _) = closure_exact(alg, &special, max_degree, bounded)?;
        runs.push((per_degree, stabilized));
    }
    if runs.iter().any(|r| r != &runs[0]) {
        let seen: Vec<String> = runs.iter().map(|r| format!("{:?}", r.0)).collect();
        return Err(LieError::NonGeneric(format!(
            "specializations disagree: {}",
            seen.join(" / ")
        )));
    }
    let (per_degree, stabilized) = runs.swap_remove(0);
    Ok(ClosureResult {
        total: per_degree.iter().sum(),
        per_degree,
        stabilized,
        generic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sparse_echelon_rank() {
        let mut e = SparseEchelon::new();
        let v = |xs: &[(u8, i64)]| xs.iter().map(|&(k, x)| (k, rat(x))).collect::<BTreeMap<_, _>>();
        assert!(e.insert(&v(&[(1, 1), (3, 2)])));
        assert!(e.insert(&v(&[(3, 1), (5, 1)])));
        assert!(!e.insert(&v(&[(1, 2), (3, 5), (5, 1)])));
        assert!(e.contains(&v(&[(1, 1), (3, 3), (5, 1)])));
        assert!(!e.insert(&BTreeMap::new()));
        assert_eq!(e.rank(), 2);
    }
}
