//! Chains with a fan attached at the end, deformed by `u_i = e_i + b f_parent`.
//!
//! Positions `0..r` form the chain, positions `r..` the fan hanging off
//! position `r - 1`. For a fan vertex `t` the hypotheses are read on the
//! restricted chain `0, .., r-1, t`, so `t` plays the role of the next chain
//! vertex.

use super::edge::parent_family;
use super::family::{edge_consts, GeneratorFamily};
use super::ElectricalError;
use crate::cartan::{Gcm, ParamFamily};

fn violation(bullet: &str, detail: String) -> ElectricalError {
    ElectricalError::Hypothesis(format!("{bullet}: {detail}"))
}

/// Successor of `i` on the restricted chain ending in `t`.
fn next(i: usize, r: usize, t: Option<usize>) -> Option<usize> {
    if i + 1 < r {
        Some(i + 1)
    } else {
        t
    }
}

/// Checks the hypotheses mechanically and returns the effective matrix
/// obtained by the min-rule.
pub fn min_cartan_gcm(gcm: &Gcm, r: usize) -> Result<Gcm, ElectricalError> {
    let n = gcm.rank();
    if r == 0 || r > n {
        return Err(ElectricalError::Malformed(format!("chain length {r} out of range for rank {n}")));
    }
    let a = |i: usize, j: usize| gcm.a(i, j);
    let l = |i: usize| gcm.label(i);
    let fan: Vec<usize> = (r..n).collect();
    // shape: the chain is a path, fan vertices only touch the chain end
    for (i, j) in gcm.ordered_pairs() {
        let linked = a(i, j) * a(j, i) != 0;
        let expected = (i < r && j < r && i.abs_diff(j) == 1) || (i.min(j) == r - 1 && i.max(j) >= r);
        if linked != expected {
            return Err(violation(
                "shape",
                format!("a_({0},{1}) a_({1},{0}) = {2}", l(i), l(j), a(i, j) * a(j, i)),
            ));
        }
    }
    // monotonicity along the chain
    for i in 1..r {
        for j in 1..r {
            if i != j && a(i, j) > a(i - 1, j - 1) {
                return Err(violation(
                    "monotone",
                    format!("a_({},{}) > a_({},{})", l(i), l(j), l(i - 1), l(j - 1)),
                ));
            }
        }
    }
    let tails: Vec<Option<usize>> = if fan.is_empty() { vec![None] } else { fan.iter().map(|&t| Some(t)).collect() };
    let firsts: Vec<usize> = if r >= 2 { vec![1] } else { fan.clone() };
    for y in firsts {
        if !((a(0, y) == -1 && a(y, 0) == -1) || a(y, 0) < -1) {
            return Err(violation(
                "bullet 1",
                format!("a_({0},{1}) = {2}, a_({1},{0}) = {3}", l(0), l(y), a(0, y), a(y, 0)),
            ));
        }
    }
    for t in &tails {
        for i in 1..r {
            let Some(s) = next(i, r, *t) else { continue };
            let p = i - 1;
            let simple = a(p, i) == -1 && a(i, s) == -1 && a(i, p) == -1;
            if !simple && !(a(i, s) < -1 && a(i, s) <= a(p, i)) {
                return Err(violation(
                    "bullet 2",
                    format!("at {}: a_(i-1,i) = {}, a_(i,i+1) = {}", l(i), a(p, i), a(i, s)),
                ));
            }
            let simple = a(s, i) == -1 && a(i, p) == -1 && a(i, s) == -1;
            if !simple && !(a(s, i) < -1 && a(s, i) <= a(i, p)) {
                return Err(violation(
                    "bullet 3",
                    format!("at {}: a_(i,i-1) = {}, a_(i+1,i) = {}", l(i), a(i, p), a(s, i)),
                ));
            }
        }
        if let (Some(t), true) = (t, r >= 2) {
            let (e, p) = (r - 1, r - 2);
            if a(*t, e) > a(e, p) || a(e, *t) > a(p, e) {
                return Err(violation(
                    "bullet 4",
                    format!("fan vertex {} against the chain end {}", l(*t), l(e)),
                ));
            }
        }
    }
    // the min-rule
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
    }
    for (i, j) in gcm.ordered_pairs() {
        m[i][j] = if i < r && j < r {
            if i == 0 || j == 0 {
                a(i, j)
            } else {
                a(i, j).min(a(i - 1, j - 1))
            }
        } else if i.min(j) == r - 1 {
            if r == 1 {
                a(i, j)
            } else if i == r - 1 {
                a(i, j).min(a(r - 2, r - 1))
            } else {
                a(i, j).min(a(r - 1, r - 2))
            }
        } else {
            0
        };
    }
    Ok(Gcm::new(gcm.labels().to_vec(), m)?)
}

/// `u_1 = e_1`, `u_i = e_i + b_(i-1) f_(i-1)` on the chain and
/// `u_t = e_t + b_t f_r` on the fan.
pub fn min_cartan_family(gcm: &Gcm, b: &ParamFamily, r: usize) -> Result<GeneratorFamily, ElectricalError> {
    let effective = min_cartan_gcm(gcm, r)?;
    let mut fam = parent_family(gcm, b, 0)?;
    fam.name = "MIN_CARTAN".into();
    fam.consts = edge_consts(&effective, b);
    fam.effective = effective;
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};

    #[test]
    fn min_rule_reproduces_admissible_matrices() {
        let b2 = builtin_gcm(Family::Rank2(1, 2), 2).unwrap();
        assert_eq!(min_cartan_gcm(&b2, 2).unwrap(), b2);
        let a3 = builtin_gcm(Family::A, 3).unwrap();
        assert_eq!(min_cartan_gcm(&a3, 3).unwrap(), a3);
        let star = Gcm::from_rows(vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]).unwrap();
        assert_eq!(min_cartan_gcm(&star, 1).unwrap(), star);
    }

    #[test]
    fn violations_name_the_bullet() {
        let bad = Gcm::from_rows(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let err = min_cartan_gcm(&bad, 2).unwrap_err().to_string();
        assert!(err.contains("bullet 1"), "{err}");
        let a3 = builtin_gcm(Family::A, 3).unwrap();
        assert!(min_cartan_gcm(&a3, 1).unwrap_err().to_string().contains("shape"));
    }
}
