use std::collections::BTreeSet;

use super::Gcm;

/// Positive roots of a finite-type GCM, level by level, using root strings:
/// `beta + alpha_i` is a root iff `p - <beta, alpha_i^v> > 0`, where `p` is
/// the length of the `alpha_i`-string below `beta`. Returns `None` once a
/// root of height above `cap` shows up (the type is not finite).
pub fn finite_positive_roots(gcm: &Gcm, cap: usize) -> Option<Vec<Vec<i64>>> {
    let n = gcm.rank();
    let simple = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut all: BTreeSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut level: Vec<Vec<i64>> = (0..n).map(simple).collect();
    let mut height = 1;
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &level {
            for i in 0..n {
                if *beta == simple(i) {
                    continue;
                }
                let mut p = 0;
                let mut below = beta.clone();
                loop {
                    below[i] -= 1;
                    if below[i] < 0 || !all.contains(&below) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * gcm.a(i, j)).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        height += 1;
        if !next.is_empty() && height > cap {
            return None;
        }
        all.extend(next.iter().cloned());
        level = next.into_iter().collect();
    }
    let mut out: Vec<Vec<i64>> = all.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Some(out)
}

/// Height of the highest root for finite types.
pub fn highest_root_height(gcm: &Gcm) -> Option<usize> {
    finite_positive_roots(gcm, 64).map(|rs| rs.iter().map(|r| r.iter().sum::<i64>() as usize).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};

    #[test]
    fn root_counts_of_finite_types() {
        for (family, rank, count, top) in [
            (Family::A, 3, 6, 3),
            (Family::B, 3, 9, 5),
            (Family::C, 3, 9, 5),
            (Family::D, 4, 12, 5),
            (Family::G, 2, 6, 5),
            (Family::F, 4, 24, 11),
            (Family::E, 6, 36, 11),
            (Family::E, 8, 120, 29),
            (Family::Rank2(1, 3), 2, 6, 5),
        ] {
            let g = builtin_gcm(family, rank).unwrap();
            let roots = finite_positive_roots(&g, 64).unwrap();
            assert_eq!(roots.len(), count, "{family}{rank}");
            assert_eq!(highest_root_height(&g), Some(top), "{family}{rank}");
        }
    }

    #[test]
    fn infinite_types_are_rejected() {
        for (family, rank) in [(Family::AffineA, 3), (Family::Rank2(2, 2), 2), (Family::Rank2(1, 4), 2), (Family::AffineD4, 5)] {
            assert_eq!(highest_root_height(&builtin_gcm(family, rank).unwrap()), None, "{family}");
        }
    }
}
