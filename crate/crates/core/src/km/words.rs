//! Words in the generators, Lyndon words and their standard bracketing
//! inside the tensor algebra.

use std::collections::BTreeMap;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::arith::Rational;

pub type Word = SmallVec<[u8; 12]>;

/// Element of the tensor algebra: word -> coefficient, no zero entries.
pub type WordVec = BTreeMap<Word, Rational>;

pub fn content_of(w: &[u8], rank: usize) -> Vec<u32> {
    let mut c = vec![0; rank];
    for &x in w {
        c[x as usize] += 1;
    }
    c
}

/// `w` is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(Word, Word)> {
    if w.len() < 2 {
        return None;
    }
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..]))?;
    Some((Word::from_slice(&w[..i]), Word::from_slice(&w[i..])))
}

/// All Lyndon words with the given letter multiplicities, in lexicographic
/// order.
pub fn lyndon_words(content: &[u32]) -> Vec<Word> {
    let mut w: Word = content
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat(i as u8).take(m as usize))
        .collect();
    let mut out = Vec::new();
    if w.is_empty() {
        return out;
    }
    loop {
        if is_lyndon(&w) {
            out.push(w.clone());
        }
        if !next_permutation(&mut w) {
            break;
        }
    }
    out
}

fn next_permutation(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Number of Lyndon words of a content, by Witt's formula
/// `(1/|c|) sum_{d | gcd(c)} mu(d) multinomial(c/d)`.
pub fn free_lie_dim(content: &[u32]) -> u128 {
    let total: u32 = content.iter().sum();
    if total == 0 {
        return 0;
    }
    let g = content.iter().fold(0u32, |a, &b| gcd(a, b));
    let mut acc: i128 = 0;
    for d in 1..=g {
        if g % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let part: Vec<u32> = content.iter().map(|&c| c / d).collect();
        acc += mu as i128 * multinomial(&part) as i128;
    }
    (acc / total as i128) as u128
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mobius(mut n: u32) -> i32 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

fn multinomial(parts: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in parts {
        for i in 1..=k as u128 {
            n += 1;
            acc = acc * n / i;
        }
    }
    acc
}

/// Concatenation product of two tensor-algebra elements.
pub fn concat(x: &WordVec, y: &WordVec) -> WordVec {
    let mut out = WordVec::new();
    for (a, c) in x {
        for (b, d) in y {
            let mut w = a.clone();
            w.extend_from_slice(b);
            add_to(&mut out, w, c * d);
        }
    }
    out
}

pub fn add_to(v: &mut WordVec, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    match v.entry(w) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// `xy - yx`.
pub fn commutator(x: &WordVec, y: &WordVec) -> WordVec {
    let mut out = concat(x, y);
    for (w, c) in concat(y, x) {
        add_to(&mut out, w, -c);
    }
    out
}

pub fn add_scaled(acc: &mut WordVec, x: &WordVec, c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (w, d) in x {
        add_to(acc, w.clone(), d * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[u8]) -> Word {
        Word::from_slice(s)
    }

    #[test]
    fn lyndon_basics() {
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(!is_lyndon(&[0, 1, 0]));
        assert!(!is_lyndon(&[0, 0]));
        assert_eq!(lyndon_words(&[2, 1]), vec![w(&[0, 0, 1])]);
        assert_eq!(lyndon_words(&[1, 2]), vec![w(&[0, 1, 1])]);
        assert_eq!(
            standard_factorization(&[0, 0, 1]),
            Some((w(&[0]), w(&[0, 1])))
        );
        assert_eq!(
            standard_factorization(&[0, 1, 1]),
            Some((w(&[0, 1]), w(&[1])))
        );
    }

    #[test]
    fn witt_formula_matches_enumeration() {
        for content in [[1u32, 1, 0], [2, 1, 0], [2, 2, 0], [3, 2, 1], [2, 2, 2], [4, 2, 0]] {
            assert_eq!(
                free_lie_dim(&content) as usize,
                lyndon_words(&content).len(),
                "{content:?}"
            );
        }
    }
}
