//! Positive part `n+ = L(e_i) / <Serre>` per multidegree, up to a height
//! cutoff.
//!
//! For each content `c` the free Lie component `L_c` is coordinatized by the
//! Lyndon words of content `c` (bracketed by standard factorization). The
//! Serre ideal component is
//!
//! ```text
//! S_c = sum_i [e_i, S_{c - alpha_i}] + span{ (ad e_i)^(1-a_ij) e_j : content c }
//! ```
//!
//! kept in reduced row-echelon form; Lyndon words that are not pivots give
//! the quotient basis. A content all of whose predecessors vanish in the
//! quotient vanishes itself and is never expanded.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::words::{
    add_scaled, commutator, free_lie_dim, lyndon_words, standard_factorization, Word, WordVec,
};
use crate::arith::{rat, Rational};
use crate::cartan::Gcm;
use crate::lie::{format_root, LieError};

pub type Content = Vec<u32>;

pub const DEFAULT_SCALE_GUARD: usize = 20_000;

#[derive(Debug)]
pub(crate) struct RootSpace {
    /// Lyndon words when the component was expanded.
    pub lyndon: Vec<Word>,
    pub index: HashMap<Word, usize>,
    /// Reduced echelon rows `(pivot, row)` of the ideal in Lyndon coordinates.
    pub ideal: Vec<(usize, Vec<Rational>)>,
    /// Lyndon indices of the quotient basis.
    pub basis: Vec<usize>,
    pub free_dim: usize,
}

impl RootSpace {
    fn vanishing(free_dim: usize) -> RootSpace {
        RootSpace {
            lyndon: Vec::new(),
            index: HashMap::new(),
            ideal: Vec::new(),
            basis: Vec::new(),
            free_dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Quotient coordinates of a vector of Lyndon coordinates.
    pub fn reduce(&self, mut x: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.ideal {
            if x[*p].is_zero() {
                continue;
            }
            let c = x[*p].clone();
            for (a, b) in x.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        self.basis.iter().map(|&k| x[k].clone()).collect()
    }
}

/// Height-truncated model of `n+` together with cached bracketings.
#[derive(Debug)]
pub struct KmModel {
    gcm: Gcm,
    height: usize,
    spaces: BTreeMap<Content, RootSpace>,
    bracketing: RwLock<HashMap<Word, Arc<WordVec>>>,
}

fn height(c: &[u32]) -> usize {
    c.iter().map(|&x| x as usize).sum()
}

fn contents_of_height(rank: usize, h: usize) -> Vec<Content> {
    fn rec(rank: usize, left: u32, cur: &mut Content, out: &mut Vec<Content>) {
        if cur.len() == rank - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(rank, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, h as u32, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn display_content(c: &[u32]) -> String {
    format_root(&c.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

impl KmModel {
    pub fn build(gcm: &Gcm, height: usize) -> Result<KmModel, LieError> {
        KmModel::build_with_guard(gcm, height, DEFAULT_SCALE_GUARD)
    }

    pub fn build_with_guard(gcm: &Gcm, height: usize, guard: usize) -> Result<KmModel, LieError> {
        if height == 0 {
            return Err(LieError::Unsupported("height budget must be at least 1".into()));
        }
        let rank = gcm.rank();
        if rank > u8::MAX as usize {
            return Err(LieError::Unsupported("rank too large".into()));
        }
        let mut model = KmModel {
            gcm: gcm.clone(),
            height,
            spaces: BTreeMap::new(),
            bracketing: RwLock::new(HashMap::new()),
        };
        for h in 1..=height {
            for c in contents_of_height(rank, h) {
                let space = model.build_space(&c, guard)?;
                model.spaces.insert(c, space);
            }
        }
        Ok(model)
    }

    fn build_space(&self, c: &Content, guard: usize) -> Result<RootSpace, LieError> {
        let rank = self.gcm.rank();
        let free = free_lie_dim(c);
        if height(c) == 1 {
            let i = c.iter().position(|&x| x == 1).unwrap() as u8;
            let w: Word = Word::from_slice(&[i]);
            return Ok(RootSpace {
                index: HashMap::from([(w.clone(), 0)]),
                lyndon: vec![w],
                ideal: Vec::new(),
                basis: vec![0],
                free_dim: 1,
            });
        }
        let preds: Vec<(usize, Content)> = (0..rank)
            .filter(|&i| c[i] > 0)
            .map(|i| {
                let mut p = c.clone();
                p[i] -= 1;
                (i, p)
            })
            .collect();
        let serre = self.serre_elements(c);
        let live = preds
            .iter()
            .any(|(_, p)| self.spaces.get(p).is_some_and(|s| s.dim() > 0));
        if !live {
            return Ok(RootSpace::vanishing(free as usize));
        }
        if free > guard as u128 {
            return Err(LieError::ScaleGuard {
                root: display_content(c),
                dim: free.min(usize::MAX as u128) as usize,
                guard,
            });
        }
        let lyndon = lyndon_words(c);
        let index: HashMap<Word, usize> =
            lyndon.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut space = RootSpace {
            lyndon,
            index,
            ideal: Vec::new(),
            basis: Vec::new(),
            free_dim: free as usize,
        };
        let mut ech = crate::arith::Echelon::new(space.lyndon.len());
        for (i, p) in &preds {
            let Some(ps) = self.spaces.get(p) else { continue };
            let e_i: WordVec = WordVec::from([(Word::from_slice(&[*i as u8]), Rational::one())]);
            let rows: Vec<WordVec> = if ps.dim() == 0 {
                // the whole predecessor component lies in the ideal
                lyndon_words(p)
                    .into_iter()
                    .map(|w| self.bracketing_of(&w).as_ref().clone())
                    .collect()
            } else {
                ps.ideal
                    .iter()
                    .map(|(_, row)| self.expand(ps, row))
                    .collect()
            };
            for r in rows {
                let v = self.lyndon_coords(&space, &commutator(&e_i, &r));
                ech.insert(&v);
            }
        }
        for s in serre {
            let v = self.lyndon_coords(&space, &s);
            ech.insert(&v);
        }
        let rows = rref(ech, space.lyndon.len());
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        space.basis = (0..space.lyndon.len()).filter(|k| !pivots.contains(k)).collect();
        space.ideal = rows;
        Ok(space)
    }

    /// `(ad e_i)^(1-a_ij) e_j` for every ordered pair with this content.
    fn serre_elements(&self, c: &Content) -> Vec<WordVec> {
        let n = self.gcm.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let k = (1 - self.gcm.a(i, j)) as u32;
                let mut want = vec![0; n];
                want[i] = k;
                want[j] = 1;
                if &want != c {
                    continue;
                }
                let ei = WordVec::from([(Word::from_slice(&[i as u8]), Rational::one())]);
                let mut x = WordVec::from([(Word::from_slice(&[j as u8]), Rational::one())]);
                for _ in 0..k {
                    x = commutator(&ei, &x);
                }
                out.push(x);
            }
        }
        out
    }

    /// Standard bracketing of a Lyndon word, as a tensor-algebra element.
    pub(crate) fn bracketing_of(&self, w: &Word) -> Arc<WordVec> {
        if let Some(v) = self.bracketing.read().unwrap().get(w) {
            return v.clone();
        }
        let v = match standard_factorization(w) {
            None => WordVec::from([(w.clone(), Rational::one())]),
            Some((u, v)) => commutator(&self.bracketing_of(&u), &self.bracketing_of(&v)),
        };
        let v = Arc::new(v);
        self.bracketing.write().unwrap().insert(w.clone(), v.clone());
        v
    }

    /// Tensor-algebra element of a Lyndon-coordinate vector.
    fn expand(&self, space: &RootSpace, coords: &[Rational]) -> WordVec {
        let mut acc = WordVec::new();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                add_scaled(&mut acc, &self.bracketing_of(&space.lyndon[k]), c);
            }
        }
        acc
    }

    /// Lyndon coordinates of a Lie element given in the tensor algebra.
    /// The smallest word of a Lie element is Lyndon, and the bracketing of a
    /// Lyndon word is that word plus larger words, so peeling off the minimum
    /// is triangular.
    fn lyndon_coords(&self, space: &RootSpace, x: &WordVec) -> Vec<Rational> {
        let mut x = x.clone();
        let mut out = vec![Rational::zero(); space.lyndon.len()];
        while let Some((w, c)) = x.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let k = *space
                .index
                .get(&w)
                .unwrap_or_else(|| panic!("leading word {w:?} of a Lie element is not Lyndon"));
            add_scaled(&mut x, &self.bracketing_of(&w), &-c.clone());
            out[k] += c;
        }
        out
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub(crate) fn space(&self, c: &[u32]) -> Result<&RootSpace, LieError> {
        self.spaces.get(c).ok_or_else(|| LieError::HeightExceeded {
            root: display_content(c),
            height: height(c),
            budget: self.height,
        })
    }

    /// Dimension of the quotient at a positive content.
    pub fn root_space_dim(&self, c: &[u32]) -> Result<usize, LieError> {
        if c.iter().all(|&x| x == 0) {
            return Err(LieError::Unsupported("zero content".into()));
        }
        Ok(self.space(c)?.dim())
    }

    /// Free Lie dimension and Serre ideal dimension at a content.
    pub fn component_dims(&self, c: &[u32]) -> Result<(usize, usize), LieError> {
        let s = self.space(c)?;
        Ok((s.free_dim, s.free_dim - s.dim()))
    }

    /// Contents with nonzero quotient, ordered by height.
    pub fn positive_roots(&self) -> Vec<(Content, usize)> {
        let mut out: Vec<(Content, usize)> = self
            .spaces
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(c, s)| (c.clone(), s.dim()))
            .collect();
        out.sort_by_key(|(c, _)| (height(c), std::cmp::Reverse(c.clone())));
        out
    }

    /// Tensor-algebra representative of a quotient basis element.
    pub(crate) fn basis_element(&self, c: &[u32], k: usize) -> Result<Arc<WordVec>, LieError> {
        let s = self.space(c)?;
        Ok(self.bracketing_of(&s.lyndon[s.basis[k]]))
    }

    /// Quotient coordinates of a Lie element of content `c`.
    pub(crate) fn reduce_words(&self, c: &[u32], x: &WordVec) -> Result<Vec<Rational>, LieError> {
        let s = self.space(c)?;
        if s.dim() == 0 {
            return Ok(Vec::new());
        }
        Ok(s.reduce(self.lyndon_coords(s, x)))
    }

    /// Standard factors of a basis element as quotient vectors.
    pub(crate) fn factors(
        &self,
        c: &[u32],
        k: usize,
    ) -> Result<Option<((Content, Vec<Rational>), (Content, Vec<Rational>))>, LieError> {
        let s = self.space(c)?;
        let w = &s.lyndon[s.basis[k]];
        let Some((u, v)) = standard_factorization(w) else {
            return Ok(None);
        };
        let rank = self.gcm.rank();
        let part = |x: &Word| -> Result<(Content, Vec<Rational>), LieError> {
            let cx = super::words::content_of(x, rank);
            let sx = self.space(&cx)?;
            let mut unit = vec![Rational::zero(); sx.lyndon.len()];
            unit[sx.index[x]] = rat(1);
            Ok((cx.clone(), sx.reduce(unit)))
        };
        Ok(Some((part(&u)?, part(&v)?)))
    }
}

fn rref(ech: crate::arith::Echelon, len: usize) -> Vec<(usize, Vec<Rational>)> {
    // Echelon keeps normalized rows with distinct pivots; finish the
    // back-substitution so each pivot column is a unit vector.
    let mut rows: Vec<(usize, Vec<Rational>)> = ech
        .rows()
        .iter()
        .map(|(p, r)| (*p, r.clone()))
        .collect();
    rows.sort_by_key(|(p, _)| *p);
    for k in (0..rows.len()).rev() {
        let (p, pivot_row) = (rows[k].0, rows[k].1.clone());
        for (_, row) in rows.iter_mut().take(k) {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row).take(len) {
                    *a -= &c * b;
                }
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};

    fn dims(model: &KmModel) -> Vec<(Content, usize)> {
        model.positive_roots()
    }

    #[test]
    fn a2_roots() {
        let m = KmModel::build(&builtin_gcm(Family::A, 2).unwrap(), 3).unwrap();
        assert_eq!(m.root_space_dim(&[1, 0]).unwrap(), 1);
        assert_eq!(m.root_space_dim(&[1, 1]).unwrap(), 1);
        assert_eq!(m.root_space_dim(&[2, 1]).unwrap(), 0);
        assert_eq!(dims(&m).len(), 3);
        assert!(m.root_space_dim(&[2, 2]).is_err());
    }

    #[test]
    fn rank2_one_two() {
        let m = KmModel::build(&builtin_gcm(Family::Rank2(1, 2), 2).unwrap(), 4).unwrap();
        let roots: Vec<Content> = dims(&m).into_iter().map(|(c, _)| c).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn g2_has_six_positive_roots() {
        let m = KmModel::build(&builtin_gcm(Family::G, 2).unwrap(), 6).unwrap();
        let d = dims(&m);
        assert_eq!(d.len(), 6);
        assert!(d.iter().all(|(_, k)| *k == 1));
    }

    #[test]
    fn a3_highest_root() {
        let m = KmModel::build(&builtin_gcm(Family::A, 3).unwrap(), 4).unwrap();
        assert_eq!(m.root_space_dim(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(dims(&m).len(), 6);
    }

    #[test]
    fn affine_a2_delta_is_two_dimensional() {
        let m = KmModel::build(&builtin_gcm(Family::AffineA, 3).unwrap(), 3).unwrap();
        assert_eq!(m.root_space_dim(&[1, 1, 1]).unwrap(), 2);
    }

    #[test]
    fn scale_guard_trips() {
        let g = builtin_gcm(Family::AffineA, 3).unwrap();
        let err = KmModel::build_with_guard(&g, 4, 2).unwrap_err();
        assert!(matches!(err, LieError::ScaleGuard { .. }));
    }
}
