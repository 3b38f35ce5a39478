use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::model::{display_content, Content, KmModel};
use super::words::commutator;
use crate::arith::{rat, Poly, Rational};
use crate::cartan::Gcm;
use crate::lie::{LieAlgebra, LieError};

/// Element of the truncated algebra in triangular form. Negative-part
/// contents are stored as their absolute value; coefficient vectors are over
/// the quotient basis of that content and are never identically zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KMElement {
    pub neg: BTreeMap<Content, Vec<Poly>>,
    pub cartan: Vec<Poly>,
    pub pos: BTreeMap<Content, Vec<Poly>>,
}

impl KMElement {
    pub fn zero(rank: usize) -> KMElement {
        KMElement {
            neg: BTreeMap::new(),
            cartan: vec![Poly::zero(); rank],
            pos: BTreeMap::new(),
        }
    }

    fn add_part(part: &mut BTreeMap<Content, Vec<Poly>>, c: &Content, v: &[Poly]) {
        let slot = part.entry(c.clone()).or_insert_with(|| vec![Poly::zero(); v.len()]);
        for (a, b) in slot.iter_mut().zip(v) {
            *a += b;
        }
        if slot.iter().all(Poly::is_zero) {
            part.remove(c);
        }
    }

    pub fn add(&self, other: &KMElement) -> KMElement {
        let mut out = self.clone();
        for (c, v) in &other.neg {
            KMElement::add_part(&mut out.neg, c, v);
        }
        for (c, v) in &other.pos {
            KMElement::add_part(&mut out.pos, c, v);
        }
        for (a, b) in out.cartan.iter_mut().zip(&other.cartan) {
            *a += b;
        }
        out
    }

    pub fn map(&self, f: &dyn Fn(&Poly) -> Poly) -> KMElement {
        let part = |p: &BTreeMap<Content, Vec<Poly>>| {
            p.iter()
                .map(|(c, v)| (c.clone(), v.iter().map(f).collect::<Vec<_>>()))
                .filter(|(_, v)| !v.iter().all(Poly::is_zero))
                .collect()
        };
        KMElement {
            neg: part(&self.neg),
            cartan: self.cartan.iter().map(f).collect(),
            pos: part(&self.pos),
        }
    }

    pub fn scale(&self, c: &Poly) -> KMElement {
        if c.is_zero() {
            return KMElement::zero(self.cartan.len());
        }
        self.map(&|p| p * c)
    }

    pub fn is_zero(&self) -> bool {
        self.neg.is_empty() && self.pos.is_empty() && self.cartan.iter().all(Poly::is_zero)
    }

    /// Largest absolute height among the stored components.
    pub fn height_span(&self) -> usize {
        let h = |c: &Content| c.iter().map(|&x| x as usize).sum::<usize>();
        self.neg.keys().chain(self.pos.keys()).map(h).max().unwrap_or(0)
    }
}

/// Coordinate of a [`KMElement`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KmKey {
    Neg(Content, usize),
    Cartan(usize),
    Pos(Content, usize),
}

impl fmt::Display for KmKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KmKey::Neg(c, k) => write!(f, "root -{}[{k}]", display_content(c)),
            KmKey::Cartan(i) => write!(f, "h[{i}]"),
            KmKey::Pos(c, k) => write!(f, "root {}[{k}]", display_content(c)),
        }
    }
}

type PairKey = (Content, usize, Content, usize);

/// The truncated Kac-Moody algebra `n- + h' + n+` of a GCM.
///
/// Conventions: `[e_i, f_j] = delta_ij h_i`, `[h_i, e_j] = a_ij e_j`,
/// `[h_i, f_j] = -a_ij f_j`. The negative part reuses the structure
/// constants of the positive part through `e_i -> f_i`.
#[derive(Debug)]
pub struct KmAlgebra {
    model: KmModel,
    pos_pos: RwLock<HashMap<PairKey, Arc<Vec<Rational>>>>,
    mixed: RwLock<HashMap<PairKey, Arc<KMElement>>>,
    beyond: RwLock<HashMap<Content, bool>>,
}

fn add_contents(a: &[u32], b: &[u32]) -> Content {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn height(c: &[u32]) -> usize {
    c.iter().map(|&x| x as usize).sum()
}

impl KmAlgebra {
    pub fn new(gcm: &Gcm, height_budget: usize) -> Result<KmAlgebra, LieError> {
        Ok(KmAlgebra::from_model(KmModel::build(gcm, height_budget)?))
    }

    pub fn from_model(model: KmModel) -> KmAlgebra {
        KmAlgebra {
            model,
            pos_pos: RwLock::new(HashMap::new()),
            mixed: RwLock::new(HashMap::new()),
            beyond: RwLock::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &KmModel {
        &self.model
    }

    pub fn root_space_dim(&self, c: &[u32]) -> Result<usize, LieError> {
        self.model.root_space_dim(c)
    }

    fn rank(&self) -> usize {
        self.model.gcm().rank()
    }

    fn simple(&self, i: usize) -> Content {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        c
    }

    fn pos_vec(&self, c: Content, v: Vec<Rational>) -> KMElement {
        let mut x = KMElement::zero(self.rank());
        if v.iter().any(|r| !r.is_zero()) {
            x.pos.insert(c, v.into_iter().map(Poly::constant).collect());
        }
        x
    }

    fn neg_vec(&self, c: Content, v: Vec<Rational>) -> KMElement {
        let mut x = KMElement::zero(self.rank());
        if v.iter().any(|r| !r.is_zero()) {
            x.neg.insert(c, v.into_iter().map(Poly::constant).collect());
        }
        x
    }

    fn unit(&self, c: &[u32], k: usize) -> Vec<Rational> {
        let d = self.model.space(c).map(|s| s.dim()).unwrap_or(0);
        let mut v = vec![Rational::zero(); d];
        v[k] = rat(1);
        v
    }

    /// `alpha(h_i)` for a positive content `alpha`.
    fn weight(&self, c: &[u32], i: usize) -> i64 {
        let g = self.model.gcm();
        c.iter().enumerate().map(|(j, &m)| m as i64 * g.a(i, j)).sum()
    }

    /// Whether `n_c` is zero. Above the budget this is decided from the
    /// predecessors: `n_c` is spanned by `[e_i, n_(c - alpha_i)]`.
    fn vanishes(&self, c: &[u32]) -> Result<bool, LieError> {
        if height(c) <= self.model.height() {
            return Ok(self.model.root_space_dim(c)? == 0);
        }
        if let Some(&v) = self.beyond.read().unwrap().get(c) {
            return Ok(v);
        }
        let mut all = true;
        for i in 0..c.len() {
            if c[i] > 0 {
                let mut p = c.to_vec();
                p[i] -= 1;
                if !self.vanishes(&p)? {
                    all = false;
                    break;
                }
            }
        }
        self.beyond.write().unwrap().insert(c.to_vec(), all);
        Ok(all)
    }

    /// Dimension of the target space of a product, or the budget error when
    /// the content lies above `H` and is not provably zero.
    fn target_dim(&self, c: &[u32]) -> Result<usize, LieError> {
        if height(c) <= self.model.height() {
            return self.model.root_space_dim(c);
        }
        if self.vanishes(c)? {
            return Ok(0);
        }
        Err(LieError::HeightExceeded {
            root: display_content(c),
            height: height(c),
            budget: self.model.height(),
        })
    }

    /// Structure constants `[b_{c1,k1}, b_{c2,k2}]` in the basis of `c1 + c2`.
    fn pos_pos(&self, c1: &Content, k1: usize, c2: &Content, k2: usize) -> Result<Arc<Vec<Rational>>, LieError> {
        let key = (c1.clone(), k1, c2.clone(), k2);
        if let Some(v) = self.pos_pos.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let c = add_contents(c1, c2);
        let v = if self.target_dim(&c)? == 0 {
            Vec::new()
        } else {
            let x = self.model.basis_element(c1, k1)?;
            let y = self.model.basis_element(c2, k2)?;
            self.model.reduce_words(&c, &commutator(&x, &y))?
        };
        let v = Arc::new(v);
        self.pos_pos.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// `[b_{c1,k1}, sigma(b_{c2,k2})]`: positive basis element against a
    /// negative one.
    fn mixed(&self, c1: &Content, k1: usize, c2: &Content, k2: usize) -> Result<Arc<KMElement>, LieError> {
        let key = (c1.clone(), k1, c2.clone(), k2);
        if let Some(v) = self.mixed.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let rank = self.rank();
        let result = if height(c1) == 1 && height(c2) == 1 {
            let mut x = KMElement::zero(rank);
            if c1 == c2 {
                let i = c1.iter().position(|&m| m == 1).unwrap();
                x.cartan[i] = Poly::one();
            }
            x
        } else if height(c1) >= 2 {
            let ((cu, vu), (cv, vv)) = self.model.factors(c1, k1)?.expect("composite word");
            let x1 = self.pos_vec(cu, vu);
            let x2 = self.pos_vec(cv, vv);
            let y = self.neg_vec(c2.clone(), self.unit(c2, k2));
            let t1 = self.bracket_elems(&x1, &self.bracket_elems(&x2, &y)?)?;
            let t2 = self.bracket_elems(&x2, &self.bracket_elems(&x1, &y)?)?;
            t1.add(&t2.scale(&Poly::int(-1)))
        } else {
            let ((cu, vu), (cv, vv)) = self.model.factors(c2, k2)?.expect("composite word");
            let y1 = self.neg_vec(cu, vu);
            let y2 = self.neg_vec(cv, vv);
            let x = self.pos_vec(c1.clone(), self.unit(c1, k1));
            let t1 = self.bracket_elems(&self.bracket_elems(&x, &y1)?, &y2)?;
            let t2 = self.bracket_elems(&y1, &self.bracket_elems(&x, &y2)?)?;
            t1.add(&t2)
        };
        let result = Arc::new(result);
        self.mixed.write().unwrap().insert(key, result.clone());
        Ok(result)
    }

    fn same_part(
        &self,
        a: &BTreeMap<Content, Vec<Poly>>,
        b: &BTreeMap<Content, Vec<Poly>>,
        out: &mut BTreeMap<Content, Vec<Poly>>,
    ) -> Result<(), LieError> {
        for (c1, v1) in a {
            for (c2, v2) in b {
                let c = add_contents(c1, c2);
                let d = self.target_dim(&c)?;
                if d == 0 {
                    continue;
                }
                let mut acc = vec![Poly::zero(); d];
                for (k1, p1) in v1.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    for (k2, p2) in v2.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        let sc = self.pos_pos(c1, k1, c2, k2)?;
                        if sc.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let prod = p1 * p2;
                        for (t, s) in sc.iter().enumerate() {
                            if !s.is_zero() {
                                acc[t] += &prod.scale(s);
                            }
                        }
                    }
                }
                KMElement::add_part(out, &c, &acc);
            }
        }
        Ok(())
    }

    fn bracket_elems(&self, x: &KMElement, y: &KMElement) -> Result<KMElement, LieError> {
        let rank = self.rank();
        let mut out = KMElement::zero(rank);
        self.same_part(&x.pos, &y.pos, &mut out.pos)?;
        self.same_part(&x.neg, &y.neg, &mut out.neg)?;
        let mut acc = KMElement::zero(rank);
        for (c1, v1) in &x.pos {
            for (c2, v2) in &y.neg {
                for (k1, p1) in v1.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    for (k2, p2) in v2.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        let m = self.mixed(c1, k1, c2, k2)?;
                        acc = acc.add(&m.scale(&(p1 * p2)));
                    }
                }
            }
        }
        for (c1, v1) in &x.neg {
            for (c2, v2) in &y.pos {
                for (k1, p1) in v1.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    for (k2, p2) in v2.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        let m = self.mixed(c2, k2, c1, k1)?;
                        acc = acc.add(&m.scale(&-(p1 * p2)));
                    }
                }
            }
        }
        // Cartan actions: [h, x_c] = c(h) x_c on n+, -c(h) on n-
        let cartan_on = |h: &[Poly], part: &BTreeMap<Content, Vec<Poly>>, sign: i64, out: &mut BTreeMap<Content, Vec<Poly>>| {
            for (c, v) in part {
                let mut w = Poly::zero();
                for (i, hi) in h.iter().enumerate() {
                    if !hi.is_zero() {
                        w += &hi.scale(&rat(sign * self.weight(c, i)));
                    }
                }
                if w.is_zero() {
                    continue;
                }
                let scaled: Vec<Poly> = v.iter().map(|p| p * &w).collect();
                KMElement::add_part(out, c, &scaled);
            }
        };
        cartan_on(&x.cartan, &y.pos, 1, &mut out.pos);
        cartan_on(&x.cartan, &y.neg, -1, &mut out.neg);
        cartan_on(&y.cartan, &x.pos, -1, &mut out.pos);
        cartan_on(&y.cartan, &x.neg, 1, &mut out.neg);
        Ok(out.add(&acc))
    }
}

impl LieAlgebra for KmAlgebra {
    type Elem = KMElement;
    type Key = KmKey;

    fn describe(&self) -> String {
        format!("Kac-Moody model {} (height <= {})", self.model.gcm(), self.model.height())
    }

    fn gcm(&self) -> &Gcm {
        self.model.gcm()
    }

    fn e(&self, i: usize) -> KMElement {
        self.pos_vec(self.simple(i), vec![rat(1)])
    }

    fn f(&self, i: usize) -> KMElement {
        self.neg_vec(self.simple(i), vec![rat(1)])
    }

    fn h(&self, i: usize) -> KMElement {
        let mut x = KMElement::zero(self.rank());
        x.cartan[i] = Poly::one();
        x
    }

    fn zero(&self) -> KMElement {
        KMElement::zero(self.rank())
    }

    fn add(&self, x: &KMElement, y: &KMElement) -> KMElement {
        x.add(y)
    }

    fn scale(&self, c: &Poly, x: &KMElement) -> KMElement {
        x.scale(c)
    }

    fn bracket(&self, x: &KMElement, y: &KMElement) -> Result<KMElement, LieError> {
        self.bracket_elems(x, y)
    }

    fn components(&self, x: &KMElement) -> Vec<(KmKey, Poly)> {
        let mut out = Vec::new();
        for (c, v) in &x.neg {
            for (k, p) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                out.push((KmKey::Neg(c.clone(), k), p.clone()));
            }
        }
        for (i, p) in x.cartan.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            out.push((KmKey::Cartan(i), p.clone()));
        }
        for (c, v) in &x.pos {
            for (k, p) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                out.push((KmKey::Pos(c.clone(), k), p.clone()));
            }
        }
        out
    }

    fn map_coeffs(&self, x: &KMElement, f: &dyn Fn(&Poly) -> Poly) -> KMElement {
        x.map(f)
    }

    fn root_of(&self, key: &KmKey) -> Vec<i64> {
        match key {
            KmKey::Neg(c, _) => c.iter().map(|&m| -(m as i64)).collect(),
            KmKey::Cartan(_) => vec![0; self.rank()],
            KmKey::Pos(c, _) => c.iter().map(|&m| m as i64).collect(),
        }
    }

    fn height_budget(&self) -> Option<usize> {
        Some(self.model.height())
    }

    fn is_zero(&self, x: &KMElement) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};
    use crate::lie::chevalley_relations;

    fn a2() -> KmAlgebra {
        KmAlgebra::new(&builtin_gcm(Family::A, 2).unwrap(), 3).unwrap()
    }

    #[test]
    fn defining_brackets() {
        let g = a2();
        assert_eq!(g.bracket(&g.e(0), &g.f(0)).unwrap(), g.h(0));
        assert_eq!(g.bracket(&g.h(0), &g.e(1)).unwrap(), g.e(1).scale(&Poly::int(-1)));
        let e12 = g.bracket(&g.e(0), &g.e(1)).unwrap();
        assert_eq!(g.bracket(&g.f(0), &e12).unwrap(), g.e(1));
        let e1h = g.ad_pow(&g.e(0), 2, &g.f(0)).unwrap();
        assert_eq!(e1h, g.e(0).scale(&Poly::int(-2)));
    }

    #[test]
    fn provably_zero_contents_pass_the_budget() {
        // height 3 is entirely zero in A_2, so (2,2) is known to vanish
        let g = KmAlgebra::new(&builtin_gcm(Family::A, 2).unwrap(), 3).unwrap();
        let x = g.bracket(&g.e(0), &g.e(1)).unwrap();
        assert!(g.bracket(&x, &x).unwrap().is_zero());
        let a = KmAlgebra::new(&builtin_gcm(Family::AffineA, 2).unwrap(), 2).unwrap();
        let y = a.bracket(&a.e(0), &a.e(1)).unwrap();
        assert!(matches!(a.bracket(&y, &a.e(0)), Err(LieError::HeightExceeded { .. })));
    }

    #[test]
    fn relations_hold_in_small_models() {
        for (family, rank, h) in [
            (Family::A, 3, 4),
            (Family::B, 2, 4),
            (Family::G, 2, 5),
            (Family::Rank2(2, 2), 2, 4),
        ] {
            let g = KmAlgebra::new(&builtin_gcm(family, rank).unwrap(), h).unwrap();
            for (name, res) in chevalley_relations(&g) {
                assert_eq!(res, Ok(None), "{family}: {name}");
            }
        }
    }

    #[test]
    fn budget_error_names_the_root() {
        let g = KmAlgebra::new(&builtin_gcm(Family::Rank2(2, 2), 2).unwrap(), 3).unwrap();
        let x = g.bracket(&g.e(0), &g.e(1)).unwrap();
        let err = g.bracket(&x, &x).unwrap_err();
        assert_eq!(
            err,
            LieError::HeightExceeded {
                root: "(2,2)".into(),
                height: 4,
                budget: 3
            }
        );
    }

    #[test]
    fn ad_exp_recovers_vertex_generator() {
        let g = a2();
        let a = Poly::var("a1");
        let u = g.ad_exp(&-&a, &g.f(0), &g.e(0)).unwrap();
        let want = g.lin(&[(Poly::one(), g.e(0)), (a.clone(), g.h(0)), (-&(&a * &a), g.f(0))]);
        assert_eq!(u, want);
    }
}
