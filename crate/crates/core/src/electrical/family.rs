use std::collections::{BTreeMap, BTreeSet};

use super::job::Task;
use crate::arith::{Poly, Rational, Var};
use crate::cartan::{Gcm, ParamFamily};
use crate::lie::LieExpr;

/// Generators `u_i` together with the presentation they should satisfy:
/// `(ad u_i)^(1-m_ij) u_j + 2 c_ij u_i = 0` for the effective matrix `m`,
/// with `c_ij` present exactly when `m_ij = -1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorFamily {
    pub name: String,
    /// Matrix of the ambient algebra.
    pub gcm: Gcm,
    /// Matrix of the presentation, on the same index set.
    pub effective: Gcm,
    pub params: ParamFamily,
    pub gens: Vec<LieExpr>,
    pub consts: BTreeMap<(usize, usize), Poly>,
}

/// `u = e_i + a h_i - a^2 f_i`.
pub fn vertex_u(i: usize, a: &Poly) -> LieExpr {
    LieExpr::sum(vec![
        (Poly::one(), LieExpr::E(i)),
        (a.clone(), LieExpr::H(i)),
        (-(a * a), LieExpr::F(i)),
    ])
}

/// Vertex family; `c_ij = a_ji a_i a_j`.
pub fn vertex_generators(gcm: &Gcm, a: &ParamFamily) -> GeneratorFamily {
    let n = gcm.rank();
    let gens = (0..n).map(|i| vertex_u(i, &a.a(i))).collect();
    let mut consts = BTreeMap::new();
    for (i, j) in gcm.ordered_pairs() {
        if gcm.a(i, j) == -1 {
            consts.insert((i, j), &(&Poly::int(gcm.a(j, i)) * &a.a(i)) * &a.a(j));
        }
    }
    GeneratorFamily {
        name: "vertex".into(),
        gcm: gcm.clone(),
        effective: gcm.clone(),
        params: a.clone(),
        gens,
        consts,
    }
}

/// Edge constants `c_ij = b_ij` on every pair with `m_ij = -1`.
pub(crate) fn edge_consts(effective: &Gcm, b: &ParamFamily) -> BTreeMap<(usize, usize), Poly> {
    effective
        .ordered_pairs()
        .into_iter()
        .filter(|&(i, j)| effective.a(i, j) == -1)
        .map(|(i, j)| ((i, j), b.b(i, j)))
        .collect()
}

impl GeneratorFamily {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    fn label(&self, i: usize) -> usize {
        self.gcm.label(i)
    }

    /// Applies `f` to every coefficient, parameters included.
    pub fn map_polys(&self, f: &dyn Fn(&Poly) -> Poly) -> GeneratorFamily {
        GeneratorFamily {
            name: self.name.clone(),
            gcm: self.gcm.clone(),
            effective: self.effective.clone(),
            params: self.params.map(f),
            gens: self.gens.iter().map(|g| g.map_polys(f)).collect(),
            consts: self.consts.iter().map(|(k, c)| (*k, f(c))).collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.params.vars()
    }

    /// All formal parameters set to zero.
    pub fn zeroed(&self) -> GeneratorFamily {
        let zero: BTreeMap<Var, Poly> = self.vars().into_iter().map(|v| (v, Poly::zero())).collect();
        self.map_polys(&|p| p.substitute(&zero))
    }

    pub fn specialize(&self, assignment: &BTreeMap<Var, Rational>) -> GeneratorFamily {
        let map: BTreeMap<Var, Poly> = assignment
            .iter()
            .map(|(v, r)| (*v, Poly::constant(r.clone())))
            .collect();
        self.map_polys(&|p| p.substitute(&map))
    }

    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> GeneratorFamily {
        self.map_polys(&|p| p.substitute(map))
    }

    pub fn constant(&self, i: usize, j: usize) -> Poly {
        self.consts.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `(ad u_i)^(1-m_ij)(u_j) + 2 c_ij u_i`.
    pub fn relation_expr(&self, i: usize, j: usize) -> LieExpr {
        let k = (1 - self.effective.a(i, j)) as usize;
        let lhs = LieExpr::ad_pow(self.gens[i].clone(), k, self.gens[j].clone());
        let c = self.constant(i, j);
        if c.is_zero() {
            lhs
        } else {
            LieExpr::sum(vec![
                (Poly::one(), lhs),
                (&Poly::int(2) * &c, self.gens[i].clone()),
            ])
        }
    }

    pub fn relation_reference(&self, i: usize, j: usize) -> String {
        let (li, lj) = (self.label(i), self.label(j));
        let k = 1 - self.effective.a(i, j);
        let c = self.constant(i, j);
        if self.effective.a(i, j) == 0 {
            format!("[u{li},u{lj}] = 0")
        } else if c.is_zero() {
            format!("(ad u{li})^{k}(u{lj}) = 0")
        } else {
            format!("(ad u{li})^{k}(u{lj}) + 2({c}) u{li} = 0")
        }
    }

    /// One check per ordered pair.
    pub fn relation_tasks(&self) -> Vec<Task> {
        self.effective
            .ordered_pairs()
            .into_iter()
            .map(|(i, j)| {
                Task::vanish(
                    format!("{} relation u{},u{}", self.name, self.label(i), self.label(j)),
                    self.relation_reference(i, j),
                    self.relation_expr(i, j),
                )
            })
            .collect()
    }

    /// `u_i - e_i` lies in filtration degree zero.
    pub fn top_tasks(&self) -> Vec<Task> {
        (0..self.rank())
            .map(|i| {
                let l = self.label(i);
                Task::lower(
                    format!("{} gr u{l}", self.name),
                    format!("gr u{l} = e{l}"),
                    self.gens[i].clone(),
                    i,
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};
    use crate::lie::LieAlgebra;
    use crate::matrix::MatrixAlgebra;

    #[test]
    fn sl2_vertex_matrix() {
        let g = builtin_gcm(Family::A, 1).unwrap();
        let fam = vertex_generators(&g, &ParamFamily::symbolic_vertex(&g));
        let alg = MatrixAlgebra::new(Family::A, 1).unwrap();
        let u = fam.gens[0].eval(&alg).unwrap();
        let a = Poly::var("a1");
        let rows: Vec<Vec<Poly>> = vec![vec![a.clone(), Poly::one()], vec![-(&a * &a), -a.clone()]];
        assert_eq!(u.rows(), rows);
        assert!(alg.is_zero(&fam.zeroed().gens[0].eval(&alg).map(|x| alg.sub(&x, &alg.e(0))).unwrap()));
    }

    #[test]
    fn a2_constants() {
        let g = builtin_gcm(Family::A, 2).unwrap();
        let fam = vertex_generators(&g, &ParamFamily::symbolic_vertex(&g));
        assert_eq!(fam.constant(0, 1), -(&Poly::var("a1") * &Poly::var("a2")));
        assert_eq!(fam.relation_reference(0, 1), "(ad u1)^2(u2) + 2(-a1*a2) u1 = 0");
    }
}
