use std::collections::{BTreeMap, BTreeSet};

use super::{graph_of, Gcm};
use crate::arith::{Poly, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamKind {
    Vertex,
    Edge,
}

/// Per-vertex (`a_i`) or per-edge (`b_ij = b_ji`) coefficients, keyed by
/// positions. Missing keys read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFamily {
    kind: ParamKind,
    vertex: BTreeMap<usize, Poly>,
    edge: BTreeMap<(usize, usize), Poly>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Name of the edge parameter: `b{i}` for consecutive labels `i, i+1`,
/// otherwise `b{i}_{j}` with `i < j`.
pub fn edge_name(gcm: &Gcm, i: usize, j: usize) -> String {
    let (x, y) = (gcm.label(i).min(gcm.label(j)), gcm.label(i).max(gcm.label(j)));
    if y == x + 1 {
        format!("b{x}")
    } else {
        format!("b{x}_{y}")
    }
}

impl ParamFamily {
    pub fn vertex(values: BTreeMap<usize, Poly>) -> ParamFamily {
        ParamFamily {
            kind: ParamKind::Vertex,
            vertex: values,
            edge: BTreeMap::new(),
        }
    }

    pub fn edge(values: impl IntoIterator<Item = ((usize, usize), Poly)>) -> ParamFamily {
        ParamFamily {
            kind: ParamKind::Edge,
            vertex: BTreeMap::new(),
            edge: values.into_iter().map(|((i, j), p)| (key(i, j), p)).collect(),
        }
    }

    /// `a_i` as the formal symbol `a{label}` for every vertex.
    pub fn symbolic_vertex(gcm: &Gcm) -> ParamFamily {
        ParamFamily::vertex(
            (0..gcm.rank())
                .map(|i| (i, Poly::var(&format!("a{}", gcm.label(i)))))
                .collect(),
        )
    }

    /// A formal symbol on every edge of the graph.
    pub fn symbolic_edge(gcm: &Gcm) -> ParamFamily {
        ParamFamily::edge(
            graph_of(gcm)
                .edges()
                .into_iter()
                .map(|(i, j)| ((i, j), Poly::var(&edge_name(gcm, i, j)))),
        )
    }

    pub fn kind(&self) -> ParamKind {
        self.kind
    }

    pub fn a(&self, i: usize) -> Poly {
        self.vertex.get(&i).cloned().unwrap_or_default()
    }

    pub fn b(&self, i: usize, j: usize) -> Poly {
        self.edge.get(&key(i, j)).cloned().unwrap_or_default()
    }

    pub fn set_b(&mut self, i: usize, j: usize, p: Poly) {
        self.edge.insert(key(i, j), p);
    }

    pub fn set_a(&mut self, i: usize, p: Poly) {
        self.vertex.insert(i, p);
    }

    pub fn edge_keys(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edge.keys().copied()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.vertex
            .values()
            .chain(self.edge.values())
            .flat_map(Poly::vars)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vertex.values().chain(self.edge.values()).all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> ParamFamily {
        ParamFamily {
            kind: self.kind,
            vertex: self.vertex.iter().map(|(k, v)| (*k, f(v))).collect(),
            edge: self.edge.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }

    pub fn zeroed(&self) -> ParamFamily {
        self.map(|_| Poly::zero())
    }

    /// Substitutes values for the formal symbols that have one.
    pub fn specialize(&self, assignment: &BTreeMap<Var, Rational>) -> ParamFamily {
        let map: BTreeMap<Var, Poly> = assignment
            .iter()
            .map(|(v, r)| (*v, Poly::constant(r.clone())))
            .collect();
        self.map(|p| p.substitute(&map))
    }

    /// Human-readable entries keyed by vertex label or `i-j` label pair.
    pub fn describe(&self, gcm: &Gcm) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for (i, p) in &self.vertex {
            out.insert(format!("a{}", gcm.label(*i)), p.to_string());
        }
        for ((i, j), p) in &self.edge {
            out.insert(format!("b{}-{}", gcm.label(*i), gcm.label(*j)), p.to_string());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};

    #[test]
    fn symmetric_edges() {
        let g = builtin_gcm(Family::A, 3).unwrap();
        let b = ParamFamily::symbolic_edge(&g);
        assert_eq!(b.b(1, 0), Poly::var("b1"));
        assert_eq!(b.b(1, 2), b.b(2, 1));
        assert!(b.b(0, 2).is_zero());
        let aff = builtin_gcm(Family::AffineA, 3).unwrap();
        assert_eq!(ParamFamily::symbolic_edge(&aff).b(2, 0), Poly::var("b0_2"));
    }
}
