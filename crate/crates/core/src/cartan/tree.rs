use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{CartanError, Gcm};

/// Undirected graph on positions `0..n`; `(i, j)` is an edge iff `a_ij < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinGraph {
    pub labels: Vec<usize>,
    pub adjacency: Vec<BTreeSet<usize>>,
}

pub fn graph_of(gcm: &Gcm) -> DynkinGraph {
    let n = gcm.rank();
    let adjacency = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && gcm.a(i, j) < 0).collect())
        .collect();
    DynkinGraph {
        labels: gcm.labels().to_vec(),
        adjacency,
    }
}

impl DynkinGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges().len() + 1 == self.len()
    }

    /// A single cycle through every vertex.
    pub fn is_cycle(&self) -> bool {
        self.len() >= 3 && self.is_connected() && (0..self.len()).all(|i| self.degree(i) == 2)
    }
}

/// A tree rooted at `root`, with the parent map `i -> i+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Breadth-first order from the root, ties by position: every parent
    /// precedes its children.
    pub order: Vec<usize>,
}

/// Roots a tree graph at the vertex in position `root`.
pub fn root_tree(graph: &DynkinGraph, root: usize) -> Result<RootedTree, CartanError> {
    if root >= graph.len() {
        return Err(CartanError::UnknownLabel(root));
    }
    if !graph.is_tree() {
        return Err(CartanError::NotATree(format!(
            "{} vertices, {} edges, connected: {}",
            graph.len(),
            graph.edges().len(),
            graph.is_connected()
        )));
    }
    let n = graph.len();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut order = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut k = 0;
    while k < order.len() {
        let i = order[k];
        for &j in &graph.adjacency[i] {
            if !seen[j] {
                seen[j] = true;
                parent[j] = Some(i);
                children[i].push(j);
                order.push(j);
            }
        }
        k += 1;
    }
    Ok(RootedTree {
        root,
        parent,
        children,
        order,
    })
}

impl RootedTree {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// `i-`: the unique child of `i`, if it has exactly one.
    pub fn only_child(&self, i: usize) -> Option<usize> {
        match self.children[i].as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.children[i].is_empty()
    }

    /// Every branch vertex (more than one child) is the root.
    pub fn is_conical(&self) -> bool {
        (0..self.len()).all(|i| i == self.root || self.children[i].len() <= 1)
    }

    /// Whether `a` lies on the path from `b` to the root (inclusive).
    pub fn is_ancestor(&self, a: usize, mut b: usize) -> bool {
        loop {
            if a == b {
                return true;
            }
            match self.parent[b] {
                Some(p) => b = p,
                None => return false,
            }
        }
    }

    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[i] {
            i = p;
            d += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};

    #[test]
    fn paths_stars_cycles() {
        let a3 = graph_of(&builtin_gcm(Family::A, 3).unwrap());
        assert_eq!(a3.edges(), vec![(0, 1), (1, 2)]);
        assert!(a3.is_tree());
        let d4 = graph_of(&builtin_gcm(Family::D, 4).unwrap());
        assert_eq!(d4.degree(1), 3);
        let aff = graph_of(&builtin_gcm(Family::AffineA, 3).unwrap());
        assert!(aff.is_cycle());
        assert!(root_tree(&aff, 0).is_err());
    }

    #[test]
    fn rooted_path_at_end() {
        let a3 = graph_of(&builtin_gcm(Family::A, 3).unwrap());
        let t = root_tree(&a3, 2).unwrap();
        assert_eq!(t.parent, vec![Some(1), Some(2), None]);
        assert!(t.is_conical());
        assert_eq!(t.order, vec![2, 1, 0]);
        assert_eq!(t.only_child(2), Some(1));
    }

    #[test]
    fn d4_center_and_d5_far_leaf() {
        let d4 = graph_of(&builtin_gcm(Family::D, 4).unwrap());
        let t = root_tree(&d4, 1).unwrap();
        assert!(t.is_conical());
        assert_eq!((0..4).filter(|&i| t.is_leaf(i)).count(), 3);
        let d5 = graph_of(&builtin_gcm(Family::D, 5).unwrap());
        let t = root_tree(&d5, 0).unwrap();
        assert!(!t.is_conical());
    }
}
