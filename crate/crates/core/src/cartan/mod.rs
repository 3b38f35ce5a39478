//! Generalized Cartan matrices and the combinatorics attached to them.
//!
//! Convention throughout the crate: `a_ij = alpha_j(h_i)`, i.e.
//! `[h_i, e_j] = a_ij e_j`. In the finite types a row containing `-2` or `-3`
//! belongs to a short root.
//!
//! Labeling of the built-in families:
//!
//! | family      | labels        | notes                                        |
//! |-------------|---------------|----------------------------------------------|
//! | `A_n`       | `1..=n`       | path                                         |
//! | `B_n`       | `1..=n`       | short root `n`, `a_{n,n-1} = -2`             |
//! | `C_n`       | `1..=n`       | long root `n`, `a_{n-1,n} = -2`              |
//! | `D_n`       | `1..=n`       | branch at `n-2`                              |
//! | `E_6..8`    | `1..=n`       | `2` attached to `4`, path `1-3-4-5-..`       |
//! | `F_4`       | `1..=4`       | `a_32 = -2`                                  |
//! | `G_2`       | `1, 2`        | `a_12 = -3`                                  |
//! | affine `A`  | `0..n`        | cycle `0-1-..-(n-1)-0`, rank argument is `n` |
//! | affine `D4` | `0..=4`       | star with center `2`                         |
//! | `RANK2(p,q)`| `1, 2`        | `[[2,-p],[-q,2]]`                            |

mod params;
mod roots;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use params::{edge_name, ParamFamily, ParamKind};
pub use roots::{finite_positive_roots, highest_root_height};
pub use tree::{graph_of, root_tree, DynkinGraph, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("not a generalized Cartan matrix: {0}")]
    Invalid(String),
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("unknown vertex label {0}")]
    UnknownLabel(usize),
}

/// A validated generalized Cartan matrix on an ordered index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gcm {
    labels: Vec<usize>,
    entries: Vec<Vec<i64>>,
}

impl Gcm {
    pub fn new(labels: Vec<usize>, entries: Vec<Vec<i64>>) -> Result<Gcm, CartanError> {
        let n = labels.len();
        if n == 0 {
            return Err(CartanError::Invalid("empty index set".into()));
        }
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(CartanError::Invalid(format!("expected a {n}x{n} matrix")));
        }
        let mut seen = labels.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            return Err(CartanError::Invalid("repeated label".into()));
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(CartanError::Invalid(format!("a_{0}{0} = {1}", labels[i], entries[i][i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(CartanError::Invalid(format!(
                        "a_{}{} = {} is positive",
                        labels[i], labels[j], entries[i][j]
                    )));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(CartanError::Invalid(format!(
                        "a_{0}{1} and a_{1}{0} have different zero pattern",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Gcm { labels, entries })
    }

    /// Labels `1..=n`.
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Result<Gcm, CartanError> {
        let labels = (1..=entries.len()).collect();
        Gcm::new(labels, entries)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Entry at positions (not labels).
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn index_of(&self, label: usize) -> Result<usize, CartanError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(CartanError::UnknownLabel(label))
    }

    /// Ordered pairs `(i, j)`, `i != j`, as positions.
    pub fn ordered_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// Restriction to a subset of positions, keeping their labels.
    pub fn restrict(&self, positions: &[usize]) -> Gcm {
        Gcm {
            labels: positions.iter().map(|&p| self.labels[p]).collect(),
            entries: positions
                .iter()
                .map(|&i| positions.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
        }
    }

    /// Plain-text format: first line the rank, then one row per line.
    pub fn parse_text(src: &str) -> Result<Gcm, CartanError> {
        let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| CartanError::Parse("empty GCM file".into()))?
            .parse()
            .map_err(|_| CartanError::Parse("first line must be the rank".into()))?;
        let rows: Vec<Vec<i64>> = lines
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|_| CartanError::Parse(format!("bad entry `{t}`"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if rows.len() != n {
            return Err(CartanError::Parse(format!("rank {n} but {} rows", rows.len())));
        }
        Gcm::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.rank());
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// Whether the graph is a path `1 - 2 - ... - n` in label order.
    pub fn is_chain(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| i == j || ((self.entries[i][j] != 0) == (i.abs_diff(j) == 1)))
        })
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    AffineA,
    AffineD4,
    Rank2(u32, u32),
}

impl Family {
    /// Whether a classical or loop matrix model exists.
    pub fn has_matrix_model(&self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D | Family::AffineA)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
            Family::F => write!(f, "F"),
            Family::G => write!(f, "G"),
            Family::AffineA => write!(f, "AFFINE_A"),
            Family::AffineD4 => write!(f, "AFFINE_D4"),
            Family::Rank2(p, q) => write!(f, "RANK2({p},{q})"),
        }
    }
}

impl FromStr for Family {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Family, CartanError> {
        let t = s.trim().to_ascii_uppercase();
        Ok(match t.as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "AFFINE_A" => Family::AffineA,
            "AFFINE_D4" => Family::AffineD4,
            _ => {
                let inner = t
                    .strip_prefix("RANK2(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| CartanError::Parse(format!("unknown family `{s}`")))?;
                let (p, q) = inner
                    .split_once(',')
                    .ok_or_else(|| CartanError::Parse(format!("RANK2 needs two entries: `{s}`")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| CartanError::Parse(format!("bad RANK2 entry `{x}`")))
                };
                Family::Rank2(parse(p)?, parse(q)?)
            }
        })
    }
}

fn path(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i][j] = -1;
    m[j][i] = -1;
}

/// Built-in GCM of a family. `rank` is ignored for `G`, `F`, `AFFINE_D4` and
/// `RANK2` when it is 0 or matches.
pub fn builtin_gcm(family: Family, rank: usize) -> Result<Gcm, CartanError> {
    let bad = || CartanError::InvalidRank {
        family: family.to_string(),
        rank,
    };
    let fixed = |want: usize| if rank == 0 || rank == want { Ok(want) } else { Err(bad()) };
    match family {
        Family::A => {
            if rank < 1 {
                return Err(bad());
            }
            Gcm::from_rows(path(rank))
        }
        Family::B | Family::C => {
            if rank < 2 {
                return Err(bad());
            }
            let mut m = path(rank);
            if family == Family::B {
                m[rank - 1][rank - 2] = -2;
            } else {
                m[rank - 2][rank - 1] = -2;
            }
            Gcm::from_rows(m)
        }
        Family::D => {
            if rank < 3 {
                return Err(bad());
            }
            let mut m = path(rank - 1);
            for row in &mut m {
                row.push(0);
            }
            m.push(vec![0; rank]);
            m[rank - 1][rank - 1] = 2;
            if rank == 3 {
                // D_3 = A_3 with the branch vertex 1 in the middle: 2 - 1 - 3
                link(&mut m, 0, 2);
            } else {
                link(&mut m, rank - 3, rank - 1);
            }
            Gcm::from_rows(m)
        }
        Family::E => {
            if !(6..=8).contains(&rank) {
                return Err(bad());
            }
            let mut m = vec![vec![0; rank]; rank];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            link(&mut m, 0, 2);
            link(&mut m, 1, 3);
            for i in 2..rank - 1 {
                link(&mut m, i, i + 1);
            }
            Gcm::from_rows(m)
        }
        Family::F => {
            fixed(4)?;
            let mut m = path(4);
            m[2][1] = -2;
            Gcm::from_rows(m)
        }
        Family::G => {
            fixed(2)?;
            Gcm::from_rows(vec![vec![2, -3], vec![-1, 2]])
        }
        Family::AffineA => {
            if rank < 2 {
                return Err(bad());
            }
            let mut m = path(rank);
            if rank == 2 {
                m[0][1] = -2;
                m[1][0] = -2;
            } else {
                link(&mut m, 0, rank - 1);
            }
            Gcm::new((0..rank).collect(), m)
        }
        Family::AffineD4 => {
            fixed(5)?;
            let mut m = vec![vec![0; 5]; 5];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            for leaf in [0, 1, 3, 4] {
                link(&mut m, 2, leaf);
            }
            Gcm::new((0..5).collect(), m)
        }
        Family::Rank2(p, q) => {
            fixed(2)?;
            Gcm::from_rows(vec![vec![2, -(p as i64)], vec![-(q as i64), 2]])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_and_rank2() {
        let a3 = builtin_gcm(Family::A, 3).unwrap();
        assert_eq!(a3.entries(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let r = builtin_gcm(Family::Rank2(1, 2), 2).unwrap();
        assert_eq!(r.entries(), &[vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn affine_a3_is_a_triangle() {
        let g = builtin_gcm(Family::AffineA, 3).unwrap();
        assert_eq!(g.labels(), &[0, 1, 2]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.a(i, j), if i == j { 2 } else { -1 });
            }
        }
    }

    #[test]
    fn b_and_c_are_transposes() {
        for n in 2..6 {
            let b = builtin_gcm(Family::B, n).unwrap();
            let c = builtin_gcm(Family::C, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(b.a(i, j), c.a(j, i));
                }
            }
            assert_eq!(b.a(n - 1, n - 2), -2);
        }
    }

    #[test]
    fn d_branch_position() {
        let d5 = builtin_gcm(Family::D, 5).unwrap();
        let deg = |i: usize| (0..5).filter(|&j| j != i && d5.a(i, j) != 0).count();
        assert_eq!(deg(2), 3);
        assert_eq!(d5.a(3, 4), 0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(builtin_gcm(Family::D, 2).is_err());
        assert!(builtin_gcm(Family::E, 5).is_err());
        assert!(Gcm::from_rows(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(Gcm::from_rows(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(Gcm::from_rows(vec![vec![1, 0], vec![0, 2]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = builtin_gcm(Family::G, 2).unwrap();
        assert_eq!(Gcm::parse_text(&g.to_text()).unwrap(), g);
        assert!(Gcm::parse_text("2\n2 -1\n").is_err());
        assert!(Gcm::parse_text("x\n").is_err());
    }

    #[test]
    fn family_names() {
        for f in [Family::A, Family::AffineA, Family::Rank2(2, 3), Family::AffineD4] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!("rank2(1, 2)".parse::<Family>().unwrap(), Family::Rank2(1, 2));
    }
}
