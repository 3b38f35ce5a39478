use std::collections::BTreeMap;

use super::family::{vertex_generators, GeneratorFamily};
use super::job::Task;
use super::model::AlgebraSpec;
use super::ElectricalError;
use crate::arith::Poly;
use crate::cartan::{graph_of, root_tree, Family, Gcm, ParamFamily, RootedTree};
use crate::lie::LieExpr;

use LieExpr::{E, F};

const SERIES_TERMS: usize = 64;

/// `Ad(g)(y)` for `g = exp(s_1 x_1) ... exp(s_k x_k)`; the rightmost factor
/// acts first.
pub fn ad_chain(factors: &[(Poly, LieExpr)], y: LieExpr) -> LieExpr {
    factors
        .iter()
        .rev()
        .fold(y, |acc, (s, x)| LieExpr::ad_exp(s.clone(), x.clone(), acc))
}

fn lin(terms: Vec<(Poly, LieExpr)>) -> LieExpr {
    LieExpr::sum(terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
}

fn br(x: LieExpr, y: LieExpr) -> LieExpr {
    LieExpr::br(x, y)
}

fn one() -> Poly {
    Poly::one()
}

fn series(x: LieExpr, y: LieExpr, m0: usize, p: usize, q: usize, c: Poly, s: Poly) -> LieExpr {
    LieExpr::AdSeries {
        x: Box::new(x),
        y: Box::new(y),
        m0,
        p,
        q,
        c,
        s,
        max_terms: SERIES_TERMS,
    }
}

/// Which group element conjugates the vertex generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugationScheme {
    /// `sl_n`, `g = e^{a_{n-1} f_{n-1}} ... e^{a_1 f_1}`.
    Chain { n: usize },
    /// `sl_4`, `g = e^{a2 f2} e^{a1 f1} e^{a3 f3}`.
    MiddleFirst,
    /// `sl_4`, `g = e^{a1 f1} e^{a3 f3} e^{a2 f2}`.
    MiddleLast,
    /// Conical tree rooted at position `root`.
    Conical { spec: AlgebraSpec, root: usize },
    /// Conical tree with leaves `j_plus` (positions) attached to the root.
    Peacock {
        spec: AlgebraSpec,
        root: usize,
        j_plus: Vec<usize>,
    },
}

impl ConjugationScheme {
    pub fn spec(&self) -> Result<AlgebraSpec, ElectricalError> {
        match self {
            ConjugationScheme::Chain { n } => AlgebraSpec::builtin(Family::A, n.saturating_sub(1)),
            ConjugationScheme::MiddleFirst | ConjugationScheme::MiddleLast => AlgebraSpec::builtin(Family::A, 3),
            ConjugationScheme::Conical { spec, .. } | ConjugationScheme::Peacock { spec, .. } => Ok(spec.clone()),
        }
    }

    /// Edge parameters produced by the conjugation, in terms of the `a_i`.
    pub fn params(&self) -> BTreeMap<String, String> {
        let a = |i: usize| Poly::var(&format!("a{i}"));
        let neg = |p: Poly| (-p).to_string();
        let mut out = BTreeMap::new();
        match self {
            ConjugationScheme::Chain { n } => {
                for i in 1..n.saturating_sub(1) {
                    out.insert(format!("b{i}"), neg(&a(i) * &a(i + 1)));
                }
            }
            ConjugationScheme::MiddleFirst | ConjugationScheme::MiddleLast => {
                out.insert("b1".into(), neg(&a(1) * &a(2)));
                out.insert("b3".into(), neg(&a(2) * &a(3)));
                if *self == ConjugationScheme::MiddleLast {
                    out.insert("b".into(), neg(&(&a(1) * &a(2)) * &a(3)));
                }
            }
            _ => {}
        }
        out
    }

    pub fn title(&self) -> String {
        match self {
            ConjugationScheme::Chain { n } => format!("chain conjugation in sl_{n}"),
            ConjugationScheme::MiddleFirst => "conjugation by e^(a2f2)e^(a1f1)e^(a3f3) in sl_4".into(),
            ConjugationScheme::MiddleLast => "conjugation by e^(a1f1)e^(a3f3)e^(a2f2) in sl_4".into(),
            ConjugationScheme::Conical { spec, root } => {
                format!("conical conjugation in {} rooted at {}", spec.name(), spec.gcm.label(*root))
            }
            ConjugationScheme::Peacock { spec, root, j_plus } => {
                let j: Vec<String> = j_plus.iter().map(|&i| spec.gcm.label(i).to_string()).collect();
                format!(
                    "peacock conjugation in {} rooted at {} with leaves {{{}}}",
                    spec.name(),
                    spec.gcm.label(*root),
                    j.join(",")
                )
            }
        }
    }
}

fn compare(gcm: &Gcm, tag: &str, factors: &[(Poly, LieExpr)], u: &[LieExpr], i: usize, rhs: LieExpr, shown: &str) -> Task {
    let l = gcm.label(i);
    Task::equal(
        format!("{tag} Ad g(u{l})"),
        format!("Ad g(u{l}) = {shown}"),
        ad_chain(factors, u[i].clone()),
        rhs,
    )
}

/// Conical tree rooted at `root`, checked for the conical shape.
pub fn conical_tree(gcm: &Gcm, root: usize) -> Result<RootedTree, ElectricalError> {
    let tree = root_tree(&graph_of(gcm), root)?;
    if !tree.is_conical() {
        return Err(ElectricalError::Malformed(format!(
            "tree rooted at {} is not conical",
            gcm.label(root)
        )));
    }
    Ok(tree)
}

/// Off-diagonal entries outside the root column lie in `{0, -1}`.
pub fn check_conical(gcm: &Gcm, root: usize) -> Result<(), ElectricalError> {
    for (i, j) in gcm.ordered_pairs() {
        if j != root && !matches!(gcm.a(i, j), 0 | -1) {
            return Err(ElectricalError::Malformed(format!(
                "a_({},{}) = {} outside {{0,-1}}",
                gcm.label(i),
                gcm.label(j),
                gcm.a(i, j)
            )));
        }
    }
    Ok(())
}

/// `e^{a_0 f_0}` followed by `e^{a_i f_i}` in breadth-first order.
pub fn conical_factors(tree: &RootedTree, a: &ParamFamily, skip: &[usize]) -> Vec<(Poly, LieExpr)> {
    tree.order
        .iter()
        .filter(|i| !skip.contains(i))
        .map(|&i| (a.a(i), F(i)))
        .collect()
}

/// Images of the vertex generators under the conical conjugation, in closed
/// form: `e_i - a_i a_c f_c` away from the root (`c` the only child), and
/// `e_0 - a_0 f - sum_m a_0^2/(m+2)! (ad X)^m T` at the root, with
/// `f = sum_children a_j f_j`, `X = f + a_0 [f_0, f]`, `T = [f, [f, f_0]]`.
pub fn conical_images(tree: &RootedTree, a: &ParamFamily) -> Vec<LieExpr> {
    let r = tree.root;
    let a0 = a.a(r);
    let bold = lin(tree.children[r].iter().map(|&j| (a.a(j), F(j))).collect());
    let t = br(bold.clone(), br(bold.clone(), F(r)));
    let x = lin(vec![(one(), bold.clone()), (a0.clone(), br(F(r), bold.clone()))]);
    (0..tree.len())
        .map(|i| {
            if i == r {
                lin(vec![
                    (one(), E(r)),
                    (-a0.clone(), bold.clone()),
                    (one(), series(x.clone(), t.clone(), 0, 0, 2, -(&a0 * &a0), one())),
                ])
            } else {
                match tree.only_child(i) {
                    Some(c) => lin(vec![(one(), E(i)), (-(&a.a(i) * &a.a(c)), F(c))]),
                    None => E(i),
                }
            }
        })
        .collect()
}

/// The root image as displayed for stars: higher terms with `(ad X)^(k-1)`
/// and a positive sign.
fn star_literal_root(tree: &RootedTree, a: &ParamFamily) -> LieExpr {
    let r = tree.root;
    let a0 = a.a(r);
    let bold = lin(tree.children[r].iter().map(|&j| (a.a(j), F(j))).collect());
    let t = br(bold.clone(), br(bold.clone(), F(r)));
    let x = lin(vec![(one(), bold.clone()), (a0.clone(), br(F(r), bold.clone()))]);
    let sq = &a0 * &a0;
    lin(vec![
        (one(), E(r)),
        (-a0.clone(), bold),
        (sq.scale(&crate::arith::ratio(1, 2)), t.clone()),
        (one(), series(x, t, 2, 0, 1, sq, one())),
    ])
}

/// Star: every non-root vertex is a leaf joined to the root by a simple edge.
pub fn check_star(gcm: &Gcm, tree: &RootedTree) -> Result<(), ElectricalError> {
    let r = tree.root;
    for i in (0..tree.len()).filter(|&i| i != r) {
        if !tree.is_leaf(i) || tree.parent[i] != Some(r) || gcm.a(i, r) != -1 || gcm.a(r, i) != -1 {
            return Err(ElectricalError::Malformed(format!(
                "{} is not a simply laced leaf of the root",
                gcm.label(i)
            )));
        }
    }
    Ok(())
}

fn conical_tasks(gcm: &Gcm, root: usize, star: bool) -> Result<Vec<Task>, ElectricalError> {
    let tree = conical_tree(gcm, root)?;
    check_conical(gcm, root)?;
    if star {
        check_star(gcm, &tree)?;
    }
    let a = ParamFamily::symbolic_vertex(gcm);
    let u = vertex_generators(gcm, &a).gens;
    let factors = conical_factors(&tree, &a, &[]);
    let images = conical_images(&tree, &a);
    let tag = if star { "star" } else { "conical" };
    let mut tasks: Vec<Task> = (0..tree.len())
        .map(|i| {
            let shown = if i == root {
                format!("e{0} - a{0} f - sum_m a{0}^2/(m+2)! (ad X)^m T", gcm.label(i))
            } else if let Some(c) = tree.only_child(i) {
                let (l, lc) = (gcm.label(i), gcm.label(c));
                format!("e{l} - a{l}*a{lc} f{lc}")
            } else {
                format!("e{}", gcm.label(i))
            };
            compare(gcm, tag, &factors, &u, i, images[i].clone(), &shown)
        })
        .collect();
    if star {
        let l = gcm.label(root);
        tasks.push(
            compare(
                gcm,
                "star literal",
                &factors,
                &u,
                root,
                star_literal_root(&tree, &a),
                &format!("e{l} - a{l} f + a{l}^2/2 T + a{l}^2 sum_(k>=3) 1/k! (ad X)^(k-1) T"),
            )
            .diagnostic(),
        );
    }
    Ok(tasks)
}

/// Leaves in `j_plus` must hang off the root with `a_i0 = -1`; the rest of
/// the tree must be simply laced.
pub fn check_peacock(gcm: &Gcm, tree: &RootedTree, j_plus: &[usize]) -> Result<(), ElectricalError> {
    let r = tree.root;
    for &i in j_plus {
        if i >= gcm.rank() || tree.parent[i] != Some(r) || !tree.is_leaf(i) || gcm.a(i, r) != -1 {
            return Err(ElectricalError::Malformed(format!(
                "{} is not a leaf attached to the root with a_(i,0) = -1",
                gcm.label(i)
            )));
        }
    }
    for (i, j) in gcm.ordered_pairs() {
        if !j_plus.contains(&i) && !j_plus.contains(&j) && j != r && !matches!(gcm.a(i, j), 0 | -1) {
            return Err(ElectricalError::Malformed(format!(
                "a_({},{}) = {} outside {{0,-1}}",
                gcm.label(i),
                gcm.label(j),
                gcm.a(i, j)
            )));
        }
    }
    Ok(())
}

/// `e^{f_+} e^{a_0 f_0} prod e^{a_i f_i}` over the remaining vertices.
pub fn peacock_factors(tree: &RootedTree, a: &ParamFamily, j_plus: &[usize]) -> Vec<(Poly, LieExpr)> {
    let f_plus = lin(j_plus.iter().map(|&j| (a.a(j), F(j))).collect());
    let mut out = vec![(one(), f_plus)];
    out.extend(conical_factors(tree, a, j_plus));
    out
}

fn peacock_tasks(gcm: &Gcm, root: usize, j_plus: &[usize]) -> Result<Vec<Task>, ElectricalError> {
    let tree = conical_tree(gcm, root)?;
    check_peacock(gcm, &tree, j_plus)?;
    let a = ParamFamily::symbolic_vertex(gcm);
    let u = vertex_generators(gcm, &a).gens;
    let factors = peacock_factors(&tree, &a, j_plus);
    let r = root;
    let a0 = a.a(r);
    let f_plus = lin(j_plus.iter().map(|&j| (a.a(j), F(j))).collect());
    let bold = lin(tree.children[r]
        .iter()
        .filter(|j| !j_plus.contains(j))
        .map(|&j| (a.a(j), F(j)))
        .collect());
    let mut tasks = Vec::new();
    for i in 0..gcm.rank() {
        let l = gcm.label(i);
        if i == r {
            let f0p = LieExpr::ad_exp(one(), f_plus.clone(), F(r));
            let t = br(bold.clone(), br(bold.clone(), f0p.clone()));
            let x = lin(vec![(one(), bold.clone()), (a0.clone(), br(f0p.clone(), bold.clone()))]);
            let head = |extra: LieExpr| {
                lin(vec![
                    (one(), E(r)),
                    (-a0.clone(), bold.clone()),
                    (-(&a0 * &a0).scale(&crate::arith::ratio(1, 2)), t.clone()),
                    (one(), extra),
                ])
            };
            let sq = -(&a0 * &a0);
            let literal = head(series(x.clone(), t.clone(), 2, 0, 1, sq.clone(), one()));
            let shifted = head(series(x, t.clone(), 1, 0, 2, sq, one()));
            tasks.push(
                compare(gcm, "peacock literal", &factors, &u, i, literal, &format!(
                    "e{l} - a{l} f - a{l}^2/2 [f,[f,f'{l}]] - a{l}^2 sum_(k>=3) 1/k! (ad X)^(k-1) [f,[f,f'{l}]]"
                ))
                .diagnostic(),
            );
            tasks.push(
                compare(gcm, "peacock shifted", &factors, &u, i, shifted, &format!(
                    "e{l} - a{l} f - a{l}^2/2 [f,[f,f'{l}]] - a{l}^2 sum_(k>=3) 1/k! (ad X)^(k-2) [f,[f,f'{l}]]"
                ))
                .diagnostic(),
            );
        } else if j_plus.contains(&i) {
            let ai = a.a(i);
            let bi = -(&a0 * &ai);
            let others = lin(vec![(one(), f_plus.clone()), (-ai.clone(), F(i))]);
            let fp = LieExpr::ad_exp(one(), others, F(r));
            let z = br(br(F(i), fp.clone()), fp.clone());
            let y = lin(vec![(one(), fp.clone()), (ai.clone(), br(F(i), fp.clone()))]);
            let literal = lin(vec![
                (one(), E(i)),
                (bi.clone(), fp),
                (-(&bi * &bi).scale(&crate::arith::ratio(1, 2)), z.clone()),
                (one(), series(y, z, 1, 2, 2, -(&ai * &ai), a0.clone())),
            ]);
            tasks.push(
                compare(gcm, "peacock literal", &factors, &u, i, literal, &format!(
                    "e{l} + b{l} f'{l} - b{l}^2/2 [[f{l},f'{l}],f'{l}] - a{l}^2 sum_(k>=3) a0^k/k! (ad Y)^(k-2) Z"
                ))
                .diagnostic(),
            );
        } else {
            let rhs = match tree.only_child(i) {
                Some(c) => lin(vec![(one(), E(i)), (-(&a.a(i) * &a.a(c)), F(c))]),
                None => E(i),
            };
            let shown = match tree.only_child(i) {
                Some(c) => format!("e{l} - a{l}*a{0} f{0}", gcm.label(c)),
                None => format!("e{l}"),
            };
            tasks.push(compare(gcm, "peacock", &factors, &u, i, rhs, &shown));
        }
    }
    // the conjugated family is authoritative: it keeps the vertex relations
    let fam = peacock_family(gcm, root, j_plus, &a)?;
    tasks.extend(fam.relation_tasks());
    tasks.extend(fam.top_tasks());
    Ok(tasks)
}

/// Vertex generators conjugated by the peacock element.
pub fn peacock_family(
    gcm: &Gcm,
    root: usize,
    j_plus: &[usize],
    a: &ParamFamily,
) -> Result<GeneratorFamily, ElectricalError> {
    let tree = conical_tree(gcm, root)?;
    check_peacock(gcm, &tree, j_plus)?;
    let mut fam = vertex_generators(gcm, a);
    let factors = peacock_factors(&tree, a, j_plus);
    fam.gens = fam.gens.into_iter().map(|u| ad_chain(&factors, u)).collect();
    fam.name = "peacock".into();
    Ok(fam)
}

pub fn conjugation_tasks(scheme: &ConjugationScheme) -> Result<Vec<Task>, ElectricalError> {
    let spec = scheme.spec()?;
    let gcm = &spec.gcm;
    let a = ParamFamily::symbolic_vertex(gcm);
    let av = |i: usize| a.a(i);
    let u = vertex_generators(gcm, &a).gens;
    match scheme {
        ConjugationScheme::Chain { .. } => {
            let r = gcm.rank();
            let factors: Vec<(Poly, LieExpr)> = (0..r).rev().map(|i| (av(i), F(i))).collect();
            Ok((0..r)
                .map(|i| {
                    let l = gcm.label(i);
                    if i == 0 {
                        compare(gcm, "chain", &factors, &u, i, E(0), "e1")
                    } else {
                        let rhs = lin(vec![(one(), E(i)), (-(&av(i - 1) * &av(i)), F(i - 1))]);
                        compare(gcm, "chain", &factors, &u, i, rhs, &format!("e{l} - a{}*a{l} f{}", l - 1, l - 1))
                    }
                })
                .collect())
        }
        ConjugationScheme::MiddleFirst => {
            let factors = vec![(av(1), F(1)), (av(0), F(0)), (av(2), F(2))];
            let b1 = -(&av(0) * &av(1));
            let b3 = -(&av(1) * &av(2));
            let nested = br(F(0), br(F(2), F(1)));
            let middle = |sign: i64| {
                lin(vec![
                    (one(), E(1)),
                    (b1.clone(), F(0)),
                    (b3.clone(), F(2)),
                    (&Poly::int(sign) * &(&b1 * &b3), nested.clone()),
                ])
            };
            let mut tasks: Vec<Task> = (0..3)
                .map(|i| {
                    if i == 1 {
                        compare(gcm, "g'", &factors, &u, 1, middle(-1), "e2 + b1 f1 + b3 f3 - b1*b3 [f1,[f3,f2]]")
                    } else {
                        compare(gcm, "g'", &factors, &u, i, E(i), &format!("e{}", i + 1))
                    }
                })
                .collect();
            tasks.push(
                compare(gcm, "g' literal", &factors, &u, 1, middle(1), "e2 + b1 f1 + b3 f3 + b1*b3 [f1,[f3,f2]]")
                    .diagnostic(),
            );
            Ok(tasks)
        }
        ConjugationScheme::MiddleLast => {
            let factors = vec![(av(0), F(0)), (av(2), F(2)), (av(1), F(1))];
            let b = -(&(&av(0) * &av(1)) * &av(2));
            let bs = [-(&av(0) * &av(1)), Poly::zero(), -(&av(1) * &av(2))];
            let mut tasks = Vec::new();
            for i in 0..3 {
                let l = i + 1;
                if i == 1 {
                    tasks.push(compare(gcm, "g''", &factors, &u, 1, E(1), "e2"));
                    continue;
                }
                let other = 2 - i;
                let rhs = lin(vec![(one(), E(i)), (bs[i].clone(), F(1)), (b.clone(), br(F(other), F(1)))]);
                tasks.push(compare(gcm, "g''", &factors, &u, i, rhs, &format!(
                    "e{l} + b{l} f2 + b [f{},f2]",
                    other + 1
                )));
                let literal = lin(vec![(one(), E(i)), (bs[i].clone(), F(1)), (b.clone(), br(F(i), F(1)))]);
                tasks.push(
                    compare(gcm, "g'' literal", &factors, &u, i, literal, &format!("e{l} + b{l} f2 + b [f{l},f2]"))
                        .diagnostic(),
                );
            }
            Ok(tasks)
        }
        ConjugationScheme::Conical { root, .. } => conical_tasks(gcm, *root, false),
        ConjugationScheme::Peacock { root, j_plus, .. } => peacock_tasks(gcm, *root, j_plus),
    }
}

/// Star variant: the conical comparison plus the displayed star formula.
pub fn star_tasks(gcm: &Gcm, root: usize) -> Result<Vec<Task>, ElectricalError> {
    conical_tasks(gcm, root, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrical::{run_job, Job, RunOptions};

    fn run(scheme: ConjugationScheme) -> crate::electrical::VerificationReport {
        let job = Job::new(scheme.title(), scheme.spec().unwrap()).with_tasks(conjugation_tasks(&scheme).unwrap());
        run_job(&job, &RunOptions::default())
    }

    #[test]
    fn chain_sl3() {
        let r = run(ConjugationScheme::Chain { n: 3 });
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn middle_schemes() {
        for s in [ConjugationScheme::MiddleFirst, ConjugationScheme::MiddleLast] {
            let r = run(s);
            assert!(r.passed(), "{r:#?}");
            assert!(r.checks.iter().any(|c| !c.gating && !c.status.is_ok()));
        }
    }
}
