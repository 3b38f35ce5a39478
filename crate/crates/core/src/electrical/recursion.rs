//! Iterated vertex generators and the local relations of edge chains.

use super::family::vertex_u;
use super::job::Task;
use super::ElectricalError;
use crate::arith::{binomial, factorial, Poly};
use crate::cartan::{Gcm, ParamFamily};
use crate::lie::LieExpr;

use LieExpr::{E, F};

fn lin(terms: Vec<(Poly, LieExpr)>) -> LieExpr {
    LieExpr::sum(terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
}

/// `(1/k!) (ad x_i)^k x_j`.
fn divided(x: fn(usize) -> LieExpr, i: usize, k: usize, j: usize) -> LieExpr {
    LieExpr::scaled(Poly::constant(factorial(0) / factorial(k)), LieExpr::ad_pow(x(i), k, x(j)))
}

/// `u_(i^r j) = sum_k a_i^(r-k) C(a_ij+r-1, r-k) (e_(i^k j) - (-1)^r a_i^(2k) a_j^2 f_(i^k j))`.
pub fn iterated_u(gcm: &Gcm, a: &ParamFamily, i: usize, r: usize, j: usize) -> LieExpr {
    let (ai, aj) = (a.a(i), a.a(j));
    let sign = if r % 2 == 0 { Poly::int(-1) } else { Poly::one() };
    let mut terms = Vec::new();
    for k in 0..=r {
        let c = &ai.pow((r - k) as u32) * &Poly::constant(binomial(gcm.a(i, j) + r as i64 - 1, (r - k) as i64));
        if c.is_zero() {
            continue;
        }
        let fc = &(&sign * &ai.pow(2 * k as u32)) * &(&aj * &aj);
        terms.push((c.clone(), divided(E, i, k, j)));
        terms.push((&c * &fc, divided(F, i, k, j)));
    }
    lin(terms)
}

/// Recursion `[u_i, u_(i^r j)] = (r+1) u_(i^(r+1) j)` for `1 <= r <= -a_ij`,
/// vanishing at `r = 1 - a_ij`, and the expansion of `[u_i, u_j]`.
pub fn recursion_tasks(gcm: &Gcm, a: &ParamFamily) -> Vec<Task> {
    let l = |i: usize| gcm.label(i);
    let mut tasks = Vec::new();
    for (i, j) in gcm.ordered_pairs() {
        let m = -gcm.a(i, j);
        if m == 0 {
            continue;
        }
        let (ui, uj) = (vertex_u(i, &a.a(i)), vertex_u(j, &a.a(j)));
        let first = lin(vec![
            (Poly::one(), iterated_u(gcm, a, i, 1, j)),
            (-(&a.a(j) * &Poly::int(gcm.a(j, i))), E(i)),
            (-(&a.a(j) * &Poly::int(gcm.a(j, i))) * a.a(i).pow(2), F(i)),
        ]);
        tasks.push(Task::equal(
            format!("iterated u{},u{} expansion", l(i), l(j)),
            format!("[u{0},u{1}] = u_({0}{1}) - a{1} a_({1}{0}) (e{0} + a{0}^2 f{0})", l(i), l(j)),
            LieExpr::br(ui.clone(), uj),
            first,
        ));
        for r in 1..=m as usize {
            tasks.push(Task::equal(
                format!("iterated u{}^{r} u{}", l(i), l(j)),
                format!("[u{0},u_({0}^{r} {1})] = {2} u_({0}^{3} {1})", l(i), l(j), r + 1, r + 1),
                LieExpr::br(ui.clone(), iterated_u(gcm, a, i, r, j)),
                LieExpr::scaled(Poly::int(r as i64 + 1), iterated_u(gcm, a, i, r + 1, j)),
            ));
        }
        let top = m as usize + 1;
        tasks.push(Task::vanish(
            format!("iterated u{}^{top} u{} vanishes", l(i), l(j)),
            format!("u_({0}^{top} {1}) = 0", l(i), l(j)),
            iterated_u(gcm, a, i, top, j),
        ));
    }
    tasks
}

fn is_chain(gcm: &Gcm) -> bool {
    gcm.ordered_pairs()
        .into_iter()
        .all(|(i, j)| (gcm.a(i, j) * gcm.a(j, i) != 0) == (i.abs_diff(j) == 1))
}

/// Identities for `u_i = e_i + b_(i-1) f_(i-1)` on a chain, for each `k` in
/// `powers` (at least 2).
pub fn local_relation_tasks(gcm: &Gcm, b: &ParamFamily, powers: &[usize]) -> Result<Vec<Task>, ElectricalError> {
    if !is_chain(gcm) {
        return Err(ElectricalError::Hypothesis(format!("local relations need a chain, got {gcm}")));
    }
    let n = gcm.rank();
    let l = |i: usize| gcm.label(i);
    let bb = |i: usize| b.b(i, i + 1);
    let u = |i: usize| {
        if i == 0 {
            E(0)
        } else {
            lin(vec![(Poly::one(), E(i)), (bb(i - 1), F(i - 1))])
        }
    };
    let ad = |x: LieExpr, k: usize, y: LieExpr| LieExpr::ad_pow(x, k, y);
    let mut tasks = Vec::new();
    for &k in powers.iter().filter(|&&k| k >= 2) {
        let two = |c: Poly| if k == 2 { &Poly::int(-2) * &c } else { Poly::zero() };
        if n >= 2 {
            tasks.push(Task::equal(
                format!("local (a) u{}^{k} u{}", l(0), l(1)),
                format!("(ad u{0})^{k}(u{1}) = (ad e{0})^{k}(e{1}) - 2 delta_(k,2) b{0} u{0}", l(0), l(1)),
                ad(u(0), k, u(1)),
                lin(vec![(Poly::one(), ad(E(0), k, E(1))), (two(bb(0)), u(0))]),
            ));
            let shift = Poly::int(gcm.a(0, 1) + 1);
            tasks.push(Task::equal(
                format!("local (a) u{}^{k} u{}", l(1), l(0)),
                format!(
                    "(ad u{1})^{k}(u{0}) = (ad e{1})^{k}(e{0}) - 2 delta_(k,2) b{0} (u{1} - (a_({0}{1})+1) e{1})",
                    l(0),
                    l(1)
                ),
                ad(u(1), k, u(0)),
                lin(vec![
                    (Poly::one(), ad(E(1), k, E(0))),
                    (two(bb(0)), u(1)),
                    (-two(&bb(0) * &shift), E(1)),
                ]),
            ));
        }
        for i in 1..n.saturating_sub(1) {
            let (p, s) = (i - 1, i + 1);
            let shift = Poly::int(gcm.a(i, p) + 1);
            tasks.push(Task::equal(
                format!("local (b) u{}^{k} u{}", l(i), l(s)),
                format!(
                    "(ad u{1})^{k}(u{2}) = (ad e{1})^{k}(e{2}) + b{0}^{k} b{1} (ad f{0})^{k}(f{1}) - 2 delta_(k,2) b{1} (u{1} - b{0} (a_({1}{0})+1) f{0})",
                    l(p),
                    l(i),
                    l(s)
                ),
                ad(u(i), k, u(s)),
                lin(vec![
                    (Poly::one(), ad(E(i), k, E(s))),
                    (&bb(p).pow(k as u32) * &bb(i), ad(F(p), k, F(i))),
                    (two(bb(i)), u(i)),
                    (-two(&(&bb(i) * &bb(p)) * &shift), F(p)),
                ]),
            ));
            let shift = Poly::int(gcm.a(i, s) + 1);
            tasks.push(Task::equal(
                format!("local (b) u{}^{k} u{}", l(s), l(i)),
                format!(
                    "(ad u{2})^{k}(u{1}) = (ad e{2})^{k}(e{1}) + b{1}^{k} b{0} (ad f{1})^{k}(f{0}) - 2 delta_(k,2) b{1} (u{2} - (a_({1}{2})+1) e{2})",
                    l(p),
                    l(i),
                    l(s)
                ),
                ad(u(s), k, u(i)),
                lin(vec![
                    (Poly::one(), ad(E(s), k, E(i))),
                    (&bb(i).pow(k as u32) * &bb(p), ad(F(i), k, F(p))),
                    (two(bb(i)), u(s)),
                    (-two(&bb(i) * &shift), E(s)),
                ]),
            ));
        }
    }
    for (i, j) in gcm.ordered_pairs() {
        if i < j && j - i > 1 {
            tasks.push(Task::vanish(
                format!("local (c) u{},u{}", l(i), l(j)),
                format!("[u{},u{}] = 0", l(i), l(j)),
                LieExpr::br(u(i), u(j)),
            ));
        }
    }
    Ok(tasks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family};
    use crate::electrical::{run_job, AlgebraSpec, Job, RunOptions};

    #[test]
    fn undeformed_iterated_u_is_divided_power() {
        let g = builtin_gcm(Family::G, 2).unwrap();
        let zero = ParamFamily::symbolic_vertex(&g).zeroed();
        let x = iterated_u(&g, &zero, 1, 2, 0);
        let job = Job::new("t", AlgebraSpec::builtin(Family::G, 2).unwrap())
            .with_tasks([Task::equal("t", "t", x, divided(E, 1, 2, 0))]);
        assert!(run_job(&job, &RunOptions::default()).passed());
    }

    #[test]
    fn a2_recursion_and_local_relations() {
        let g = builtin_gcm(Family::A, 2).unwrap();
        let job = Job::new("t", AlgebraSpec::builtin(Family::A, 2).unwrap())
            .with_tasks(recursion_tasks(&g, &ParamFamily::symbolic_vertex(&g)));
        let report = run_job(&job, &RunOptions::default());
        assert!(report.passed(), "{:#?}", report.checks);

        let a4 = builtin_gcm(Family::A, 4).unwrap();
        let tasks = local_relation_tasks(&a4, &ParamFamily::symbolic_edge(&a4), &[2, 3]).unwrap();
        let report = run_job(&Job::new("t", AlgebraSpec::builtin(Family::A, 4).unwrap()).with_tasks(tasks), &RunOptions::default());
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn non_chains_are_rejected() {
        let d4 = builtin_gcm(Family::D, 4).unwrap();
        assert!(local_relation_tasks(&d4, &ParamFamily::symbolic_edge(&d4), &[2]).is_err());
    }
}
