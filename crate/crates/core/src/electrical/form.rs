//! The skew form preserved by the edge deformation of `sl_n`.
//!
//! Parameters are given as `b[k-1] = b_k` for `k = 1..n-2`, and the edge
//! generators are `u_i = e_i + b_(i-1) f_(i-1)`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::edge::edge_generators;
use super::family::GeneratorFamily;
use super::job::Task;
use super::model::Model;
use super::report::{Attachment, Check};
use super::{ElectricalError, KindArgs};
use crate::arith::{ff_kernel, ff_rank, random_assignment, rational_rank, Poly, Rational};
use crate::cartan::{builtin_gcm, Family, ParamFamily};
use crate::lie::closure_exact;
use crate::matrix::{MatrixAlgebra, PolyMatrix};

/// Skew Gram matrix with `(k,k+1)` entry `prod_(i=k)^(n-2) (-b_i)`.
pub fn omega_form(n: usize, b: &[Poly]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(n);
    for k in 0..n.saturating_sub(1) {
        // 0-based k is the 1-based k+1, so the product runs over b[k..n-2]
        let w = b[k..n - 2].iter().fold(Poly::one(), |acc, x| &acc * &(-x));
        m.set(k, k + 1, w.clone());
        m.set(k + 1, k, -w);
    }
    m
}

/// `v_1 - b_1 v_3 + b_1 b_3 v_5 - ...`.
pub fn v_one(n: usize, b: &[Poly]) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); n];
    let mut c = Poly::one();
    for k in (0..n).step_by(2) {
        v[k] = c.clone();
        if k < b.len() {
            c = &c * &(-&b[k]);
        }
    }
    v
}

/// Symbols `b1..b(n-2)`.
pub fn symbolic_b(n: usize) -> Vec<Poly> {
    (1..n.saturating_sub(1)).map(|k| Poly::var(&format!("b{k}"))).collect()
}

/// Chain family on `sl_n` (the root sits at the last vertex).
pub(crate) fn sl_edge_family(n: usize, b: &[Poly]) -> Result<GeneratorFamily, ElectricalError> {
    if n < 2 || b.len() != n - 2 {
        return Err(ElectricalError::Malformed(format!("sl_{n} needs {} chain parameters", n.saturating_sub(2))));
    }
    let gcm = builtin_gcm(Family::A, n - 1)?;
    let params = ParamFamily::edge(b.iter().enumerate().map(|(k, p)| ((k, k + 1), p.clone())));
    edge_generators(&format!("TYPE_A_ROOT_{}", n - 1), &gcm, Some(&params), &KindArgs::default())
}

fn matrix_model(model: &Model) -> Result<&MatrixAlgebra, String> {
    match model {
        Model::Matrix(m) => Ok(m),
        other => Err(format!("needs the matrix model, got {}", other.backend_name())),
    }
}

fn eval_gens(alg: &MatrixAlgebra, fam: &GeneratorFamily) -> Result<Vec<PolyMatrix>, String> {
    fam.gens.iter().map(|g| g.eval(alg).map_err(|e| e.to_string())).collect()
}

fn first_nonzero(v: &[Poly]) -> Option<String> {
    v.iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("component v{}: {p}", k + 1))
}

fn invariance(x: &PolyMatrix, omega: &PolyMatrix) -> Option<String> {
    let d = x.transpose().mul(omega).add(&omega.mul(x));
    let first = d.entries().next().map(|((r, c), p)| format!("entry ({},{}): {p}", r + 1, c + 1));
    first
}

/// Form checks for `sl_n`: nondegeneracy or kernel, invariance, and the
/// distinguished vector.
pub fn form_tasks(n: usize, b: &[Poly]) -> Result<Vec<Task>, ElectricalError> {
    let fam = sl_edge_family(n, b)?;
    let omega = omega_form(n, b);
    let mut tasks = Vec::new();

    let om = omega.clone();
    tasks.push(Task::custom("form omega", 0, move |_, _| {
        let skew = om.add(&om.transpose()).is_zero();
        let rank = ff_rank(&om.rows()).map(|e| e.rank);
        let want = n - n % 2;
        let check = match rank {
            Err(e) => Check::error("form omega", "omega^T = -omega, rank n - (n mod 2)", e),
            Ok(r) => Check::expect("form omega", "omega^T = -omega, rank n - (n mod 2)", skew && r == want, || {
                format!("skew: {skew}, rank {r}, expected {want}")
            }),
        };
        vec![check.with_data(Attachment::Matrix { rows: om.to_strings() })]
    }));

    for i in 0..fam.rank() {
        let (om, fam) = (omega.clone(), fam.clone());
        let name = format!("form u{} invariance", i + 1);
        tasks.push(Task::custom(name.clone(), 0, move |model, _| {
            let reference = format!("u{0}^T omega + omega u{0} = 0", i + 1);
            let check = matrix_model(model)
                .and_then(|alg| fam.gens[i].eval(alg).map_err(|e| e.to_string()))
                .map(|u| Check::identity(&name, &reference, Ok(invariance(&u, &om))));
            vec![check.unwrap_or_else(|e| Check::error(&name, &reference, e))]
        }));
    }

    if n % 2 == 0 {
        let v = v_one(n, b);
        for i in 0..fam.rank() {
            let (v, fam) = (v.clone(), fam.clone());
            let name = format!("form u{} v1", i + 1);
            tasks.push(Task::custom(name.clone(), 0, move |model, _| {
                let reference = format!("u{}(v^1) = 0, v^1 = v1 - b1 v3 + b1 b3 v5 - ...", i + 1);
                let check = matrix_model(model)
                    .and_then(|alg| fam.gens[i].eval(alg).map_err(|e| e.to_string()))
                    .and_then(|u| u.apply(&v).map_err(|e| e.to_string()))
                    .map(|w| Check::identity(&name, &reference, Ok(first_nonzero(&w))));
                vec![check.unwrap_or_else(|e| Check::error(&name, &reference, e))]
            }));
        }
    } else {
        let om = omega.clone();
        let fam = fam.clone();
        tasks.push(Task::custom("form kernel", 0, move |model, _| odd_kernel_checks(model, &om, &fam)));
    }
    Ok(tasks)
}

fn odd_kernel_checks(model: &Model, omega: &PolyMatrix, fam: &GeneratorFamily) -> Vec<Check> {
    let reference = "dim ker omega = 1";
    let kernel = match ff_kernel(&omega.rows()) {
        Ok(k) => k,
        Err(e) => return vec![Check::error("form kernel", reference, e)],
    };
    let mut out = vec![Check::expect("form kernel", reference, kernel.len() == 1, || {
        format!("kernel dimension {}", kernel.len())
    })
    .with_data(Attachment::Values {
        entries: kernel
            .first()
            .into_iter()
            .flatten()
            .enumerate()
            .map(|(k, p)| (format!("v{}", k + 1), p.to_string()))
            .collect(),
    })];
    let Some(v) = kernel.first() else { return out };
    let gens = match matrix_model(model).and_then(|alg| eval_gens(alg, fam)) {
        Ok(g) => g,
        Err(e) => {
            out.push(Check::error("form kernel stability", "u_i(ker omega) in ker omega", e));
            return out;
        }
    };
    for (i, u) in gens.iter().enumerate() {
        let name = format!("form u{} kernel", i + 1);
        let reference = format!("u{}(w) in span(w) for w spanning ker omega", i + 1);
        let check = match u.apply(v) {
            Err(e) => Check::error(&name, &reference, e),
            Ok(w) => {
                // all 2x2 minors of [v | w] vanish
                let mut bad = None;
                'outer: for r in 0..v.len() {
                    for s in r + 1..v.len() {
                        let minor = &(&v[r] * &w[s]) - &(&v[s] * &w[r]);
                        if !minor.is_zero() {
                            bad = Some(format!("minor ({},{}): {minor}", r + 1, s + 1));
                            break 'outer;
                        }
                    }
                }
                Check::identity(&name, &reference, Ok(bad))
            }
        };
        out.push(check);
    }
    out
}

/// For even `n` and a random nonzero specialization of `b`: the generated
/// subalgebra, the stabilizer of `v^1` in `sp(omega)`, and the solution space
/// of the linear conditions all have dimension `n(n+1)/2 - n`.
pub fn sp_identification_task(n: usize) -> Task {
    let name = format!("sp identification n={n}");
    Task::custom(name.clone(), n, move |model, seed| {
        let want = n * (n + 1) / 2 - n;
        let reference = format!("dim sl_{n}^(b) = dim Stab_sp(omega)(v^1) = {want}");
        if n % 2 == 1 || n < 2 {
            return vec![Check::error(&name, &reference, "n must be even")];
        }
        let symbols = symbolic_b(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = symbols.iter().flat_map(Poly::vars);
        let asg = random_assignment(vars, &mut rng);
        let b: Vec<Poly> = symbols.iter().map(|p| Poly::constant(p.eval(&asg).expect("assigned"))).collect();
        let values = Attachment::Values {
            entries: asg.iter().map(|(v, r)| (v.to_string(), r.to_string())).collect(),
        };
        let alg = match matrix_model(model) {
            Ok(a) => a,
            Err(e) => return vec![Check::error(&name, &reference, e)],
        };
        let (omega, v) = (omega_form(n, &b), v_one(n, &b));
        let basis = sl_edge_family(n, &b)
            .map_err(|e| e.to_string())
            .and_then(|fam| eval_gens(alg, &fam))
            .and_then(|gens| closure_exact(alg, &gens, 4 * n, false).map_err(|e| e.to_string()));
        let (dims, basis) = match basis {
            Ok((dims, _, basis)) => (dims, basis),
            Err(e) => return vec![Check::error(&name, &reference, e)],
        };
        let total: usize = dims.iter().sum();
        let mut out = vec![Check::expect(format!("{name} closure"), &reference, total == want, || {
            format!("closure dimension {total}")
        })
        .generic(true)
        .with_data(values)];
        let stray = basis.iter().find_map(|x| {
            invariance(x, &omega).or_else(|| x.apply(&v).ok().and_then(|w| first_nonzero(&w)))
        });
        out.push(Check::identity(
            format!("{name} membership"),
            "X^T omega + omega X = 0 and X v^1 = 0 on the closure",
            Ok(stray),
        ));
        let nullity = stabilizer_dimension(&omega, &v);
        out.push(match nullity {
            Ok(d) => Check::expect(format!("{name} linear system"), &reference, d == want, || {
                format!("solution space of dimension {d}")
            })
            .generic(true),
            Err(e) => Check::error(format!("{name} linear system"), &reference, e),
        });
        out
    })
}

/// Dimension of `{X in gl_n : X^T omega + omega X = 0, X v = 0}` for numeric
/// `omega` and `v`.
fn stabilizer_dimension(omega: &PolyMatrix, v: &[Poly]) -> Result<usize, String> {
    let n = omega.size();
    let num = |p: &Poly| p.as_constant().ok_or_else(|| format!("{p} is not a number"));
    let var = |r: usize, c: usize| r * n + c;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // (X^T omega + omega X)_(r,c) = sum_k X_(k,r) omega_(k,c) + omega_(r,k) X_(k,c)
    for r in 0..n {
        for c in 0..n {
            let mut row = vec![Rational::default(); n * n];
            for k in 0..n {
                row[var(k, r)] += num(omega.get(k, c))?;
                row[var(k, c)] += num(omega.get(r, k))?;
            }
            rows.push(row);
        }
    }
    for r in 0..n {
        let mut row = vec![Rational::default(); n * n];
        for c in 0..n {
            row[var(r, c)] += num(&v[c])?;
        }
        rows.push(row);
    }
    let rank = rational_rank(&rows).map_err(|e| e.to_string())?;
    Ok(n * n - rank)
}

/// `(name, value)` pairs of a parameter vector, for report headers.
pub fn describe_b(b: &[Poly]) -> BTreeMap<String, String> {
    b.iter().enumerate().map(|(k, p)| (format!("b{}", k + 1), p.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn small_forms() {
        assert_eq!(omega_form(2, &[]).rows(), vec![vec![p("0"), p("1")], vec![p("-1"), p("0")]]);
        let m = omega_form(3, &[p("1")]);
        assert_eq!((m.get(0, 1).clone(), m.get(1, 2).clone()), (p("-1"), p("1")));
    }

    #[test]
    fn distinguished_vector() {
        let b = symbolic_b(6);
        assert_eq!(v_one(4, &b[..2]), vec![p("1"), p("0"), p("-b1"), p("0")]);
        assert_eq!(v_one(6, &b), vec![p("1"), p("0"), p("-b1"), p("0"), p("b1*b3"), p("0")]);
    }

    #[test]
    fn form_tasks_pass_for_n_up_to_five() {
        use crate::electrical::{run_job, AlgebraSpec, Job, RunOptions};
        for n in 2..=5 {
            let tasks = form_tasks(n, &symbolic_b(n)).unwrap();
            let job = Job::new("form", AlgebraSpec::builtin(Family::A, n - 1).unwrap()).with_tasks(tasks);
            let report = run_job(&job, &RunOptions::default());
            assert!(report.passed(), "n={n}: {:#?}", report.checks);
        }
    }
}
