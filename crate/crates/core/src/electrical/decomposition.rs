//! Splitting the edge deformation of `sp_2n` into an `sl_n` part and an
//! abelian-like ideal, and the second chain `u'` hidden inside it.
//!
//! Parameters are `b[k-1] = b_k` for `k = 1..n-1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::edge::edge_generators;
use super::family::{edge_consts, GeneratorFamily};
use super::flatness::{dimension_check, ideal_dimensions};
use super::job::Task;
use super::report::{Attachment, Check};
use super::{ElectricalError, KindArgs};
use crate::arith::{random_assignment, Poly};
use crate::cartan::{builtin_gcm, Family, ParamFamily};
use crate::lie::{closure_exact, LieAlgebra, LieError, LieExpr};
use crate::with_model;

fn c_chain(n: usize, b: &[Poly]) -> Result<GeneratorFamily, ElectricalError> {
    let gcm = builtin_gcm(Family::C, n)?;
    let params = ParamFamily::edge(b.iter().enumerate().map(|(k, p)| ((k, k + 1), p.clone())));
    edge_generators("C_CHAIN", &gcm, Some(&params), &KindArgs::default())
}

/// `b'_k = -2^(2(n-k)+1) prod_(i=k)^(n-1) b_i^2` for `k = 1..n-1`.
pub fn sp_prime_params(n: usize, b: &[Poly]) -> Vec<Poly> {
    (1..n)
        .map(|k| {
            let prod = b[k - 1..n - 1].iter().fold(Poly::one(), |acc, x| &acc * &(x * x));
            &Poly::int(-(1i64 << (2 * (n - k) + 1))) * &prod
        })
        .collect()
}

/// `u'_n = u_n`, `u'_k = (ad u_k)^2 u'_(k+1)`.
fn prime_chain(u: &[LieExpr]) -> Vec<LieExpr> {
    let n = u.len();
    let mut out = vec![LieExpr::Zero; n];
    out[n - 1] = u[n - 1].clone();
    for k in (0..n - 1).rev() {
        out[k] = LieExpr::ad_pow(u[k].clone(), 2, out[k + 1].clone());
    }
    out
}

/// `u''_(n-k) = u'_(n-k) + (-2)^(k+1) (prod_(i=1)^k b_(n-i)) u_(n-k)` for
/// `k = 1..n-1`, indexed by position `n-k-1`.
fn shifted_chain(u: &[LieExpr], prime: &[LieExpr], b: &[Poly]) -> Vec<(usize, LieExpr)> {
    let n = u.len();
    (1..n)
        .map(|k| {
            let pos = n - k - 1;
            let prod = (1..=k).fold(Poly::one(), |acc, i| &acc * &b[n - i - 1]);
            let c = &Poly::int((-2i64).pow(k as u32 + 1)) * &prod;
            (pos, LieExpr::sum(vec![(Poly::one(), prime[pos].clone()), (c, u[pos].clone())]))
        })
        .collect()
}

fn chain_relation(x: &[LieExpr], consts: &[Poly], i: usize, j: usize) -> LieExpr {
    if i.abs_diff(j) > 1 {
        return LieExpr::br(x[i].clone(), x[j].clone());
    }
    LieExpr::sum(vec![
        (Poly::one(), LieExpr::ad_pow(x[i].clone(), 2, x[j].clone())),
        (&Poly::int(2) * &consts[i.min(j)], x[i].clone()),
    ])
}

/// Reads `c` off `x = c y` at the first coordinate of `y`, then confirms
/// `x = c y` everywhere.
fn ratio_of<A: LieAlgebra>(alg: &A, x: &LieExpr, y: &LieExpr) -> Result<Result<Poly, String>, LieError> {
    let (xv, yv) = (x.eval(alg)?, y.eval(alg)?);
    let Some((key, lead)) = alg.components(&yv).into_iter().next() else {
        return Ok(Err("u' vanishes".into()));
    };
    let top = alg
        .components(&xv)
        .into_iter()
        .find(|(k, _)| *k == key)
        .map(|(_, p)| p)
        .unwrap_or_default();
    let Some(c) = top.div_exact(&lead) else {
        return Ok(Err(format!("{top} is not a multiple of {lead}")));
    };
    let rest = alg.sub(&xv, &alg.scale(&c, &yv));
    Ok(match alg.witness(&rest) {
        None => Ok(c),
        Some(w) => Err(format!("not proportional, {w}")),
    })
}

/// All checks of the decomposition for `sp_2n`; every `b_i` must be nonzero.
pub fn sp_decomposition_tasks(n: usize, b: &[Poly]) -> Result<Vec<Task>, ElectricalError> {
    if n < 2 || b.len() != n - 1 {
        return Err(ElectricalError::Malformed(format!("sp_{} needs {} chain parameters", 2 * n, n.saturating_sub(1))));
    }
    if let Some(k) = b.iter().position(Poly::is_zero) {
        return Err(ElectricalError::Degenerate(format!(
            "the decomposition requires all b_i nonzero, b{} = 0",
            k + 1
        )));
    }
    let fam = c_chain(n, b)?;
    let u = fam.gens.clone();
    let mut tasks = Vec::new();

    // the sl_n part keeps the type A presentation
    let sl = GeneratorFamily {
        name: format!("sl_{n} part"),
        gcm: builtin_gcm(Family::A, n - 1)?,
        effective: builtin_gcm(Family::A, n - 1)?,
        params: fam.params.clone(),
        gens: u[..n - 1].to_vec(),
        consts: edge_consts(&builtin_gcm(Family::A, n - 1)?, &fam.params),
    };
    if n > 2 {
        tasks.extend(sl.relation_tasks());
    }

    tasks.push(dimension_task(n, &fam));

    let prime = prime_chain(&u);
    let bp = sp_prime_params(n, b);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let reference = if i.abs_diff(j) > 1 {
                format!("[u'{},u'{}] = 0", i + 1, j + 1)
            } else {
                format!("(ad u'{0})^2(u'{1}) + 2 b'{2} u'{0} = 0, b'{2} = {3}", i + 1, j + 1, i.min(j) + 1, bp[i.min(j)])
            };
            tasks.push(Task::vanish(
                format!("u' relation u'{},u'{}", i + 1, j + 1),
                reference,
                chain_relation(&prime, &bp, i, j),
            ));
        }
    }

    for i in 0..n - 1 {
        let x = LieExpr::ad_pow(prime[i].clone(), 2, prime[i + 1].clone());
        let y = prime[i].clone();
        let want = bp[i].clone();
        let name = format!("b'{} extracted", i + 1);
        let demand = super::model::height_span(&x);
        tasks.push(Task::custom(name.clone(), demand, move |model, _| {
            let reference = format!("(ad u'{0})^2(u'{1}) = -2 b'{0} u'{0} with b'{0} = {2}", i + 1, i + 2, want);
            let got = with_model!(model, alg => ratio_of(alg, &x, &y));
            let check = match got {
                Err(e) => Check::error(&name, &reference, e),
                Ok(Err(w)) => Check::error(&name, &reference, w),
                Ok(Ok(c)) => {
                    let extracted = c.scale(&crate::arith::ratio(-1, 2));
                    let ok = extracted == want;
                    Check::expect(&name, &reference, ok, || format!("extracted b'{} = {extracted}", i + 1)).with_data(
                        Attachment::Values {
                            entries: [(format!("b'{}", i + 1), extracted.to_string())].into(),
                        },
                    )
                }
            };
            vec![check]
        }));
    }

    for (pos, v) in shifted_chain(&u, &prime, b) {
        for j in (0..n).filter(|&j| j != pos) {
            tasks.push(Task::vanish(
                format!("u''{} commutes with u'{}", pos + 1, j + 1),
                format!("[u''{},u'{}] = 0", pos + 1, j + 1),
                LieExpr::br(v.clone(), prime[j].clone()),
            ));
        }
    }
    Ok(tasks)
}

fn dimension_task(n: usize, fam: &GeneratorFamily) -> Task {
    let fam = fam.clone();
    let demand = 2 * n;
    Task::custom("sp dimensions", demand, move |model, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = fam.specialize(&random_assignment(fam.vars(), &mut rng));
        let sl_ref = format!("dim sl_{n}^(b) = {}", n * (n - 1) / 2);
        let j_ref = format!("dim J = dim S^2 V = {}", n * (n + 1) / 2);
        let all_ref = format!("dim sl_{n}^(b) + dim J = dim n(sp_{}) = {}", 2 * n, n * n);
        with_model!(model, alg => {
            let gens: Result<Vec<_>, _> = fam.gens.iter().map(|g| g.eval(alg)).collect();
            match gens {
                Err(e) => vec![Check::error("sp dimensions", "evaluate the generators", e)],
                Ok(gens) => {
                    let sl = closure_exact(alg, &gens[..n - 1], 4 * n, false).map(|r| r.0.iter().sum());
                    let j = ideal_dimensions(alg, &gens[n - 1..], &gens, 4 * n).map(|d| d.iter().sum());
                    let all = closure_exact(alg, &gens, 4 * n, false).map(|r| r.0.iter().sum());
                    vec![
                        dimension_check("sl part dimension", &sl_ref, sl, n * (n - 1) / 2),
                        dimension_check("J dimension", &j_ref, j, n * (n + 1) / 2),
                        dimension_check("total dimension", &all_ref, all, n * n),
                    ]
                }
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_parameters_for_sp6() {
        let b = vec![Poly::var("b1"), Poly::var("b2")];
        let bp = sp_prime_params(3, &b);
        assert_eq!(bp, vec![Poly::parse("-32*b1^2*b2^2").unwrap(), Poly::parse("-8*b2^2").unwrap()]);
    }

    #[test]
    fn degenerate_parameters_are_refused() {
        let b = vec![Poly::var("b1"), Poly::zero()];
        let err = sp_decomposition_tasks(3, &b).err().unwrap().to_string();
        assert!(err.contains("nonzero"), "{err}");
    }
}
