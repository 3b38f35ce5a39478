//! Filtered dimension comparison between a deformed family and its
//! parameter-zero limit.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::family::GeneratorFamily;
use super::job::Task;
use super::report::{Attachment, Check, Status};
use crate::arith::Rational;
use crate::lie::{closure_exact, subalgebra_closure, LieAlgebra, LieError, SparseEchelon};
use crate::with_model;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatnessOptions {
    pub max_degree: usize,
    /// Compare only up to `max_degree` instead of requiring stabilization.
    pub bounded: bool,
}

impl Default for FlatnessOptions {
    fn default() -> Self {
        FlatnessOptions {
            max_degree: 40,
            bounded: false,
        }
    }
}

impl FlatnessOptions {
    /// Per-degree comparison up to degree 6, for infinite-dimensional cases.
    pub fn affine() -> Self {
        FlatnessOptions {
            max_degree: 6,
            bounded: true,
        }
    }
}

fn compare<A: LieAlgebra>(
    alg: &A,
    fam: &GeneratorFamily,
    opts: FlatnessOptions,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>, bool), LieError> {
    let eval = |f: &GeneratorFamily| f.gens.iter().map(|g| g.eval(alg)).collect::<Result<Vec<_>, _>>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deformed = subalgebra_closure(alg, &eval(fam)?, opts.max_degree, opts.bounded, &mut rng)?;
    let (undeformed, _, _) = closure_exact(alg, &eval(&fam.zeroed())?, opts.max_degree, opts.bounded)?;
    Ok((deformed.per_degree, undeformed, deformed.generic))
}

/// `gr` of the generated subalgebra has the same dimension as the
/// undeformed one in every filtration degree.
pub fn flatness_task(fam: &GeneratorFamily, opts: FlatnessOptions) -> Task {
    let name = format!("{} flatness", fam.name);
    let fam = fam.clone();
    let reference = if opts.bounded {
        format!("dim F_d B = dim F_d n for d <= {}", opts.max_degree)
    } else {
        "dim F_d B = dim F_d n for all d".to_string()
    };
    Task::custom(name.clone(), opts.max_degree, move |model, seed| {
        let outcome = with_model!(model, alg => compare(alg, &fam, opts, seed));
        let check = match outcome {
            Err(e) => Check::error(&name, &reference, e),
            Ok((deformed, undeformed, generic)) => {
                let ok = deformed == undeformed;
                Check::expect(&name, &reference, ok, || {
                    let d = deformed.iter().zip(&undeformed).position(|(x, y)| x != y);
                    match d {
                        Some(k) => format!("degree {}: {} vs {}", k + 1, deformed[k], undeformed[k]),
                        None => format!("{} vs {} degrees", deformed.len(), undeformed.len()),
                    }
                })
                .generic(generic)
                .with_data(Attachment::Dimensions { deformed, undeformed })
            }
        };
        vec![check]
    })
}

fn coords<A: LieAlgebra>(alg: &A, x: &A::Elem) -> Result<BTreeMap<A::Key, Rational>, LieError> {
    alg.components(x)
        .into_iter()
        .map(|(k, p)| {
            p.as_constant()
                .map(|c| (k, c))
                .ok_or_else(|| LieError::Unsupported(format!("coefficient {p} is not a number")))
        })
        .collect()
}

/// Dimension of the span of `seeds` closed under `ad g` for every `g` in
/// `gens`; coefficients must be numeric. With `seeds` a single element this
/// is the ideal it generates in the subalgebra generated by `gens`.
pub fn ideal_dimensions<A: LieAlgebra>(
    alg: &A,
    seeds: &[A::Elem],
    gens: &[A::Elem],
    max_degree: usize,
) -> Result<Vec<usize>, LieError> {
    let mut span = SparseEchelon::new();
    let mut new = Vec::new();
    for s in seeds {
        if span.insert(&coords(alg, s)?) {
            new.push(s.clone());
        }
    }
    let mut dims = vec![new.len()];
    while !new.is_empty() {
        if dims.len() == max_degree {
            return Err(LieError::NoStabilization(max_degree));
        }
        let mut next = Vec::new();
        for g in gens {
            for x in &new {
                let y = alg.bracket(g, x)?;
                if span.insert(&coords(alg, &y)?) {
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            dims.push(next.len());
        }
        new = next;
    }
    Ok(dims)
}

/// Status of a dimension count against an expected value.
pub(crate) fn dimension_check(name: &str, reference: &str, got: Result<usize, LieError>, want: usize) -> Check {
    match got {
        Ok(d) if d == want => Check::new(name, reference, Status::GenericPass),
        Ok(d) => Check::new(name, reference, Status::Fail).with_witness(format!("dimension {d}, expected {want}")),
        Err(e) => Check::error(name, reference, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin_gcm, Family, ParamFamily};
    use crate::electrical::family::vertex_generators;
    use crate::electrical::job::{run_job, Job, RunOptions};
    use crate::electrical::model::AlgebraSpec;

    #[test]
    fn a3_vertex_dimensions() {
        let g = builtin_gcm(Family::A, 3).unwrap();
        let fam = vertex_generators(&g, &ParamFamily::symbolic_vertex(&g));
        let job = Job::new("flat", AlgebraSpec::builtin(Family::A, 3).unwrap())
            .with_tasks([flatness_task(&fam, FlatnessOptions::default())]);
        let report = run_job(&job, &RunOptions::default());
        let check = &report.checks[0];
        assert_eq!(check.status, Status::GenericPass, "{check:?}");
        assert_eq!(
            check.data,
            Some(Attachment::Dimensions {
                deformed: vec![3, 2, 1],
                undeformed: vec![3, 2, 1]
            })
        );
    }
}
