//! Named verification suites. Each suite expands into jobs; the registry is
//! the stable catalog exposed by `elie suites`.

use elie_core::arith::Poly;
use elie_core::cartan::{builtin_gcm, Family, Gcm, ParamFamily};
use elie_core::electrical::{
    ad_chain, conjugation_tasks, describe_b, edge_generators, flatness_task, form_tasks, local_relation_tasks,
    recursion_tasks, sp_decomposition_tasks, sp_identification_task, star_tasks, symbolic_b, vertex_generators,
    AlgebraSpec, ConjugationScheme, ElectricalError, FlatnessOptions, GeneratorFamily, Job, KindArgs, Task,
};
use elie_core::lie::LieExpr;

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    /// The statement being verified, as a formula.
    fn reference(&self) -> &'static str;
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError>;
    /// Whether every job can run in both the matrix and Kac-Moody models.
    fn shared(&self) -> bool {
        true
    }
}

fn builtin(f: Family, r: usize) -> Result<AlgebraSpec, ElectricalError> {
    AlgebraSpec::builtin(f, r)
}

/// Relations and top components of a family, as one job.
pub fn relation_job(title: String, spec: AlgebraSpec, fam: &GeneratorFamily) -> Job {
    Job::new(title, spec)
        .with_params(fam.params.describe(&fam.gcm))
        .with_tasks(fam.relation_tasks())
        .with_tasks(fam.top_tasks())
}

pub fn vertex_job(spec: AlgebraSpec) -> Job {
    let fam = vertex_generators(&spec.gcm, &ParamFamily::symbolic_vertex(&spec.gcm));
    relation_job(format!("vertex relations in {}", spec.name()), spec, &fam)
}

pub fn edge_job(tag: &str, spec: AlgebraSpec, params: Option<&ParamFamily>, args: &KindArgs) -> Result<Job, ElectricalError> {
    let fam = edge_generators(tag, &spec.gcm, params, args)?;
    Ok(relation_job(format!("{} relations in {}", fam.name, spec.name()), spec, &fam))
}

pub fn flatness_job(spec: AlgebraSpec, fam: &GeneratorFamily, opts: FlatnessOptions) -> Job {
    let mut job = Job::new(format!("{} flatness in {}", fam.name, spec.name()), spec)
        .with_params(fam.params.describe(&fam.gcm))
        .with_tasks([flatness_task(fam, opts)]);
    job.filtration = Some(opts.max_degree);
    job
}

fn vertex_flatness(spec: AlgebraSpec) -> Job {
    let fam = vertex_generators(&spec.gcm, &ParamFamily::symbolic_vertex(&spec.gcm));
    flatness_job(spec, &fam, FlatnessOptions::default())
}

fn edge_flatness(tag: &str, spec: AlgebraSpec, params: Option<&ParamFamily>, opts: FlatnessOptions) -> Result<Job, ElectricalError> {
    let fam = edge_generators(tag, &spec.gcm, params, &KindArgs::default())?;
    Ok(flatness_job(spec, &fam, opts))
}

/// `b = (b1, 0, b3)` on `sl_5`.
pub fn degenerate_b() -> Result<ParamFamily, ElectricalError> {
    let gcm = builtin_gcm(Family::A, 4)?;
    let mut b = ParamFamily::symbolic_edge(&gcm);
    b.set_b(1, 2, Poly::zero());
    Ok(b)
}

fn star3() -> Result<Gcm, ElectricalError> {
    Ok(Gcm::from_rows(vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]])?)
}

struct VertexRelations;

impl Suite for VertexRelations {
    fn name(&self) -> &'static str {
        "thm1_2"
    }
    fn reference(&self) -> &'static str {
        "vertex model: (ad u_i)^(1-a_ij)(u_j) = -2 delta_(a_ij,-1) a_ji a_i a_j u_i"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut specs = Vec::new();
        for r in 1..=4 {
            specs.push(builtin(Family::A, r)?);
        }
        for r in 2..=3 {
            specs.push(builtin(Family::B, r)?);
            specs.push(builtin(Family::C, r)?);
        }
        specs.push(builtin(Family::D, 4)?);
        specs.push(builtin(Family::G, 2)?);
        for (p, q) in [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)] {
            specs.push(builtin(Family::Rank2(p, q), 2)?);
        }
        specs.push(AlgebraSpec::custom(Gcm::from_rows(vec![vec![2, 0], vec![0, 2]])?));
        Ok(specs.into_iter().map(vertex_job).collect())
    }
}

struct Flatness;

impl Suite for Flatness {
    fn name(&self) -> &'static str {
        "thm1_3"
    }
    fn reference(&self) -> &'static str {
        "gr of the generated subalgebra: dim F_d B = dim F_d n in every filtration degree"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for r in 1..=4 {
            jobs.push(vertex_flatness(builtin(Family::A, r)?));
        }
        for r in 2..=3 {
            jobs.push(vertex_flatness(builtin(Family::B, r)?));
            jobs.push(vertex_flatness(builtin(Family::C, r)?));
        }
        jobs.push(vertex_flatness(builtin(Family::D, 4)?));
        jobs.push(vertex_flatness(builtin(Family::G, 2)?));
        let opts = FlatnessOptions::default();
        for r in 1..=4 {
            for k in 1..=r {
                jobs.push(edge_flatness(&format!("TYPE_A_ROOT_{k}"), builtin(Family::A, r)?, None, opts)?);
            }
        }
        for r in 2..=3 {
            jobs.push(edge_flatness("B_CHAIN", builtin(Family::B, r)?, None, opts)?);
            jobs.push(edge_flatness("C_CHAIN", builtin(Family::C, r)?, None, opts)?);
        }
        jobs.push(edge_flatness("D_BRANCH", builtin(Family::D, 4)?, None, opts)?);
        jobs.push(edge_flatness("AFFINE_A", builtin(Family::AffineA, 3)?, None, FlatnessOptions::affine())?);
        let b = degenerate_b()?;
        for tag in ["TYPE_A_ROOT_1", "TYPE_A_ROOT_4"] {
            let mut job = edge_flatness(tag, builtin(Family::A, 4)?, Some(&b), opts)?;
            job.title = format!("{} (b2 = 0)", job.title);
            jobs.push(job);
        }
        Ok(jobs)
    }
}

/// Bridge: conjugating a vertex relation by `g` gives the edge relation with
/// `b_i = -a_i a_(i+1)`.
fn bridge_job(n: usize) -> Result<Job, ElectricalError> {
    let spec = builtin(Family::A, n - 1)?;
    let gcm = spec.gcm.clone();
    let a = ParamFamily::symbolic_vertex(&gcm);
    let vertex = vertex_generators(&gcm, &a);
    let b = ParamFamily::edge((0..gcm.rank().saturating_sub(1)).map(|i| ((i, i + 1), -(&a.a(i) * &a.a(i + 1)))));
    let edge = edge_generators(&format!("TYPE_A_ROOT_{}", n - 1), &gcm, Some(&b), &KindArgs::default())?;
    let factors: Vec<(Poly, LieExpr)> = (0..gcm.rank()).rev().map(|i| (a.a(i), LieExpr::F(i))).collect();
    let tasks = gcm.ordered_pairs().into_iter().map(|(i, j)| {
        Task::equal(
            format!("bridge u{},u{}", i + 1, j + 1),
            format!("Ad g({}) = {} with b_i = -a_i a_(i+1)", vertex.relation_reference(i, j), edge.relation_reference(i, j)),
            ad_chain(&factors, vertex.relation_expr(i, j)),
            edge.relation_expr(i, j),
        )
    });
    Ok(Job::new(format!("vertex-edge bridge in sl_{n}"), spec).with_tasks(tasks))
}

fn scheme_job(scheme: ConjugationScheme) -> Result<Job, ElectricalError> {
    Ok(Job::new(scheme.title(), scheme.spec()?)
        .with_params(scheme.params())
        .with_tasks(conjugation_tasks(&scheme)?))
}

struct ChainConjugation;

impl Suite for ChainConjugation {
    fn name(&self) -> &'static str {
        "thm1_4"
    }
    fn reference(&self) -> &'static str {
        "g_a = e^(a_(n-1) f_(n-1)) ... e^(a_1 f_1): Ad g_a(u_i) = e_i - a_(i-1) a_i f_(i-1)"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for n in 2..=5 {
            jobs.push(scheme_job(ConjugationScheme::Chain { n })?);
        }
        for n in 3..=5 {
            jobs.push(bridge_job(n)?);
        }
        Ok(jobs)
    }
}

struct RootedTypeA;

impl Suite for RootedTypeA {
    fn name(&self) -> &'static str {
        "thm1_5"
    }
    fn reference(&self) -> &'static str {
        "sl_n edge model rooted at k: [u_i,[u_i,u_j]] = -2 b_min(i,j) u_i for |i-j| = 1"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for r in 1..=4 {
            for k in 1..=r {
                jobs.push(edge_job(&format!("TYPE_A_ROOT_{k}"), builtin(Family::A, r)?, None, &KindArgs::default())?);
            }
        }
        let b = degenerate_b()?;
        for tag in ["TYPE_A_ROOT_1", "TYPE_A_ROOT_4"] {
            let mut job = edge_job(tag, builtin(Family::A, 4)?, Some(&b), &KindArgs::default())?;
            job.title = format!("{} (b2 = 0)", job.title);
            jobs.push(job);
        }
        Ok(jobs)
    }
}

struct InvariantForm;

impl Suite for InvariantForm {
    fn name(&self) -> &'static str {
        "thm1_6"
    }
    fn reference(&self) -> &'static str {
        "omega_b = sum_k prod_(i=k)^(n-2) (-b_i) v*_k ^ v*_(k+1) is preserved; sl_n^(b) = sp(omega_b) cap Ann(v^1)"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for n in 2..=6 {
            let b = symbolic_b(n);
            jobs.push(
                Job::new(format!("form on sl_{n}"), builtin(Family::A, n - 1)?)
                    .with_params(describe_b(&b))
                    .with_tasks(form_tasks(n, &b)?),
            );
        }
        for n in [2, 4, 6] {
            jobs.push(
                Job::new(format!("symplectic identification for sl_{n}"), builtin(Family::A, n - 1)?)
                    .with_tasks([sp_identification_task(n)]),
            );
        }
        Ok(jobs)
    }
    fn shared(&self) -> bool {
        false
    }
}

struct Chain {
    name: &'static str,
    reference: &'static str,
    tag: &'static str,
    family: Family,
    ranks: &'static [usize],
}

impl Suite for Chain {
    fn name(&self) -> &'static str {
        self.name
    }
    fn reference(&self) -> &'static str {
        self.reference
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        self.ranks
            .iter()
            .map(|&r| edge_job(self.tag, builtin(self.family, r)?, None, &KindArgs::default()))
            .collect()
    }
}

struct RankTwo;

impl Suite for RankTwo {
    fn name(&self) -> &'static str {
        "thm1_8a"
    }
    fn reference(&self) -> &'static str {
        "rank 2, a_21 <= -2: u_1 = e_1, u_2 = e_2 + b_12 f_1"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        [(1, 2), (1, 3), (2, 2), (2, 3)]
            .into_iter()
            .map(|(p, q)| edge_job("RANK2", builtin(Family::Rank2(p, q), 2)?, None, &KindArgs::default()))
            .collect()
    }
}

struct SpDecomposition;

impl Suite for SpDecomposition {
    fn name(&self) -> &'static str {
        "thm1_9"
    }
    fn reference(&self) -> &'static str {
        "sp_2n^(b) = sl_n^(b_1..b_(n-2)) x J with b'_k = -2^(2(n-k)+1) prod_(i=k)^(n-1) b_i^2"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for n in [2, 3] {
            let b: Vec<Poly> = (1..n).map(|k| Poly::var(&format!("b{k}"))).collect();
            jobs.push(
                Job::new(format!("decomposition of sp_{}", 2 * n), builtin(Family::C, n)?)
                    .with_params(describe_b(&b))
                    .with_tasks(sp_decomposition_tasks(n, &b)?),
            );
        }
        jobs.push(sp6_example()?);
        Ok(jobs)
    }
}

/// The worked `sp_6` numbers: `v_1 = -8 b1 b2 u_1 + w_1`, `v_2 = 4 b2 u_2 + w_2`.
fn sp6_example() -> Result<Job, ElectricalError> {
    let spec = builtin(Family::C, 3)?;
    let fam = edge_generators("C_CHAIN", &spec.gcm, None, &KindArgs::default())?;
    let u = &fam.gens;
    let (b1, b2) = (Poly::var("b1"), Poly::var("b2"));
    let w3 = u[2].clone();
    let w2 = LieExpr::ad_pow(u[1].clone(), 2, w3.clone());
    let w1 = LieExpr::ad_pow(u[0].clone(), 2, w2.clone());
    let v1 = LieExpr::sum(vec![(&Poly::int(-8) * &(&b1 * &b2), u[0].clone()), (Poly::one(), w1.clone())]);
    let v2 = LieExpr::sum(vec![(&Poly::int(4) * &b2, u[1].clone()), (Poly::one(), w2.clone())]);
    let tasks = [
        ("[v1,w3]", v1.clone(), w3.clone()),
        ("[v1,w2]", v1, w2),
        ("[v2,w1]", v2.clone(), w1),
        ("[v2,w3]", v2, w3),
    ]
    .into_iter()
    .map(|(name, x, y)| Task::vanish(format!("sp_6 example {name}"), format!("{name} = 0"), LieExpr::br(x, y)));
    Ok(Job::new("sp_6 worked example", spec).with_tasks(tasks))
}

struct MiddleConjugation;

impl Suite for MiddleConjugation {
    fn name(&self) -> &'static str {
        "ex1_10"
    }
    fn reference(&self) -> &'static str {
        "g' = e^(a2f2)e^(a1f1)e^(a3f3) and g'' = e^(a1f1)e^(a3f3)e^(a2f2) in sl_4, b = -a1a2a3"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        Ok(vec![scheme_job(ConjugationScheme::MiddleFirst)?, scheme_job(ConjugationScheme::MiddleLast)?])
    }
}

struct ConicalTrees;

impl Suite for ConicalTrees {
    fn name(&self) -> &'static str {
        "sec2_conical"
    }
    fn reference(&self) -> &'static str {
        "conical tree, g_a = e^(a_0 f_0) prod_(i != 0) e^(a_i f_i): closed form of Ad g_a(u_i)"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for (spec, root) in [
            (builtin(Family::D, 4)?, 1),
            (builtin(Family::A, 4)?, 1),
            (builtin(Family::A, 4)?, 2),
            (builtin(Family::A, 3)?, 1),
            (builtin(Family::G, 2)?, 1),
        ] {
            jobs.push(scheme_job(ConjugationScheme::Conical { spec: spec.clone(), root })?);
            let args = KindArgs {
                root: Some(root),
                ..KindArgs::default()
            };
            jobs.push(edge_job("CONICAL", spec, None, &args)?);
        }
        Ok(jobs)
    }
}

struct Star;

impl Suite for Star {
    fn name(&self) -> &'static str {
        "sec2_star"
    }
    fn reference(&self) -> &'static str {
        "conical star: root image e_0 - a_0 f - a_0^2 sum_m (ad X)^m T/(m+2)!"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for (spec, root) in [(builtin(Family::D, 4)?, 1), (builtin(Family::A, 3)?, 1)] {
            jobs.push(
                Job::new(format!("star conjugation in {}", spec.name()), spec.clone())
                    .with_tasks(star_tasks(&spec.gcm, root)?),
            );
            let args = KindArgs {
                root: Some(root),
                ..KindArgs::default()
            };
            jobs.push(edge_job("STAR", spec, None, &args)?);
        }
        Ok(jobs)
    }
}

struct Peacock;

impl Suite for Peacock {
    fn name(&self) -> &'static str {
        "sec2_peacock"
    }
    fn reference(&self) -> &'static str {
        "peacock, g_a = e^(f_+) e^(a_0 f_0) prod e^(a_i f_i): conjugated vertex generators and their relations"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        for (spec, root, j_plus) in [
            (builtin(Family::D, 4)?, 1, vec![0]),
            (builtin(Family::D, 4)?, 1, vec![0, 2]),
            (builtin(Family::A, 3)?, 1, vec![2]),
        ] {
            jobs.push(scheme_job(ConjugationScheme::Peacock {
                spec: spec.clone(),
                root,
                j_plus: j_plus.clone(),
            })?);
            let args = KindArgs {
                root: Some(root),
                j_plus,
                r: None,
            };
            jobs.push(edge_job("PEACOCK", spec, None, &args)?);
        }
        Ok(jobs)
    }
}

struct MinCartan;

impl Suite for MinCartan {
    fn name(&self) -> &'static str {
        "sec2_min_cartan"
    }
    fn reference(&self) -> &'static str {
        "chain with fan, a'_ij = min(a_(i-1,j-1), a_ij): relations for the min-rule matrix"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        let mut jobs = Vec::new();
        let cases = [
            (builtin(Family::Rank2(1, 2), 2)?, 2),
            (builtin(Family::A, 3)?, 3),
            (builtin(Family::D, 4)?, 2),
            (builtin(Family::B, 3)?, 3),
            (AlgebraSpec::custom(star3()?), 1),
        ];
        for (spec, r) in cases {
            let args = KindArgs {
                r: Some(r),
                ..KindArgs::default()
            };
            let fam = edge_generators("MIN_CARTAN", &spec.gcm, None, &args)?;
            jobs.push(relation_job(format!("MIN_CARTAN r={r} relations in {}", spec.name()), spec.clone(), &fam));
            jobs.push(flatness_job(spec, &fam, FlatnessOptions::default()));
        }
        Ok(jobs)
    }
}

struct IteratedU;

impl Suite for IteratedU {
    fn name(&self) -> &'static str {
        "prop3_1"
    }
    fn reference(&self) -> &'static str {
        "[u_i, u_(i^r j)] = (r+1) u_(i^(r+1) j) for 1 <= r <= -a_ij"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        [builtin(Family::A, 2)?, builtin(Family::B, 2)?, builtin(Family::G, 2)?]
            .into_iter()
            .map(|spec| {
                let a = ParamFamily::symbolic_vertex(&spec.gcm);
                let tasks = recursion_tasks(&spec.gcm, &a);
                Ok(Job::new(format!("iterated u in {}", spec.name()), spec).with_tasks(tasks))
            })
            .collect()
    }
}

struct LocalRelations;

impl Suite for LocalRelations {
    fn name(&self) -> &'static str {
        "prop3_6"
    }
    fn reference(&self) -> &'static str {
        "u_i = e_i + b_(i-1) f_(i-1): (ad u_1)^k(u_2) = (ad e_1)^k(e_2) - 2 delta_(k,2) b_1 u_1 and its companions"
    }
    fn jobs(&self) -> Result<Vec<Job>, ElectricalError> {
        [builtin(Family::A, 4)?, builtin(Family::A, 3)?, builtin(Family::B, 3)?, builtin(Family::C, 3)?]
            .into_iter()
            .map(|spec| {
                let b = ParamFamily::symbolic_edge(&spec.gcm);
                let tasks = local_relation_tasks(&spec.gcm, &b, &[2, 3])?;
                Ok(Job::new(format!("local relations in {}", spec.name()), spec).with_tasks(tasks))
            })
            .collect()
    }
}

static SUITES: [&dyn Suite; 18] = [
    &VertexRelations,
    &Flatness,
    &ChainConjugation,
    &RootedTypeA,
    &InvariantForm,
    &Chain {
        name: "thm1_7a",
        reference: "so_(2n+1): u_i = e_i + b_(i-1,i) f_(i-1)",
        tag: "B_CHAIN",
        family: Family::B,
        ranks: &[2, 3, 4],
    },
    &Chain {
        name: "thm1_7b",
        reference: "sp_2n: u_i = e_i + b_(i-1,i) f_(i-1) - delta_(i,n) b^2/2 [f_(n-1),[f_(n-1),f_n]]",
        tag: "C_CHAIN",
        family: Family::C,
        ranks: &[2, 3, 4],
    },
    &RankTwo,
    &Chain {
        name: "thm1_8b",
        reference: "so_2n: u_i = e_i + b_(n-2,i) f_(n-2) past the branch",
        tag: "D_BRANCH",
        family: Family::D,
        ranks: &[4, 5],
    },
    &Chain {
        name: "thm1_8c",
        reference: "affine sl_n: u_i = e_i + b_(i-1,i) f_(i-1), i-1 mod n",
        tag: "AFFINE_A",
        family: Family::AffineA,
        ranks: &[3, 4],
    },
    &SpDecomposition,
    &MiddleConjugation,
    &ConicalTrees,
    &Star,
    &Peacock,
    &MinCartan,
    &IteratedU,
    &LocalRelations,
];

pub fn suites() -> &'static [&'static dyn Suite] {
    &SUITES
}

pub fn suite(name: &str) -> Option<&'static dyn Suite> {
    SUITES.iter().copied().find(|s| s.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_stable() {
        assert_eq!(suites().len(), 18);
        assert!(suite("thm1_8c").unwrap().reference().contains("affine"));
        for s in suites() {
            assert!(s.jobs().is_ok(), "{}", s.name());
        }
    }
}
