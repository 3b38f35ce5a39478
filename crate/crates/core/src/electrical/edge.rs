//! Registry of edge-model constructions, looked up by tag.

use super::conjugation::{check_conical, check_star, conical_images, conical_tree, peacock_family};
use super::family::{edge_consts, vertex_generators, GeneratorFamily};
use super::min_cartan::min_cartan_family;
use super::ElectricalError;
use crate::arith::{ratio, Poly};
use crate::cartan::{builtin_gcm, graph_of, root_tree, Family, Gcm, ParamFamily};
use crate::lie::LieExpr;

use LieExpr::{E, F};

/// Kind-specific arguments, all given as positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KindArgs {
    /// Distinguished vertex: the root of a tree or the special vertex `k`.
    pub root: Option<usize>,
    /// Leaves attached to the root (peacock).
    pub j_plus: Vec<usize>,
    /// Chain length (min-Cartan).
    pub r: Option<usize>,
}

pub trait EdgeModel: Send + Sync {
    fn tag(&self) -> &'static str;
    /// One-line description of the generators.
    fn summary(&self) -> &'static str;
    /// Formal parameters the construction expects.
    fn symbolic(&self, gcm: &Gcm) -> ParamFamily {
        ParamFamily::symbolic_edge(gcm)
    }
    fn build(&self, gcm: &Gcm, params: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError>;
}

fn lin(terms: Vec<(Poly, LieExpr)>) -> LieExpr {
    LieExpr::sum(terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
}

fn malformed(msg: impl Into<String>) -> ElectricalError {
    ElectricalError::Malformed(msg.into())
}

fn require_builtin(gcm: &Gcm, family: Family, tag: &str) -> Result<(), ElectricalError> {
    if builtin_gcm(family, gcm.rank()).map(|g| g.entries() == gcm.entries()) != Ok(true) {
        return Err(malformed(format!("{tag} needs the {family} matrix, got {gcm}")));
    }
    Ok(())
}

/// `u_i = e_i + b_(i,p) f_p` with `p` the parent of `i` in the tree rooted
/// at `root`.
pub(crate) fn parent_family(gcm: &Gcm, b: &ParamFamily, root: usize) -> Result<GeneratorFamily, ElectricalError> {
    let tree = root_tree(&graph_of(gcm), root)?;
    let gens = (0..gcm.rank())
        .map(|i| match tree.parent[i] {
            Some(p) => lin(vec![(Poly::one(), E(i)), (b.b(i, p), F(p))]),
            None => E(i),
        })
        .collect();
    Ok(GeneratorFamily {
        name: String::new(),
        gcm: gcm.clone(),
        effective: gcm.clone(),
        params: b.clone(),
        gens,
        consts: edge_consts(gcm, b),
    })
}

fn named(mut fam: GeneratorFamily, name: &str) -> GeneratorFamily {
    fam.name = name.to_string();
    fam
}

struct TypeARoot;

impl EdgeModel for TypeARoot {
    fn tag(&self) -> &'static str {
        "TYPE_A_ROOT"
    }

    fn summary(&self) -> &'static str {
        "sl_n: e_i + b_(i-1) f_(i-1) below k, e_i + b_i f_(i+1) above k, cubic term at k"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        require_builtin(gcm, Family::A, self.tag())?;
        let n = gcm.rank();
        let k = args.root.unwrap_or(0);
        if k >= n {
            return Err(malformed(format!("root position {k} out of range")));
        }
        let bb = |i: usize, j: usize| if j < n { b.b(i, j) } else { Poly::zero() };
        let gens = (0..n)
            .map(|i| {
                if i < k {
                    if i == 0 {
                        E(0)
                    } else {
                        lin(vec![(Poly::one(), E(i)), (b.b(i - 1, i), F(i - 1))])
                    }
                } else if i > k {
                    lin(vec![(Poly::one(), E(i)), (bb(i, i + 1), F(i + 1))])
                } else {
                    let mut terms = vec![(Poly::one(), E(k))];
                    let lo = if k > 0 { b.b(k - 1, k) } else { Poly::zero() };
                    let hi = bb(k, k + 1);
                    if k > 0 {
                        terms.push((lo.clone(), F(k - 1)));
                    }
                    if k + 1 < n {
                        terms.push((hi.clone(), F(k + 1)));
                    }
                    if k > 0 && k + 1 < n {
                        let nested = LieExpr::br(F(k - 1), LieExpr::br(F(k + 1), F(k)));
                        terms.push((-(&lo * &hi), nested));
                    }
                    lin(terms)
                }
            })
            .collect();
        Ok(GeneratorFamily {
            name: format!("TYPE_A_ROOT_{}", gcm.label(k)),
            gcm: gcm.clone(),
            effective: gcm.clone(),
            params: b.clone(),
            gens,
            consts: edge_consts(gcm, b),
        })
    }
}

struct BChain;

impl EdgeModel for BChain {
    fn tag(&self) -> &'static str {
        "B_CHAIN"
    }

    fn summary(&self) -> &'static str {
        "so_(2n+1): e_i + b_(i-1,i) f_(i-1)"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, _: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        require_builtin(gcm, Family::B, self.tag())?;
        Ok(named(parent_family(gcm, b, 0)?, self.tag()))
    }
}

struct CChain;

impl EdgeModel for CChain {
    fn tag(&self) -> &'static str {
        "C_CHAIN"
    }

    fn summary(&self) -> &'static str {
        "sp_2n: e_i + b_(i-1,i) f_(i-1), minus b^2/2 [f_(n-1),[f_(n-1),f_n]] at i = n"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, _: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        require_builtin(gcm, Family::C, self.tag())?;
        let mut fam = named(parent_family(gcm, b, 0)?, self.tag());
        let n = gcm.rank();
        let (last, prev) = (n - 1, n - 2);
        let bl = b.b(prev, last);
        let nested = LieExpr::br(F(prev), LieExpr::br(F(prev), F(last)));
        fam.gens[last] = lin(vec![
            (Poly::one(), fam.gens[last].clone()),
            (-(&bl * &bl).scale(&ratio(1, 2)), nested),
        ]);
        // (ad u_n)^2 u_(n-1) = -4 b u_n
        fam.consts.insert((last, prev), &Poly::int(2) * &bl);
        Ok(fam)
    }
}

struct Rank2;

impl EdgeModel for Rank2 {
    fn tag(&self) -> &'static str {
        "RANK2"
    }

    fn summary(&self) -> &'static str {
        "rank 2 with a_21 <= -2: e_1 and e_2 + b_12 f_1"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, _: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        if gcm.rank() != 2 || gcm.a(1, 0) > -2 {
            return Err(malformed(format!("{} needs rank 2 with a_21 <= -2, got {gcm}", self.tag())));
        }
        Ok(named(parent_family(gcm, b, 0)?, self.tag()))
    }
}

struct DBranch;

impl EdgeModel for DBranch {
    fn tag(&self) -> &'static str {
        "D_BRANCH"
    }

    fn summary(&self) -> &'static str {
        "so_2n: e_i + b_(i-1,i) f_(i-1) up to the branch, e_i + b_(n-2,i) f_(n-2) after it"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, _: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        require_builtin(gcm, Family::D, self.tag())?;
        if gcm.rank() < 4 {
            return Err(malformed("D_BRANCH needs rank at least 4"));
        }
        Ok(named(parent_family(gcm, b, 0)?, self.tag()))
    }
}

struct AffineA;

impl EdgeModel for AffineA {
    fn tag(&self) -> &'static str {
        "AFFINE_A"
    }

    fn summary(&self) -> &'static str {
        "affine sl_n: e_i + b_(i-1,i) f_(i-1), indices mod n"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, _: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        require_builtin(gcm, Family::AffineA, self.tag())?;
        let n = gcm.rank();
        if n < 3 {
            return Err(malformed("AFFINE_A needs n at least 3"));
        }
        let gens = (0..n)
            .map(|i| {
                let p = (i + n - 1) % n;
                lin(vec![(Poly::one(), E(i)), (b.b(p, i), F(p))])
            })
            .collect();
        Ok(GeneratorFamily {
            name: self.tag().into(),
            gcm: gcm.clone(),
            effective: gcm.clone(),
            params: b.clone(),
            gens,
            consts: edge_consts(gcm, b),
        })
    }
}

fn root_of(args: &KindArgs, tag: &str) -> Result<usize, ElectricalError> {
    args.root.ok_or_else(|| malformed(format!("{tag} needs a root vertex")))
}

struct Conical;

impl EdgeModel for Conical {
    fn tag(&self) -> &'static str {
        "CONICAL"
    }

    fn summary(&self) -> &'static str {
        "conical tree: e_i - a_i a_c f_c off the root, closed ad-series at the root"
    }

    fn symbolic(&self, gcm: &Gcm) -> ParamFamily {
        ParamFamily::symbolic_vertex(gcm)
    }

    fn build(&self, gcm: &Gcm, a: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        let root = root_of(args, self.tag())?;
        let tree = conical_tree(gcm, root)?;
        check_conical(gcm, root)?;
        let mut fam = vertex_generators(gcm, a);
        fam.gens = conical_images(&tree, a);
        fam.name = self.tag().into();
        Ok(fam)
    }
}

struct Star;

impl EdgeModel for Star {
    fn tag(&self) -> &'static str {
        "STAR"
    }

    fn summary(&self) -> &'static str {
        "conical star with simple edges: the conical formula on a star"
    }

    fn symbolic(&self, gcm: &Gcm) -> ParamFamily {
        ParamFamily::symbolic_vertex(gcm)
    }

    fn build(&self, gcm: &Gcm, a: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        let root = root_of(args, self.tag())?;
        let tree = conical_tree(gcm, root)?;
        check_star(gcm, &tree)?;
        let mut fam = Conical.build(gcm, a, args)?;
        fam.name = self.tag().into();
        Ok(fam)
    }
}

struct Peacock;

impl EdgeModel for Peacock {
    fn tag(&self) -> &'static str {
        "PEACOCK"
    }

    fn summary(&self) -> &'static str {
        "conical tree with root leaves J+: vertex generators conjugated by e^(f+) e^(a0 f0) prod e^(a_i f_i)"
    }

    fn symbolic(&self, gcm: &Gcm) -> ParamFamily {
        ParamFamily::symbolic_vertex(gcm)
    }

    fn build(&self, gcm: &Gcm, a: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        let root = root_of(args, self.tag())?;
        if args.j_plus.is_empty() {
            return Err(malformed("PEACOCK needs a nonempty set of root leaves"));
        }
        peacock_family(gcm, root, &args.j_plus, a)
    }
}

struct MinCartan;

impl EdgeModel for MinCartan {
    fn tag(&self) -> &'static str {
        "MIN_CARTAN"
    }

    fn summary(&self) -> &'static str {
        "chain plus fan: e_i + b_(i-1) f_(i-1) on the chain, e_t + b_t f_r on the fan, min-rule matrix"
    }

    fn build(&self, gcm: &Gcm, b: &ParamFamily, args: &KindArgs) -> Result<GeneratorFamily, ElectricalError> {
        min_cartan_family(gcm, b, args.r.unwrap_or(gcm.rank()))
    }
}

static MODELS: [&dyn EdgeModel; 10] = [
    &TypeARoot, &BChain, &CChain, &Rank2, &DBranch, &AffineA, &Conical, &Star, &Peacock, &MinCartan,
];

pub fn edge_models() -> &'static [&'static dyn EdgeModel] {
    &MODELS
}

/// Looks up a tag; `TYPE_A_ROOT_k` also sets the root to label `k`.
pub fn edge_model(tag: &str, gcm: &Gcm) -> Result<(&'static dyn EdgeModel, KindArgs), ElectricalError> {
    let upper = tag.trim().to_ascii_uppercase();
    let mut args = KindArgs::default();
    let base = match upper.strip_prefix("TYPE_A_ROOT_") {
        Some(k) => {
            let label: usize = k.parse().map_err(|_| malformed(format!("bad root in {tag}")))?;
            args.root = Some(gcm.index_of(label)?);
            "TYPE_A_ROOT"
        }
        None => upper.as_str(),
    };
    let model = MODELS
        .iter()
        .copied()
        .find(|m| m.tag() == base)
        .ok_or_else(|| malformed(format!("unknown edge model {tag}")))?;
    Ok((model, args))
}

/// Builds the family of `tag` with the given (or, when `None`, symbolic)
/// parameters.
pub fn edge_generators(
    tag: &str,
    gcm: &Gcm,
    params: Option<&ParamFamily>,
    extra: &KindArgs,
) -> Result<GeneratorFamily, ElectricalError> {
    let (model, mut args) = edge_model(tag, gcm)?;
    if extra.root.is_some() {
        args.root = extra.root;
    }
    args.j_plus = extra.j_plus.clone();
    args.r = extra.r;
    let symbolic = model.symbolic(gcm);
    model.build(gcm, params.unwrap_or(&symbolic), &args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_every_tag() {
        let tags: Vec<&str> = edge_models().iter().map(|m| m.tag()).collect();
        assert_eq!(tags.len(), 10);
        let a4 = builtin_gcm(Family::A, 4).unwrap();
        let (m, args) = edge_model("type_a_root_3", &a4).unwrap();
        assert_eq!((m.tag(), args.root), ("TYPE_A_ROOT", Some(2)));
        assert!(edge_model("NOPE", &a4).is_err());
    }

    #[test]
    fn zero_parameters_give_chevalley_generators() {
        let cases = [
            ("TYPE_A_ROOT_2", builtin_gcm(Family::A, 3).unwrap(), KindArgs::default()),
            ("C_CHAIN", builtin_gcm(Family::C, 3).unwrap(), KindArgs::default()),
            ("AFFINE_A", builtin_gcm(Family::AffineA, 3).unwrap(), KindArgs::default()),
        ];
        for (tag, g, args) in cases {
            let fam = edge_generators(tag, &g, None, &args).unwrap().zeroed();
            for (i, u) in fam.gens.iter().enumerate() {
                let zero_terms_dropped = u.map_polys(&|p| p.clone());
                assert!(
                    matches!(zero_terms_dropped, LieExpr::E(k) if k == i) || is_e(u, i),
                    "{tag} u{i} = {u:?}"
                );
            }
        }
    }

    fn is_e(u: &LieExpr, i: usize) -> bool {
        match u {
            LieExpr::E(k) => *k == i,
            LieExpr::Lin(ts) => {
                let live: Vec<_> = ts.iter().filter(|(c, _)| !c.is_zero()).collect();
                live.len() == 1 && live[0].0.is_one() && is_e(&live[0].1, i)
            }
            _ => false,
        }
    }
}
