//! The Galois group pipeline: descend from `S_n` through maximal subgroups
//! by factoring resolvents, adjoining one relation per step, until no
//! resolvent has a rational root.

pub mod labels;
pub mod oracle;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gideal::{decomposition_group, QuotientAlgebra, TriangularIdeal};
use crate::invres::{
    resolvent, transversal_values, InvariantSpec, PrimitiveInvariants, Resolvent,
    DEFAULT_SEARCH_BUDGET,
};
use crate::perm::{maximal_subgroups, PermGroup, Permutation};
use crate::poly::{complex_roots, MultiPoly, Rational, RootVector, UniPoly};

pub use labels::{group_from_label, transitive_label, GroupLabel};
pub use oracle::{
    dedekind_cycle_types, dedekind_default, discriminant_is_square, identify_from_partitions,
    DedekindReport, DEFAULT_DEDEKIND_PRIMES,
};

#[derive(Clone, Debug)]
pub struct GaloisConfig {
    /// Bits of working precision for the root enclosures.
    pub precision: u32,
    pub max_precision: u32,
    pub max_degree: usize,
    /// Primes for the Frobenius oracle; `None` picks the first good ones.
    pub primes: Option<Vec<u64>>,
    pub dedekind_count: usize,
    /// Plain invariants tried per edge when resolvents have repeated roots,
    /// and as many transformed ones after them.
    pub separability_retries: usize,
    pub search_budget: usize,
}

impl Default for GaloisConfig {
    fn default() -> Self {
        GaloisConfig {
            precision: 128,
            max_precision: 8192,
            max_degree: 6,
            primes: None,
            dedekind_count: DEFAULT_DEDEKIND_PRIMES,
            separability_retries: 8,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// One ideal in the ascending chain `ℳ_S ⊂ ... ⊂ ℳ`.
#[derive(Clone, Debug)]
pub struct IdealChainNode {
    pub algebra: QuotientAlgebra,
    pub known_supergroup: PermGroup,
    pub invariant_used: Option<MultiPoly>,
    pub factor_used: Option<UniPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeOutcome {
    Descended,
    NoDescent,
    NotSeparable,
}

/// A resolvent computed while walking the lattice.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeAttempt {
    pub l_order: usize,
    pub h_order: usize,
    pub resolvent: Resolvent,
    pub factor_degrees: Vec<usize>,
    pub outcome: EdgeOutcome,
    /// The coset representative `τ` and the rational value `τ.Θ(α)`.
    pub chosen: Option<(Permutation, String)>,
}

pub enum StepOutcome {
    Descended(IdealChainNode, EdgeAttempt),
    NoDescent(Vec<EdgeAttempt>),
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub dedekind: DedekindReport,
    pub discriminant_square: bool,
    pub dedekind_consistent: bool,
    pub discriminant_consistent: bool,
}

#[derive(Clone, Debug)]
pub struct GaloisResult {
    pub f: UniPoly,
    pub group: PermGroup,
    pub chain: Vec<IdealChainNode>,
    pub attempts: Vec<EdgeAttempt>,
    pub relations_ideal: QuotientAlgebra,
    pub triangular: TriangularIdeal,
    pub oracles: OracleReport,
    pub label: Option<GroupLabel>,
    pub roots: RootVector,
}

impl GaloisResult {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Tries one edge `L > H`: computes resolvents for successive invariants
/// until one is separable, then adjoins `τ.Θ - c` for a rational root `c`
/// if there is one.
pub fn descend_step(
    node: &IdealChainNode,
    h: &PermGroup,
    roots: &mut RootVector,
    config: &GaloisConfig,
) -> Result<StepOutcome> {
    let l = &node.known_supergroup;
    let mut attempts = Vec::new();
    let plain: Vec<InvariantSpec> = PrimitiveInvariants::new(h, l, config.search_budget)?
        .take(config.separability_retries)
        .collect::<Result<_>>()?;
    // When every plain invariant collides, transform the first one.
    let transformed = plain.first().cloned().into_iter().flat_map(|first| {
        (1..=config.separability_retries as i64)
            .filter_map(move |s| first.tschirnhaus(s).transpose())
    });
    let mut screened = 0;
    for spec in plain.into_iter().map(Ok).chain(transformed) {
        let spec = spec?;
        if !values_separated(&spec, roots)? {
            screened += 1;
            continue;
        }
        let res = resolvent(&spec, &node.algebra)?;
        let degrees = res.factors.degrees();
        if !res.separable {
            attempts.push(EdgeAttempt {
                l_order: l.order(),
                h_order: h.order(),
                factor_degrees: degrees,
                outcome: EdgeOutcome::NotSeparable,
                resolvent: res,
                chosen: None,
            });
            continue;
        }
        let linear: Vec<Rational> = res
            .factors
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, _)| -g.coeff(0))
            .collect();
        if linear.is_empty() {
            attempts.push(EdgeAttempt {
                l_order: l.order(),
                h_order: h.order(),
                factor_degrees: degrees,
                outcome: EdgeOutcome::NoDescent,
                resolvent: res,
                chosen: None,
            });
            return Ok(StepOutcome::NoDescent(attempts));
        }
        let (tau, c) = select_coset(&spec, &linear, roots, config)?;
        let relation = &spec.theta.permute(&tau)? - &MultiPoly::constant(l.degree(), c.clone());
        let algebra = node.algebra.extend(std::slice::from_ref(&relation))?;
        let next = h.conjugate(&tau)?;
        if algebra.dim() != next.order() {
            return Err(Error::DimensionMismatch {
                dim: algebra.dim(),
                order: next.order(),
            });
        }
        let attempt = EdgeAttempt {
            l_order: l.order(),
            h_order: h.order(),
            factor_degrees: degrees,
            outcome: EdgeOutcome::Descended,
            resolvent: res,
            chosen: Some((tau, crate::poly::fmt_coefficient(&c))),
        };
        let child = IdealChainNode {
            algebra,
            known_supergroup: next,
            invariant_used: Some(relation),
            factor_used: Some(UniPoly::linear(&c)),
        };
        return Ok(StepOutcome::Descended(child, attempt));
    }
    Err(Error::SeparabilityExhausted(attempts.len() + screened))
}

/// The values `Θ(τ*α)` over the transversal have pairwise disjoint
/// enclosures, so the resolvent is separable. Overlap only means the exact
/// resolvent is not worth computing for this candidate.
fn values_separated(spec: &InvariantSpec, roots: &RootVector) -> Result<bool> {
    let values = transversal_values(spec, roots)?;
    Ok(values
        .iter()
        .enumerate()
        .all(|(i, (_, a))| values[i + 1..].iter().all(|(_, b)| !a.overlaps(b))))
}

/// Picks the linear factor `x - c` and the coset `τH` with `Θ(τ*α) = c`.
/// The identity coset is preferred; otherwise the first factor in order.
/// Precision is raised until the matching coset is unique.
fn select_coset(
    spec: &InvariantSpec,
    linear: &[Rational],
    roots: &mut RootVector,
    config: &GaloisConfig,
) -> Result<(Permutation, Rational)> {
    loop {
        let values = transversal_values(spec, roots)?;
        // Each rational root of a separable resolvent is exactly one value.
        let matched: Vec<Vec<usize>> = linear
            .iter()
            .map(|c| {
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, v))| v.contains(c))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        if matched.iter().all(|m| m.len() == 1) {
            let pick = matched.iter().position(|m| m[0] == 0).unwrap_or(0);
            let k = matched[pick][0];
            return Ok((values[k].0.clone(), linear[pick].clone()));
        }
        let next = roots.precision() * 2;
        if next > config.max_precision {
            return Err(Error::PrecisionExhausted(roots.precision()));
        }
        *roots = roots.refine(next)?;
    }
}

/// Runs the full pipeline on a squarefree `f` of degree `2..=max_degree`.
pub fn galois_group(f: &UniPoly, config: &GaloisConfig) -> Result<GaloisResult> {
    let n = f.degree();
    if n < 2 || n > config.max_degree || n > 6 {
        return Err(Error::UnsupportedDegree(n));
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let monic = f.monic();
    let mut roots = complex_roots(&monic, config.precision)?;
    let mut node = IdealChainNode {
        algebra: QuotientAlgebra::symmetric_ideal(&monic)?,
        known_supergroup: PermGroup::symmetric(n),
        invariant_used: None,
        factor_used: None,
    };
    let mut chain = vec![node.clone()];
    let mut attempts = Vec::new();
    'descent: loop {
        for h in maximal_subgroups(&node.known_supergroup)? {
            match descend_step(&node, &h, &mut roots, config)? {
                StepOutcome::Descended(child, attempt) => {
                    attempts.push(attempt);
                    node = child;
                    chain.push(node.clone());
                    continue 'descent;
                }
                StepOutcome::NoDescent(a) => attempts.extend(a),
            }
        }
        break;
    }
    let group = node.known_supergroup.clone();
    let relations_ideal = node.algebra.clone();
    if decomposition_group(&relations_ideal)? != group {
        return Err(Error::Inconsistent(
            "decomposition group of the final ideal differs".into(),
        ));
    }
    let triangular = relations_ideal.triangularize()?;
    check_fundamental_degrees(&triangular, &group)?;

    let dedekind = match &config.primes {
        Some(p) => dedekind_cycle_types(f, p),
        None => dedekind_default(f, config.dedekind_count),
    };
    let discriminant_square = discriminant_is_square(f);
    let oracles = OracleReport {
        dedekind_consistent: dedekind.consistent_with(&group),
        discriminant_consistent: discriminant_square
            == group.is_subgroup_of(&PermGroup::alternating(n)),
        dedekind,
        discriminant_square,
    };
    if !oracles.dedekind_consistent || !oracles.discriminant_consistent {
        return Err(Error::Inconsistent(
            "result disagrees with an independent oracle".into(),
        ));
    }
    let label = transitive_label(&group);
    Ok(GaloisResult {
        f: f.clone(),
        group,
        chain,
        attempts,
        relations_ideal,
        triangular,
        oracles,
        label,
        roots,
    })
}

/// `deg_{x_i} f_i = #G_(i-1) / #G_(i)` along the point stabilizer chain.
fn check_fundamental_degrees(t: &TriangularIdeal, g: &PermGroup) -> Result<()> {
    let mut current = g.clone();
    for (i, &d) in t.init_degrees().iter().enumerate() {
        let next = current.point_stabilizer(i);
        if d as usize * next.order() != current.order() {
            return Err(Error::Inconsistent(format!(
                "x_{} has initial degree {d}, stabilizer index {}",
                i + 1,
                current.order() / next.order()
            )));
        }
        current = next;
    }
    Ok(())
}

/// The triangular generators of `ℳ`, checked against the stabilizer chain
/// of the group.
pub fn fundamental_modules(result: &GaloisResult) -> Result<TriangularIdeal> {
    let t = result.relations_ideal.triangularize()?;
    check_fundamental_degrees(&t, &result.group)?;
    Ok(t)
}

#[derive(Serialize)]
struct ChainEntry {
    dimension: usize,
    group_order: usize,
    relation: Option<String>,
}

#[derive(Serialize)]
struct ResultView<'a> {
    polynomial: &'a UniPoly,
    degree: usize,
    order: usize,
    label: Option<String>,
    transitive: bool,
    generators: Vec<Vec<usize>>,
    chain: Vec<ChainEntry>,
    attempts: &'a [EdgeAttempt],
    triangular: &'a TriangularIdeal,
    oracles: &'a OracleReport,
}

impl Serialize for GaloisResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResultView {
            polynomial: &self.f,
            degree: self.f.degree(),
            order: self.group.order(),
            label: self.label.map(|l| l.to_string()),
            transitive: self.group.is_transitive(),
            generators: self
                .group
                .generators()
                .iter()
                .map(Permutation::one_based)
                .collect(),
            chain: self
                .chain
                .iter()
                .map(|c| ChainEntry {
                    dimension: c.algebra.dim(),
                    group_order: c.known_supergroup.order(),
                    relation: c.invariant_used.as_ref().map(|r| r.to_string()),
                })
                .collect(),
            attempts: &self.attempts,
            triangular: &self.triangular,
            oracles: &self.oracles,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests;
