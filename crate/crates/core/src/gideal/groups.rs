use std::collections::HashSet;

use serde::Serialize;

use super::{QuotientAlgebra, TriangularIdeal};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, PermSet, Permutation};
use crate::poly::{evaluate_at, MultiPoly, RootVector};

const MAX_VARIETY_PRECISION: u32 = 4096;

/// Generators of `A`'s ideal that need testing after permutation. The
/// symmetric part is `S_n`-stable, so only the added relations matter.
fn moving_generators(a: &QuotientAlgebra) -> Vec<MultiPoly> {
    if a.symmetric_generators().is_empty() {
        a.generators()
    } else {
        a.relations().to_vec()
    }
}

fn all_members(gens: &[MultiPoly], sigma: &Permutation, target: &QuotientAlgebra) -> Result<bool> {
    for g in gens {
        if !target.member(&g.permute(sigma)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Stab_{S_n}(I) = {σ | σ.I = I}`, found by scanning `S_n` and skipping
/// whole cosets of the part already found.
pub fn decomposition_group(a: &QuotientAlgebra) -> Result<PermGroup> {
    let n = a.nvars();
    let gens = moving_generators(a);
    let sn = PermGroup::symmetric(n);
    if gens.is_empty() {
        return Ok(sn);
    }
    let mut found = PermGroup::trivial(n);
    let mut rejected: HashSet<Permutation> = HashSet::new();
    for sigma in sn.elements() {
        if found.contains(sigma) || rejected.contains(sigma) {
            continue;
        }
        if all_members(&gens, sigma, a)? {
            let mut g = found.generators().to_vec();
            g.push(sigma.clone());
            found = PermGroup::generate(n, &g)?;
        } else {
            // (σg).I = σ.I for g in the stabilizer.
            for g in found.elements() {
                rejected.insert(sigma * g);
            }
        }
    }
    Ok(found)
}

/// `Inj(I, J) = {σ | σ.I ⊆ J}`. Fails unless `I ⊆ J`.
pub fn injector(ai: &QuotientAlgebra, aj: &QuotientAlgebra) -> Result<PermSet> {
    check_arity(ai, aj)?;
    for g in ai.generators() {
        if !aj.member(&g)? {
            return Err(Error::Containment(format!(
                "{g} is not in the target ideal"
            )));
        }
    }
    injector_unchecked(ai, aj)
}

/// `Inj(I, J)` without the containment precondition.
pub fn injector_unchecked(ai: &QuotientAlgebra, aj: &QuotientAlgebra) -> Result<PermSet> {
    check_arity(ai, aj)?;
    let n = ai.nvars();
    let same_base = !ai.symmetric_generators().is_empty()
        && ai.symmetric_generators() == aj.symmetric_generators();
    let gens = if same_base {
        ai.relations().to_vec()
    } else {
        ai.generators()
    };
    let sn = PermGroup::symmetric(n);
    let mut members = Vec::new();
    for sigma in sn.elements() {
        if all_members(&gens, sigma, aj)? {
            members.push(sigma.clone());
        }
    }
    Ok(PermSet::new(n, members))
}

fn check_arity(ai: &QuotientAlgebra, aj: &QuotientAlgebra) -> Result<()> {
    if ai.nvars() != aj.nvars() {
        return Err(Error::Arity {
            expected: ai.nvars(),
            found: aj.nvars(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityReport {
    pub pure: bool,
    pub dimension: usize,
    pub stabilizer_order: usize,
    /// Present when the ideal is pure.
    pub triangular: Option<TriangularIdeal>,
}

/// An ideal is pure when its dimension equals the order of its
/// decomposition group; pure ideals are triangular.
pub fn is_pure(a: &QuotientAlgebra) -> Result<PurityReport> {
    let stab = decomposition_group(a)?;
    let pure = a.dim() == stab.order();
    let triangular = if pure { Some(a.triangularize()?) } else { None };
    Ok(PurityReport {
        pure,
        dimension: a.dim(),
        stabilizer_order: stab.order(),
        triangular,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VarietyReport {
    pub dimension: usize,
    /// `σ` such that every generator vanishes at `σ*α`.
    pub points: Vec<Permutation>,
    pub precision: u32,
}

impl VarietyReport {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn consistent(&self) -> bool {
        self.count() == self.dimension
    }
}

/// Enumerates the permuted root tuples on which all generators vanish.
/// Precision is raised until the count matches the dimension.
pub fn variety_check(a: &QuotientAlgebra, roots: &RootVector) -> Result<VarietyReport> {
    let n = a.nvars();
    if roots.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: roots.len(),
        });
    }
    let gens = a.generators();
    let sn = PermGroup::symmetric(n);
    let mut roots = roots.clone();
    loop {
        let mut points = Vec::new();
        for sigma in sn.elements() {
            let pt = roots.permuted(sigma)?;
            let mut ok = true;
            for g in &gens {
                if !evaluate_at(g, &pt)?.contains_zero() {
                    ok = false;
                    break;
                }
            }
            if ok {
                points.push(sigma.clone());
            }
        }
        if points.len() == a.dim() {
            return Ok(VarietyReport {
                dimension: a.dim(),
                points,
                precision: roots.precision(),
            });
        }
        let next = roots.precision() * 2;
        if next > MAX_VARIETY_PRECISION {
            return Err(Error::PrecisionExhausted(roots.precision()));
        }
        roots = roots.refine(next)?;
    }
}
