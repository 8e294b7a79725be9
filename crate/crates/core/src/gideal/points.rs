use num_traits::{One, Zero};

use super::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, to_sparse, Subspace};
use crate::perm::PermSet;
use crate::poly::{MultiPoly, Rational, UniPoly};

/// `Id(H*α)` for a polynomial with rational roots `α` (in the given order):
/// the relations vanishing at every `σ*α`, `σ ∈ H`.
pub fn points_ideal(f: &UniPoly, alpha: &[Rational], h: &PermSet) -> Result<QuotientAlgebra> {
    let n = f.degree();
    if alpha.len() != n || h.degree() != n {
        return Err(Error::Arity {
            expected: n,
            found: alpha.len(),
        });
    }
    if let Some(a) = alpha.iter().find(|a| !f.eval(a).is_zero()) {
        return Err(Error::Inconsistent(format!("{a} is not a root")));
    }
    let base = QuotientAlgebra::symmetric_ideal(f)?;
    let rows: Vec<Vec<Rational>> = h
        .iter()
        .map(|sigma| {
            let point = sigma.act_tuple(alpha).expect("degree checked");
            base.basis()
                .iter()
                .map(|m| {
                    m.exps()
                        .iter()
                        .zip(&point)
                        .fold(Rational::one(), |acc, (&e, a)| {
                            acc * num_traits::pow(a.clone(), e as usize)
                        })
                })
                .collect()
        })
        .collect();
    // The evaluation kernel is an ideal of the quotient.
    let mut w = Subspace::new(base.dim());
    let mut relations = Vec::new();
    for v in nullspace(&rows, base.dim()) {
        let s = to_sparse(&v);
        if w.insert(&s) {
            relations.push(base.to_poly(&s));
        }
    }
    base.quotient_by(&w, relations)
}

/// The image of `I` in the symmetric base algebra it descends from.
pub fn relation_space(a: &QuotientAlgebra) -> Result<Subspace> {
    let base = a
        .base()
        .ok_or_else(|| Error::Inconsistent("ideal has no symmetric base".into()))?;
    base.ideal_space(a.relations())
}

/// `I_1 ∩ ... ∩ I_s` for ideals over a common symmetric base.
pub fn ideal_intersection(ideals: &[QuotientAlgebra]) -> Result<QuotientAlgebra> {
    let first = ideals.first().ok_or(Error::EmptyGenerators)?;
    let base = first
        .base()
        .ok_or_else(|| Error::Inconsistent("ideal has no symmetric base".into()))?;
    let mut w = relation_space(first)?;
    for a in &ideals[1..] {
        if a.symmetric_generators() != base.symmetric_generators() {
            return Err(Error::Inconsistent(
                "ideals descend from different bases".into(),
            ));
        }
        w = w.intersection(&relation_space(a)?);
    }
    let relations: Vec<MultiPoly> = w.basis().iter().map(|v| base.to_poly(v)).collect();
    base.quotient_by(&w, relations)
}

/// `I + J`.
pub fn ideal_sum(a: &QuotientAlgebra, b: &QuotientAlgebra) -> Result<QuotientAlgebra> {
    if a.nvars() != b.nvars() {
        return Err(Error::Arity {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    let extra = if a.symmetric_generators() == b.symmetric_generators() {
        b.relations().to_vec()
    } else {
        b.generators()
    };
    a.extend(&extra)
}
