use serde::Serialize;

use super::charpoly::resolvent_poly;
use super::InvariantSpec;
use crate::error::{Error, Result};
use crate::gideal::QuotientAlgebra;
use crate::perm::{CosetSide, Permutation};
use crate::poly::{evaluate_at, factor_rationals, ComplexBall, Factorization, RootVector, UniPoly};

/// `R_Θ` with `C_Θ = R_Θ^{#H}`.
#[derive(Clone, Debug)]
pub struct Resolvent {
    pub theta: InvariantSpec,
    pub resolvent: UniPoly,
    pub cofactor_exponent: usize,
    /// Factors of the resolvent, or of its squarefree part when it is not
    /// separable.
    pub factors: Factorization,
    pub separable: bool,
}

/// Computes the resolvent of `Θ` relative to `L` on an algebra of dimension
/// `|L|`.
pub fn resolvent(spec: &InvariantSpec, a: &QuotientAlgebra) -> Result<Resolvent> {
    if a.dim() != spec.l.order() {
        return Err(Error::DimensionMismatch {
            dim: a.dim(),
            order: spec.l.order(),
        });
    }
    let m = spec.h.order();
    let r = resolvent_poly(&spec.theta, a, m)?;
    let separable = r.is_squarefree();
    let factors = if separable {
        factor_rationals(&r)?
    } else {
        factor_rationals(&r.squarefree_part()?)?
    };
    Ok(Resolvent {
        theta: spec.clone(),
        resolvent: r,
        cofactor_exponent: m,
        factors,
        separable,
    })
}

impl Resolvent {
    /// `C_Θ = R_Θ^{#H}`, expanded.
    pub fn charpoly(&self) -> UniPoly {
        self.resolvent.pow(self.cofactor_exponent)
    }
}

pub fn separability_check(res: &Resolvent) -> bool {
    res.resolvent.is_squarefree()
}

/// `(τ, Θ(τ*α))` over the canonical left transversal of `L/H`; these are
/// the roots of the resolvent.
pub fn transversal_values(
    spec: &InvariantSpec,
    roots: &RootVector,
) -> Result<Vec<(Permutation, ComplexBall)>> {
    let cosets = spec.l.transversal(&spec.h, CosetSide::Left)?;
    cosets
        .transversal()
        .iter()
        .map(|tau| {
            Ok((
                tau.clone(),
                evaluate_at(&spec.theta, &roots.permuted(tau)?)?,
            ))
        })
        .collect()
}

#[derive(Serialize)]
struct ResolventView<'a> {
    theta: String,
    cofactor_exponent: usize,
    resolvent: &'a UniPoly,
    factors: Vec<(String, usize)>,
    separable: bool,
}

impl Serialize for Resolvent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResolventView {
            theta: self.theta.theta.to_string(),
            cofactor_exponent: self.cofactor_exponent,
            resolvent: &self.resolvent,
            factors: self
                .factors
                .factors
                .iter()
                .map(|(f, k)| (f.to_string(), *k))
                .collect(),
            separable: self.separable,
        }
        .serialize(s)
    }
}
