use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::poly::{Monomial, MultiPoly, Rational};

/// Default number of exponent vectors examined before giving up.
pub const DEFAULT_SEARCH_BUDGET: usize = 20_000;

/// An `H`-invariant polynomial together with the groups it was chosen for.
#[derive(Clone)]
pub struct InvariantSpec {
    pub theta: MultiPoly,
    pub h: PermGroup,
    pub l: PermGroup,
    pub exponents: Option<Vec<u32>>,
    /// `s` when `Θ` was obtained by substituting `x_i -> x_i^2 + s*x_i`.
    pub tschirnhaus: Option<i64>,
}

impl InvariantSpec {
    pub fn new(theta: MultiPoly, h: PermGroup, l: PermGroup) -> Self {
        InvariantSpec {
            theta,
            h,
            l,
            exponents: None,
            tschirnhaus: None,
        }
    }

    /// The substitution `x_i -> x_i^2 + s*x_i` applied to `Θ`. Commutes with
    /// the action, so the result is still `H`-invariant; it breaks additive
    /// coincidences among the roots. `None` if `H` is no longer the
    /// stabilizer.
    pub fn tschirnhaus(&self, s: i64) -> Result<Option<InvariantSpec>> {
        let theta = tschirnhaus_transform(&self.theta, s);
        let spec = InvariantSpec {
            theta,
            h: self.h.clone(),
            l: self.l.clone(),
            exponents: self.exponents.clone(),
            tschirnhaus: Some(s),
        };
        Ok(spec.is_primitive()?.then_some(spec))
    }

    /// `Stab_L(Θ) = H`.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.l.stabilizer(&self.theta)?.order() == self.h.order()
            && self.h.is_subgroup_of(&self.l))
    }
}

impl fmt::Debug for InvariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantSpec")
            .field("theta", &self.theta)
            .field("h", &self.h.order())
            .field("l", &self.l.order())
            .field("exponents", &self.exponents)
            .field("tschirnhaus", &self.tschirnhaus)
            .finish()
    }
}

impl Serialize for InvariantSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InvariantSpec", 5)?;
        st.serialize_field("theta", &self.theta.to_string())?;
        st.serialize_field("h_order", &self.h.order())?;
        st.serialize_field("l_order", &self.l.order())?;
        st.serialize_field("exponents", &self.exponents)?;
        st.serialize_field("tschirnhaus", &self.tschirnhaus)?;
        st.end()
    }
}

/// `Σ` over the distinct monomials of the `H`-orbit of `x^e`.
pub fn orbit_sum_invariant(h: &PermGroup, exponents: &[u32]) -> Result<MultiPoly> {
    let n = h.degree();
    if exponents.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: exponents.len(),
        });
    }
    let m = Monomial::new(exponents.to_vec());
    let orbit: BTreeSet<Monomial> = h.elements().iter().map(|s| m.permute(s)).collect();
    Ok(MultiPoly::from_terms(
        n,
        orbit.into_iter().map(|m| (m, Rational::one())),
    ))
}

/// `Π_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> MultiPoly {
    let mut v = MultiPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            v = &v * &(&MultiPoly::var(n, i) - &MultiPoly::var(n, j));
        }
    }
    v
}

/// Exponent vectors of total degree 1, 2, ...; within a degree, vectors with
/// pairwise distinct parts come first, each block in descending lex order.
/// The first distinct-part vector appears at degree `n(n-1)/2`.
pub struct ExponentVectors {
    n: usize,
    degree: u32,
    pending: std::vec::IntoIter<Vec<u32>>,
}

impl ExponentVectors {
    pub fn new(n: usize) -> Self {
        ExponentVectors {
            n,
            degree: 0,
            pending: Vec::new().into_iter(),
        }
    }
}

fn compositions(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(n, total - first, prefix, out);
        prefix.pop();
    }
}

fn distinct_parts(e: &[u32]) -> bool {
    let set: BTreeSet<u32> = e.iter().copied().collect();
    set.len() == e.len()
}

impl Iterator for ExponentVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        loop {
            if let Some(e) = self.pending.next() {
                return Some(e);
            }
            if self.n == 0 {
                return None;
            }
            self.degree += 1;
            let mut all = Vec::new();
            compositions(self.n, self.degree, &mut Vec::new(), &mut all);
            let (mut first, rest): (Vec<_>, Vec<_>) =
                all.into_iter().partition(|e| distinct_parts(e));
            first.extend(rest);
            self.pending = first.into_iter();
        }
    }
}

/// Candidate `H`-invariant `L`-primitive polynomials in a fixed order. The
/// Vandermonde comes first when `H = L ∩ A_n ≠ L`.
pub struct PrimitiveInvariants {
    h: PermGroup,
    l: PermGroup,
    vectors: ExponentVectors,
    examined: usize,
    budget: usize,
    vandermonde_pending: bool,
    seen: BTreeSet<Vec<(Monomial, Rational)>>,
}

impl PrimitiveInvariants {
    pub fn new(h: &PermGroup, l: &PermGroup, budget: usize) -> Result<Self> {
        if !h.is_subgroup_of(l) {
            return Err(Error::NotSubgroup(format!(
                "H of order {} is not in L",
                h.order()
            )));
        }
        let n = l.degree();
        let even = PermGroup::alternating(n).intersection(l);
        let vandermonde_pending =
            even.order() < l.order() && h.order() == even.order() && h.is_subgroup_of(&even);
        Ok(PrimitiveInvariants {
            h: h.clone(),
            l: l.clone(),
            vectors: ExponentVectors::new(n),
            examined: 0,
            budget,
            vandermonde_pending,
            seen: BTreeSet::new(),
        })
    }
}

impl Iterator for PrimitiveInvariants {
    type Item = Result<InvariantSpec>;

    fn next(&mut self) -> Option<Result<InvariantSpec>> {
        if self.vandermonde_pending {
            self.vandermonde_pending = false;
            let theta = vandermonde(self.l.degree());
            return Some(Ok(InvariantSpec::new(
                theta,
                self.h.clone(),
                self.l.clone(),
            )));
        }
        loop {
            if self.examined >= self.budget {
                return None;
            }
            self.examined += 1;
            let e = self.vectors.next()?;
            let theta = match orbit_sum_invariant(&self.h, &e) {
                Ok(t) => t,
                Err(err) => return Some(Err(err)),
            };
            let key: Vec<(Monomial, Rational)> =
                theta.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            if !self.seen.insert(key) {
                continue;
            }
            match self.l.stabilizer(&theta) {
                Ok(s) if s.order() == self.h.order() => {
                    return Some(Ok(InvariantSpec {
                        theta,
                        h: self.h.clone(),
                        l: self.l.clone(),
                        exponents: Some(e),
                        tschirnhaus: None,
                    }))
                }
                Ok(_) => continue,
                Err(err) => return Some(Err(err)),
            }
        }
    }
}

/// `Θ(x_1^2 + s x_1, ..., x_n^2 + s x_n)`.
pub fn tschirnhaus_transform(theta: &MultiPoly, s: i64) -> MultiPoly {
    let n = theta.nvars();
    let subs: Vec<MultiPoly> = (0..n)
        .map(|i| {
            &MultiPoly::var(n, i).pow(2)
                + &MultiPoly::var(n, i).scale(&Rational::from_integer(s.into()))
        })
        .collect();
    let mut out = MultiPoly::zero(n);
    for (m, c) in theta.terms() {
        let mut t = MultiPoly::constant(n, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                t = &t * &subs[i].pow(e);
            }
        }
        out = &out + &t;
    }
    out
}

/// The first candidate of [`PrimitiveInvariants`].
pub fn primitive_invariant(h: &PermGroup, l: &PermGroup) -> Result<InvariantSpec> {
    primitive_invariant_with_budget(h, l, DEFAULT_SEARCH_BUDGET)
}

pub fn primitive_invariant_with_budget(
    h: &PermGroup,
    l: &PermGroup,
    budget: usize,
) -> Result<InvariantSpec> {
    PrimitiveInvariants::new(h, l, budget)?
        .next()
        .unwrap_or(Err(Error::InvariantSearchExhausted(budget)))
}
