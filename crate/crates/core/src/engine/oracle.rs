//! Checks that do not depend on the ideal computations: Frobenius cycle
//! types and the discriminant.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::lattice::subgroups_between;
use crate::perm::{conjugate_in, group_matrix_entry, PermGroup};
use crate::poly::modp::{small_primes, Field};
use crate::poly::{is_rational_square, UniPoly};

pub const DEFAULT_DEDEKIND_PRIMES: usize = 12;

#[derive(Clone, Debug, Default, Serialize)]
pub struct DedekindReport {
    /// `(p, sorted factor degrees of f mod p)`.
    pub observed: Vec<(u64, Vec<usize>)>,
    /// Primes dividing the leading coefficient or the discriminant.
    pub skipped: Vec<u64>,
}

impl DedekindReport {
    /// Distinct cycle types seen.
    pub fn cycle_types(&self) -> Vec<Vec<usize>> {
        let mut t: Vec<Vec<usize>> = self.observed.iter().map(|(_, d)| d.clone()).collect();
        t.sort();
        t.dedup();
        t
    }

    /// Every observed type occurs in `g`.
    pub fn consistent_with(&self, g: &PermGroup) -> bool {
        self.cycle_types().iter().all(|t| g.has_cycle_type(t))
    }
}

/// Degrees of the irreducible factors of `f` modulo each prime.
pub fn dedekind_cycle_types(f: &UniPoly, primes: &[u64]) -> DedekindReport {
    let ints = f.primitive_integer();
    let g = UniPoly::from_bigints(&ints);
    let mut report = DedekindReport::default();
    for &p in primes {
        let field = Field::new(p);
        let reduced: Vec<u64> = ints.iter().map(|c| field.from_int(c)).collect();
        if reduced.last().is_none_or(|&c| c == 0) || !field.is_squarefree(&reduced) {
            report.skipped.push(p);
            continue;
        }
        let mut d = field.factor_degrees(&reduced);
        d.sort_unstable();
        debug_assert_eq!(d.iter().sum::<usize>(), g.degree());
        report.observed.push((p, d));
    }
    report
}

/// The first `count` primes that are good for `f`, with the bad ones met on
/// the way.
pub fn dedekind_default(f: &UniPoly, count: usize) -> DedekindReport {
    let mut report = DedekindReport::default();
    for p in std::iter::once(2).chain(small_primes()) {
        if report.observed.len() == count {
            break;
        }
        let r = dedekind_cycle_types(f, &[p]);
        report.observed.extend(r.observed);
        report.skipped.extend(r.skipped);
    }
    report
}

/// `disc(f)` is a nonzero rational square.
pub fn discriminant_is_square(f: &UniPoly) -> bool {
    let d = f.discriminant();
    !d.is_zero() && is_rational_square(&d)
}

/// Subgroups `G ≤ L` (up to conjugacy in `L`) whose orbits on `L/H` have
/// the observed sizes, i.e. the candidates for the Galois group given the
/// factor degrees of a resolvent.
pub fn identify_from_partitions(
    observed: &[usize],
    l: &PermGroup,
    h: &PermGroup,
) -> Result<Vec<PermGroup>> {
    let mut want = observed.to_vec();
    want.sort_unstable();
    let mut reps: Vec<PermGroup> = Vec::new();
    for g in subgroups_between(&PermGroup::trivial(l.degree()), l)? {
        let mut duplicate = false;
        for r in &reps {
            if r.order() == g.order() && conjugate_in(r, &g, l)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            reps.push(g);
        }
    }
    let mut out = Vec::new();
    for g in reps {
        if group_matrix_entry(l, &g, h)?.partition == want {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistent(format!(
            "no subgroup has orbit sizes {want:?}"
        )));
    }
    out.sort_by_key(PermGroup::order);
    Ok(out)
}
