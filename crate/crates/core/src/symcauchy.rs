//! Symmetric functions, the Girard–Newton identities and Cauchy modules.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{Monomial, MultiPoly, Rational, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetricKind {
    Elementary,
    Power,
    Complete,
}

/// `e_r`, `p_r` or `h_r` in `x_1..x_n`.
pub fn symmetric_family(kind: SymmetricKind, r: usize, n: usize) -> MultiPoly {
    symmetric_in(kind, r, n, n)
}

/// The symmetric function on the first `k` of `n` variables.
pub fn symmetric_in(kind: SymmetricKind, r: usize, k: usize, n: usize) -> MultiPoly {
    assert!(k <= n);
    match kind {
        SymmetricKind::Elementary => {
            let mut out = MultiPoly::zero(n);
            if r > k {
                return out;
            }
            for_each_subset(k, r, &mut |s| {
                let mut e = vec![0; n];
                for &i in s {
                    e[i] = 1;
                }
                out.add_term(Monomial::new(e), Rational::one());
            });
            out
        }
        SymmetricKind::Power => {
            if r == 0 {
                return MultiPoly::constant(n, Rational::from_integer(k.into()));
            }
            let mut out = MultiPoly::zero(n);
            for i in 0..k {
                let mut e = vec![0; n];
                e[i] = r as u32;
                out.add_term(Monomial::new(e), Rational::one());
            }
            out
        }
        SymmetricKind::Complete => {
            let mut out = MultiPoly::zero(n);
            let mut e = vec![0u32; n];
            compositions(&mut e, 0, k, r as u32, &mut |e| {
                out.add_term(Monomial::new(e.to_vec()), Rational::one());
            });
            out
        }
    }
}

fn for_each_subset(k: usize, r: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(
        start: usize,
        k: usize,
        r: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == r {
            visit(cur);
            return;
        }
        for i in start..k {
            if k - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, k, r, cur, visit);
            cur.pop();
        }
    }
    go(0, k, r, &mut Vec::new(), visit);
}

fn compositions(e: &mut [u32], pos: usize, k: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
    if k == 0 {
        if left == 0 {
            visit(e);
        }
        return;
    }
    if pos + 1 == k {
        e[pos] = left;
        visit(e);
        e[pos] = 0;
        return;
    }
    for v in 0..=left {
        e[pos] = v;
        compositions(e, pos + 1, k, left - v, visit);
    }
    e[pos] = 0;
}

/// `p_m e_0 - p_{m-1} e_1 + ... + (-1)^{m-1} p_1 e_{m-1} + (-1)^m m e_m`,
/// which vanishes identically.
pub fn girard_newton_residual(m: usize, n: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(n);
    for i in 0..m {
        let term = &symmetric_family(SymmetricKind::Power, m - i, n)
            * &symmetric_family(SymmetricKind::Elementary, i, n);
        acc = if i % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    let last =
        symmetric_family(SymmetricKind::Elementary, m, n).scale(&Rational::from_integer(m.into()));
    if m.is_multiple_of(2) {
        &acc + &last
    } else {
        &acc - &last
    }
}

/// Power sums `p̃_1..p̃_m` of the roots of `f`, from its coefficients:
/// `a_n p̃_k + a_{n-1} p̃_{k-1} + ... + a_{n-k+1} p̃_1 + k a_{n-k} = 0`
/// (the last term only while `k ≤ n`).
pub fn power_sums(f: &UniPoly, m: usize) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree();
    let a = |i: usize| f.coeff(i);
    let mut p: Vec<Rational> = vec![Rational::zero(); m + 1];
    for k in 1..=m {
        let mut s = Rational::zero();
        for j in 1..k.min(n + 1) {
            s += a(n - j) * &p[k - j];
        }
        if k <= n {
            s += a(n - k) * Rational::from_integer(k.into());
        }
        p[k] = -s / a(n);
    }
    p.remove(0);
    Ok(p)
}

/// Cauchy modules `C_1..C_n` of `f` (normalized monic) by iterated divided
/// differences: `C_1 = f(x_1)` and
/// `C_r = (C_{r-1}(.., x_{r-1}) - C_{r-1}(.., x_r)) / (x_{r-1} - x_r)`.
pub fn cauchy_modules(f: &UniPoly) -> Result<Vec<MultiPoly>> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let n = f.degree();
    let mut out = vec![MultiPoly::from_univariate(&f, n, 0)];
    for r in 2..=n {
        let prev = &out[r - 2];
        // C_{r-1} does not involve x_r, so the transposition renames
        // x_{r-1} to x_r.
        let swap = Permutation::from_cycles(n, &[vec![r - 1, r]])?;
        let moved = prev.permute(&swap)?;
        let c = (prev - &moved).div_by_difference(r - 2, r - 1)?;
        out.push(c);
    }
    Ok(out)
}

/// `C_{r+1} = Σ_{i=r}^{n} a_i h_{i-r}(x_1, ..., x_{r+1})` for monic `f`.
pub fn cauchy_closed_form(f: &UniPoly, r: usize) -> Result<MultiPoly> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let n = f.degree();
    if r >= n {
        return Err(Error::Arity {
            expected: n - 1,
            found: r,
        });
    }
    let mut acc = MultiPoly::zero(n);
    for i in r..=n {
        let a = f.coeff(i);
        if !a.is_zero() {
            acc = &acc + &symmetric_in(SymmetricKind::Complete, i - r, r + 1, n).scale(&a);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use crate::poly::{complex_roots, parse_multivariate, parse_univariate, q, ComplexBall};
    use proptest::prelude::*;

    fn mp(s: &str, n: usize) -> MultiPoly {
        parse_multivariate(s, n).unwrap()
    }

    #[test]
    fn families() {
        assert_eq!(
            symmetric_family(SymmetricKind::Elementary, 2, 3),
            mp("x1*x2 + x1*x3 + x2*x3", 3)
        );
        assert!(symmetric_family(SymmetricKind::Elementary, 5, 3).is_zero());
        assert_eq!(
            symmetric_family(SymmetricKind::Elementary, 0, 3),
            MultiPoly::one(3)
        );
        assert_eq!(
            symmetric_family(SymmetricKind::Complete, 0, 3),
            MultiPoly::one(3)
        );
        assert_eq!(
            symmetric_family(SymmetricKind::Complete, 2, 2),
            mp("x1^2 + x1*x2 + x2^2", 2)
        );
        assert_eq!(
            symmetric_family(SymmetricKind::Power, 0, 4),
            MultiPoly::constant(4, q(4))
        );
        // h_3 in 3 variables has C(5,2) = 10 monomials.
        assert_eq!(symmetric_family(SymmetricKind::Complete, 3, 3).len(), 10);
    }

    #[test]
    fn girard_newton_small() {
        let n = 3;
        let p2 = symmetric_family(SymmetricKind::Power, 2, n);
        let rhs = &(&symmetric_family(SymmetricKind::Elementary, 1, n)
            * &symmetric_family(SymmetricKind::Power, 1, n))
            - &symmetric_family(SymmetricKind::Elementary, 2, n).scale(&q(2));
        assert_eq!(p2, rhs);
        for m in 0..=5 {
            assert!(girard_newton_residual(m, 4).is_zero(), "m = {m}");
        }
    }

    #[test]
    fn power_sum_examples() {
        let f = parse_univariate("x^2 - 3*x + 2").unwrap();
        assert_eq!(power_sums(&f, 2).unwrap(), vec![q(3), q(5)]);
        // Direct sums 1^k + 2^k.
        let direct: Vec<Rational> = (1..=6).map(|k| q(1 + (1 << k))).collect();
        assert_eq!(power_sums(&f, 6).unwrap(), direct);
        assert!(power_sums(&parse_univariate("x^4").unwrap(), 5)
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        // Non-monic: roots 1/2, -1/3.
        let g = parse_univariate("6*x^2 - x - 1").unwrap();
        let r = [
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 3.into()),
        ];
        let d: Vec<Rational> = (1..=5)
            .map(|k| r.iter().map(|x| num_traits::pow(x.clone(), k)).sum())
            .collect();
        assert_eq!(power_sums(&g, 5).unwrap(), d);
    }

    #[test]
    fn reference_quartic_cauchy_modules() {
        let f = parse_univariate("x^4 - 2*x^3 + 2*x^2 + 2").unwrap();
        let c = cauchy_modules(&f).unwrap();
        let expected = [
            "x1^4 - 2*x1^3 + 2*x1^2 + 2",
            "x2^3 + x1*x2^2 + x1^2*x2 + x1^3 - 2*(x2^2 + x1*x2 + x1^2) + 2*(x2 + x1)",
            "x3^2 + x2*x3 + x1*x3 + x2^2 + x1*x2 + x1^2 - 2*(x3 + x2 + x1) + 2",
            "x4 + x3 + x2 + x1 - 2",
        ];
        for (ci, e) in c.iter().zip(expected) {
            assert_eq!(ci, &mp(e, 4));
        }
        for r in 0..4 {
            assert_eq!(cauchy_closed_form(&f, r).unwrap(), c[r]);
        }
    }

    #[test]
    fn two_variable_example() {
        let c = cauchy_modules(&parse_univariate("x^2 - 3*x + 2").unwrap()).unwrap();
        assert_eq!(c, vec![mp("x1^2 - 3*x1 + 2", 2), mp("x1 + x2 - 3", 2)]);
    }

    #[test]
    fn cauchy_modules_vanish_on_permuted_roots() {
        for s in ["x^3 - 2", "x^4 + x + 1", "2*x^3 - x + 5"] {
            let f = parse_univariate(s).unwrap();
            let n = f.degree();
            let roots = complex_roots(&f, 96).unwrap();
            let mods = cauchy_modules(&f).unwrap();
            for sigma in PermGroup::symmetric(n).elements() {
                let pt: Vec<ComplexBall> = roots.permuted(sigma).unwrap();
                for c in &mods {
                    assert!(
                        crate::poly::evaluate_at(c, &pt).unwrap().contains_zero(),
                        "{s}"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn divided_differences_match_closed_form(coeffs in proptest::collection::vec(-20i64..=20, 2..6)) {
            let mut c = coeffs.clone();
            c.push(1);
            let f = UniPoly::from_ints(&c);
            let n = f.degree();
            let mods = cauchy_modules(&f).unwrap();
            for r in 0..n {
                prop_assert_eq!(&cauchy_closed_form(&f, r).unwrap(), &mods[r]);
                // Monic of degree n - r in x_{r+1}, symmetric in x_1..x_{r+1}.
                prop_assert_eq!(mods[r].degree_in(r) as usize, n - r);
                prop_assert_eq!(mods[r].leading().unwrap().1, &q(1));
                for i in 0..r {
                    let t = Permutation::from_cycles(n, &[vec![i + 1, i + 2]]).unwrap();
                    prop_assert_eq!(&mods[r].permute(&t).unwrap(), &mods[r]);
                }
            }
            let sum_minus_e1 = &symmetric_family(SymmetricKind::Elementary, 1, n) - &MultiPoly::constant(n, -f.coeff(n - 1));
            prop_assert_eq!(&mods[n - 1], &sum_minus_e1);
        }
    }
}
