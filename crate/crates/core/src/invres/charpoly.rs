use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gideal::QuotientAlgebra;
use crate::linalg::{charpoly_mod_p, SparseVec};
use crate::poly::modp::{crt_symmetric, large_primes, Field};
use crate::poly::{MultiPoly, Rational, UniPoly};

/// Extra primes beyond the coefficient bound, used to confirm the
/// reconstruction.
const VERIFY_PRIMES: usize = 2;

/// Data for computing the characteristic polynomial of multiplication by
/// `Θ` modulo primes. Works with `λΘ`, whose characteristic polynomial has
/// integer coefficients.
pub(crate) struct ScaledMultiplication<'a> {
    algebra: &'a QuotientAlgebra,
    nf: SparseVec,
    lambda: BigInt,
    /// Bit size bound for `λΘ` at any point of the variety.
    root_bits: u64,
}

impl<'a> ScaledMultiplication<'a> {
    pub(crate) fn new(theta: &MultiPoly, a: &'a QuotientAlgebra) -> Result<Self> {
        let f = a
            .source()
            .ok_or_else(|| Error::Inconsistent("algebra has no defining polynomial".into()))?;
        let nf = a.normal_form_vec(theta)?;
        let d = f.denominator_lcm();
        let theta_den = theta
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let t = theta.total_degree();
        let lambda = theta_den * num_traits::pow(d, t as usize);
        // Cauchy bound on the roots of the monic f.
        let rho: BigInt = f
            .coeffs()
            .iter()
            .take(f.degree())
            .map(|c| c.abs().ceil().to_integer())
            .max()
            .unwrap_or_default()
            + 1;
        let mut b = BigInt::zero();
        for (m, c) in theta.terms() {
            b += c.abs().ceil().to_integer() * num_traits::pow(rho.clone(), m.degree() as usize);
        }
        let root_bits = (&lambda * b + 1u32).bits();
        Ok(ScaledMultiplication {
            algebra: a,
            nf,
            lambda,
            root_bits,
        })
    }

    pub(crate) fn lambda(&self) -> &BigInt {
        &self.lambda
    }

    /// Monic characteristic polynomial of `λΘ` mod `p`, ascending; `None` if
    /// `p` divides a denominator in the multiplication data.
    pub(crate) fn charpoly_mod(&self, field: Field) -> Option<Vec<u64>> {
        let a = self.algebra;
        let dim = a.dim();
        let reduce = |v: &SparseVec| -> Option<Vec<(usize, u64)>> {
            v.iter()
                .map(|(k, c)| field.from_rational(c).map(|r| (*k, r)))
                .collect()
        };
        let tables: Vec<Vec<Vec<(usize, u64)>>> = (0..a.nvars())
            .map(|i| a.table(i).iter().map(reduce).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        let lam = field.from_int(&self.lambda);
        let mut start = vec![0u64; dim];
        for (k, c) in reduce(&self.nf)? {
            start[k] = field.mul(c, lam);
        }
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(dim);
        for (k, b) in a.basis().iter().enumerate() {
            if k == 0 {
                cols.push(start.clone());
                continue;
            }
            let i = b
                .exps()
                .iter()
                .position(|&e| e > 0)
                .expect("non-unit monomial");
            let prev = a
                .index_of(&b.div_var(i).expect("positive"))
                .expect("order ideal");
            let mut col = vec![0u64; dim];
            for (j, &x) in cols[prev].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for &(r, m) in &tables[i][j] {
                    col[r] = field.add(col[r], field.mul(x, m));
                }
            }
            cols.push(col);
        }
        let matrix: Vec<Vec<u64>> = (0..dim)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        Some(charpoly_mod_p(matrix, field))
    }

    /// Primes needed for a monic polynomial of degree `d` whose roots are
    /// values of `λΘ`; its coefficients are below `(B + 1)^d`.
    fn primes_needed(&self, d: usize) -> usize {
        // Primes are close to 2^61.
        ((self.root_bits * d as u64 + 2) / 60 + 1) as usize
    }
}

/// Reconstructs integer vectors from residues; `None` if the extra primes
/// disagree with the reconstruction.
fn reconstruct(residues: &[Vec<u64>], primes: &[u64], verify: usize) -> Option<Vec<BigInt>> {
    let used = primes.len() - verify;
    let len = residues[0].len();
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let r: Vec<u64> = residues[..used].iter().map(|v| v[k]).collect();
        let value = crt_symmetric(&r, &primes[..used]);
        for j in used..primes.len() {
            let f = Field::new(primes[j]);
            if f.from_int(&value) != residues[j][k] {
                return None;
            }
        }
        out.push(value);
    }
    Some(out)
}

/// Undo the scaling: coefficient `k` of a degree-`d` polynomial with roots
/// `λβ` maps to `c_k / λ^{d-k}`.
fn unscale(coeffs: &[BigInt], lambda: &BigInt) -> UniPoly {
    let d = coeffs.len() - 1;
    UniPoly::new(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Rational::new(c.clone(), num_traits::pow(lambda.clone(), d - k)))
            .collect(),
    )
}

/// `#H`-th root of a monic polynomial mod `p` by the power-series
/// recurrence on the reversed polynomial. Ascending coefficients.
fn root_mod(field: &Field, c: &[u64], m: usize) -> Option<Vec<u64>> {
    let big_n = c.len() - 1;
    if !big_n.is_multiple_of(m) {
        return None;
    }
    let d = big_n / m;
    let rev: Vec<u64> = c.iter().rev().copied().collect();
    let a = field.inv(m as u64 % field.modulus());
    let mut g = vec![1u64; d + 1];
    for k in 1..=d {
        let mut sum = 0u64;
        for j in 1..=k.min(big_n) {
            // (a·j - (k - j)) c_j g_{k-j}
            let coef = field.sub(field.mul(a, j as u64), (k - j) as u64);
            sum = field.add(sum, field.mul(coef, field.mul(rev[j], g[k - j])));
        }
        g[k] = field.mul(sum, field.inv(k as u64));
    }
    let root: Vec<u64> = g.into_iter().rev().collect();
    let mut pow = vec![1u64];
    for _ in 0..m {
        pow = field.poly_mul(&pow, &root);
    }
    (pow == c).then_some(root)
}

/// Characteristic polynomial of multiplication by `Θ` on the algebra.
pub fn char_poly(theta: &MultiPoly, a: &QuotientAlgebra) -> Result<UniPoly> {
    let s = ScaledMultiplication::new(theta, a)?;
    let need = s.primes_needed(a.dim()) + VERIFY_PRIMES;
    let mut primes = Vec::with_capacity(need);
    let mut residues = Vec::with_capacity(need);
    for p in large_primes() {
        if primes.len() == need {
            break;
        }
        if let Some(c) = s.charpoly_mod(Field::new(p)) {
            primes.push(p);
            residues.push(c);
        }
    }
    let coeffs = reconstruct(&residues, &primes, VERIFY_PRIMES).ok_or_else(|| {
        Error::Inconsistent("characteristic polynomial failed verification".into())
    })?;
    Ok(unscale(&coeffs, s.lambda()))
}

/// The exact `m`-th root `R` of `C_Θ`. Only `R` is reconstructed, so the
/// prime count follows `deg R`; every prime checks `R^m = C`.
pub(crate) fn resolvent_poly(theta: &MultiPoly, a: &QuotientAlgebra, m: usize) -> Result<UniPoly> {
    let s = ScaledMultiplication::new(theta, a)?;
    if m == 0 || !a.dim().is_multiple_of(m) {
        return Err(Error::NotPerfectPower(m));
    }
    let need = s.primes_needed(a.dim() / m) + VERIFY_PRIMES;
    let mut primes = Vec::with_capacity(need);
    let mut r_res = Vec::with_capacity(need);
    for p in large_primes() {
        if primes.len() == need {
            break;
        }
        let field = Field::new(p);
        let Some(c) = s.charpoly_mod(field) else {
            continue;
        };
        let r = root_mod(&field, &c, m).ok_or(Error::NotPerfectPower(m))?;
        primes.push(p);
        r_res.push(r);
    }
    let r = reconstruct(&r_res, &primes, VERIFY_PRIMES)
        .ok_or_else(|| Error::Inconsistent("resolvent failed verification".into()))?;
    Ok(unscale(&r, s.lambda()))
}

/// Squarefree part of the characteristic polynomial, monic.
pub fn min_poly(theta: &MultiPoly, a: &QuotientAlgebra) -> Result<UniPoly> {
    Ok(char_poly(theta, a)?.squarefree_part()?.monic())
}
