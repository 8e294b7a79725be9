use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_coefficient, parse_univariate, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial `a_0 + a_1 x + ... + a_d x^d` over the
/// rationals. The coefficient vector never has trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - c`.
    pub fn linear(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    /// `pol(y) = Π (x - y_i)`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(c·x)`.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::new(vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &lin) + &Self::constant(a.clone())
        })
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.lead();
        if self.is_zero() || self.degree() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(quot), Self::new(r)))
    }

    /// Exact quotient; fails when the remainder is nonzero.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (qt, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision("univariate quotient"));
        }
        Ok(qt)
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Monic product of the distinct irreducible factors: `g / gcd(g, g')`.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's squarefree decomposition: monic `(s_k, k)` with
    /// `self = lead · Π s_k^k`, each `s_k` squarefree and coprime.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a)?;
            if b.degree() == 0 {
                break;
            }
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            k += 1;
        }
        Ok(out)
    }

    /// Lowest common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Primitive integer polynomial with positive leading coefficient, equal
    /// to `self` up to a rational unit.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self.denominator_lcm();
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in &mut ints {
                *c = &*c / &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        ints
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Resultant by the Euclidean algorithm over the rationals.
    pub fn resultant(&self, other: &UniPoly) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = Rational::one();
        loop {
            let (da, db) = (a.degree(), b.degree());
            if db == 0 {
                return res * num_traits::pow(b.lead(), da);
            }
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            if r.is_zero() {
                return Rational::zero();
            }
            let dr = r.degree();
            if da % 2 == 1 && db % 2 == 1 {
                res = -res;
            }
            res *= num_traits::pow(b.lead(), da - dr);
            a = b;
            b = r;
        }
    }

    /// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / a_d`.
    pub fn discriminant(&self) -> Rational {
        let d = self.degree();
        if d == 0 {
            return Rational::one();
        }
        let r = self.resultant(&self.derivative()) / self.lead();
        if (d * (d - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&fmt_coefficient(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", fmt_coefficient(&a), mono));
            }
        }
        s
    }
}

/// Whether a rational is the square of a rational.
pub fn is_rational_square(c: &Rational) -> bool {
    if c.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &(&r * &r) == n
    };
    is_sq(c.numer()) && is_sq(c.denom())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_univariate(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, qq};

    fn p(s: &str) -> UniPoly {
        parse_univariate(s).unwrap()
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(UniPoly::from_roots(&[q(1), q(2)]), p("x^2 - 3*x + 2"));
        assert_eq!(UniPoly::from_roots(&[]), UniPoly::one());
    }

    #[test]
    fn division_and_gcd() {
        let a = p("x^4 - 1");
        let b = p("x^2 - 1");
        assert_eq!(a.exact_div(&b).unwrap(), p("x^2 + 1"));
        assert!(a.exact_div(&p("x - 2")).is_err());
        assert_eq!(p("x^3 - x").gcd(&p("2*x^2 - 2*x")), p("x^2 - x"));
        let (qt, r) = p("x^3 + 2").div_rem(&p("2*x - 1")).unwrap();
        assert_eq!(&(&qt * &p("2*x - 1")) + &r, p("x^3 + 2"));
        assert!(r.degree() == 0);
    }

    #[test]
    fn squarefree_examples() {
        let g = p("(x - 1)^2*(x + 2)");
        assert_eq!(g.squarefree_part().unwrap(), p("(x - 1)*(x + 2)"));
        let f = p("3*x^3 - 2");
        assert_eq!(f.squarefree_part().unwrap(), f.monic());
        assert_eq!(f.pow(4).squarefree_part().unwrap(), f.monic());
        assert!(UniPoly::zero().squarefree_part().is_err());
        let dec = p("x*(x - 1)^2*(x + 3)^3")
            .squarefree_decomposition()
            .unwrap();
        assert_eq!(dec, vec![(p("x"), 1), (p("x - 1"), 2), (p("x + 3"), 3)]);
    }

    #[test]
    fn discriminants() {
        assert_eq!(p("x^3 - 3*x + 1").discriminant(), q(81));
        assert_eq!(p("x^3 - 2").discriminant(), q(-108));
        assert_eq!(p("x^2 + 1").discriminant(), q(-4));
        assert_eq!(p("2*x^2 - 3*x + 1").discriminant(), q(1));
        assert_eq!(p("x^4 + 1").discriminant(), q(256));
        assert!(is_rational_square(&qq(9, 4)));
        assert!(!is_rational_square(&q(-4)));
        assert!(!is_rational_square(&q(8)));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(f, g) = Π g(α) for monic f with roots α.
        let f = UniPoly::from_roots(&[q(1), q(-2), qq(1, 3)]);
        let g = p("x^2 + 5*x - 7");
        let direct: Rational = [q(1), q(-2), qq(1, 3)].iter().map(|a| g.eval(a)).product();
        assert_eq!(f.resultant(&g), direct);
    }

    #[test]
    fn shifts_and_scaling() {
        let f = p("x^3 - 2*x + 5");
        assert_eq!(f.shift(&q(1)).eval(&q(2)), f.eval(&q(3)));
        assert_eq!(f.scale_variable(&q(2)).eval(&q(3)), f.eval(&q(6)));
    }

    #[test]
    fn display() {
        assert_eq!(
            p("x^4 - 2*x^3 + 2*x^2 + 2").to_string(),
            "x^4 - 2*x^3 + 2*x^2 + 2"
        );
        assert_eq!(p("-x + 1/2").to_string(), "-x + 1/2");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(
            p("x^3 - 4*x").primitive_integer(),
            vec![0.into(), (-4).into(), 0.into(), 1.into()]
        );
    }
}
