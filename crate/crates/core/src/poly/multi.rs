use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_coefficient, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::perm::{Action, Permutation};

/// Exponent vector of a monomial in `x_1..x_n`.
///
/// Ordered pure-lexicographically with `x_n > x_{n-1} > ... > x_1`, so the
/// leading term of a triangular generator `f_i` is its power of `x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divides by `x_i`, if possible.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// `σ.x^e = x_σ(1)^{e_1} ··· x_σ(n)^{e_n}`.
    pub fn permute(&self, sigma: &Permutation) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (j, &k) in self.0.iter().enumerate() {
            e[sigma.image(j)] = k;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial in `x_1..x_n` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// `u(x_{i+1})` as a polynomial in `nvars` variables.
    pub fn from_univariate(u: &UniPoly, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Highest index of a variable that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.0.iter().rposition(|&e| e > 0))
            .max()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-embeds into `nvars ≥ self.nvars()` variables.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            }),
        )
    }

    /// The univariate polynomial in `x_{i+1}`, when no other variable occurs.
    pub fn as_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            coeffs[m.0[i] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<MultiPoly> {
        if sigma.degree() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: sigma.degree(),
            });
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permute(sigma), c.clone()))
                .collect(),
        })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluation over any commutative ring given by closures; used for
    /// numeric and modular evaluation.
    pub fn evaluate_with<T: Clone>(
        &self,
        point: &[T],
        zero: T,
        from_rational: impl Fn(&Rational) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<T> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<T>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut pw: Vec<T> = Vec::with_capacity(d as usize + 1);
                for k in 0..=d {
                    if k == 0 {
                        pw.push(from_rational(&Rational::one()));
                    } else {
                        let next = mul(&pw[k as usize - 1], x);
                        pw.push(next);
                    }
                }
                pw
            })
            .collect();
        let mut total = zero;
        for (m, c) in &self.terms {
            let mut t = from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mul(&t, &powers[i][e as usize]);
                }
            }
            total = add(&total, &t);
        }
        Ok(total)
    }

    /// Substitutes `x_{i+1} := value` and keeps the arity.
    pub fn substitute(&self, i: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            out.add_term(Monomial(e), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Exact division by `x_i - x_j`; fails when the remainder is nonzero.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<MultiPoly> {
        // Synthetic division in x_i with coefficients in the other variables:
        // p = (x_i - x_j) q + r, where r = p|_{x_i = x_j}.
        let n = self.nvars;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(n);
        while let Some((m, c)) = rem
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .max_by(|a, b| a.0 .0[i].cmp(&b.0 .0[i]).then_with(|| a.0.cmp(b.0)))
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            let qm = m.div_var(i).expect("positive exponent");
            let step = MultiPoly::from_monomial(qm, c);
            let diff = &MultiPoly::var(n, i) - &MultiPoly::var(n, j);
            rem = &rem - &(&step * &diff);
            quot = &quot + &step;
        }
        if !rem.is_zero() {
            return Err(Error::InexactDivision("divided difference"));
        }
        Ok(quot)
    }

    pub fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        names: &dyn Fn(usize) -> String,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names(i)
                        } else {
                            format!("{}^{}", names(i), e)
                        }
                    })
                    .collect();
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{}", fmt_coefficient(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coefficient(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Action for MultiPoly {
    fn act(&self, sigma: &Permutation) -> Result<Self> {
        self.permute(sigma)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{}", i + 1))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_multivariate, q};

    fn mp(s: &str, n: usize) -> MultiPoly {
        parse_multivariate(s, n).unwrap()
    }

    #[test]
    fn lex_order_has_last_variable_largest() {
        let a = Monomial::new(vec![5, 0]);
        let b = Monomial::new(vec![0, 1]);
        assert!(b > a);
        assert!(Monomial::new(vec![1, 1]) > Monomial::new(vec![3, 0]));
        let p = mp("x1^3 + x2", 2);
        assert_eq!(p.leading().unwrap().0, &b);
    }

    #[test]
    fn monomial_action() {
        let sigma = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(mp("x1^2*x2", 2).permute(&sigma).unwrap(), mp("x2^2*x1", 2));
        assert!(mp("x1", 2).permute(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn action_composes_on_the_left() {
        let s = Permutation::parse(3, "(1 2)").unwrap();
        let t = Permutation::parse(3, "(2 3)").unwrap();
        let r = mp("x1^3*x2 + 2*x3^2 - x1*x3", 3);
        let lhs = r.permute(&t).unwrap().permute(&s).unwrap();
        let rhs = r.permute(&(&s * &t)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_uses_descending_lex() {
        assert_eq!(mp("2 + x1 - x2^2*x1", 2).to_string(), "-x1*x2^2 + x1 + 2");
        assert_eq!(mp("1/2*x3 - 3/4", 3).to_string(), "1/2*x3 - 3/4");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn evaluation_and_substitution() {
        let p = mp("x1*x2 + x3", 3);
        assert_eq!(p.evaluate(&[q(1), q(2), q(3)]).unwrap(), q(5));
        assert!(p.evaluate(&[q(1)]).is_err());
        assert_eq!(p.substitute(0, &q(2)), mp("2*x2 + x3", 3));
        assert_eq!(mp("7", 2).evaluate(&[q(3), q(-1)]).unwrap(), q(7));
    }

    #[test]
    fn divided_difference() {
        let p = mp("x1^3 - x2^3", 2);
        assert_eq!(
            p.div_by_difference(0, 1).unwrap(),
            mp("x1^2 + x1*x2 + x2^2", 2)
        );
        assert!(mp("x1", 2).div_by_difference(0, 1).is_err());
    }
}
