//! Factorization over the rationals: squarefree decomposition, modular
//! factorization at a small prime, Hensel lifting and subset recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{small_primes, Field};
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// `unit · Π factor^multiplicity` with monic irreducible factors sorted by
/// degree, then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (h, k)| {
                &acc * &h.pow(*k)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Degrees of the factors counted with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(h, k)| std::iter::repeat_n(h.degree(), *k))
            .collect();
        d.sort_unstable();
        d
    }
}

pub fn factor_rationals(g: &UniPoly) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    for (s, k) in g.squarefree_decomposition()? {
        for h in factor_squarefree(&s) {
            factors.push((h, k));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization {
        unit: g.lead(),
        factors,
    })
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let mut ints = f.primitive_integer();
    let mut out = Vec::new();
    // Strip powers of x first; they would force bad primes.
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        out.push(UniPoly::x());
    }
    if ints.len() > 1 {
        for h in factor_primitive(&ints) {
            out.push(UniPoly::from_bigints(&h).monic());
        }
    }
    out
}

/// Primitive integer factors of a primitive squarefree integer polynomial
/// with positive leading coefficient and nonzero constant term.
fn factor_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let Some((field, modular)) = choose_prime(f) else {
        return vec![f.to_vec()];
    };
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let p = field.modulus();

    // Mignotte: any factor of lc·f has coefficients at most lc·2^n·||f||_2.
    let norm = f
        .iter()
        .map(|c| c * c)
        .fold(BigInt::zero(), |a, b| a + b)
        .sqrt()
        + 1;
    let bound = &lc * (BigInt::one() << n) * norm * 2;
    let mut pk = BigInt::from(p);
    let mut k = 1u32;
    while pk <= bound {
        pk *= p;
        k += 1;
    }

    let lifted = hensel_lift_all(f, &modular, field, k, &pk);
    recombine(f, lifted, &pk)
}

/// Tries a handful of good primes and keeps the one with fewest modular
/// factors.
fn choose_prime(f: &[BigInt]) -> Option<(Field, Vec<Vec<u64>>)> {
    let n = f.len() - 1;
    let mut best: Option<(Field, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes().skip_while(|&p| (p as usize) <= n).take(200) {
        let field = Field::new(p);
        if field.from_int(&f[n]) == 0 {
            continue;
        }
        let fp: Vec<u64> = f.iter().map(|c| field.from_int(c)).collect();
        if !field.is_squarefree(&fp) {
            continue;
        }
        let facs = field.factor_squarefree(&fp);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((field, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

fn to_mod(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_field(field: &Field, v: &[BigInt]) -> Vec<u64> {
    super::modp::trim(v.iter().map(|c| field.from_int(c)).collect())
}

/// Lifts `f ≡ lc · Π g_i (mod p)` to monic factors modulo `p^k`.
fn hensel_lift_all(
    f: &[BigInt],
    modular: &[Vec<u64>],
    field: Field,
    k: u32,
    pk: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(modular.len());
    let mut rest = reduce(f, pk);
    for i in 0..modular.len() - 1 {
        let a = &modular[i];
        let tail = modular[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| field.poly_mul(&acc, g));
        let lc = field.from_int(rest.last().expect("nonzero"));
        let b = field.poly_scale(&tail, lc);
        let (ak, bk) = hensel_lift(&rest, a, &b, field, k, pk);
        out.push(ak);
        rest = bk;
    }
    // The final factor carries the leading coefficient; make it monic.
    let lc = rest.last().expect("nonzero").clone();
    let inv = lc.modinv(pk).expect("unit leading coefficient");
    out.push(reduce(
        &rest.iter().map(|c| c * &inv).collect::<Vec<_>>(),
        pk,
    ));
    out
}

/// Linear Hensel lifting of `f ≡ a·b (mod p)` with `a` monic.
fn hensel_lift(
    f: &[BigInt],
    a: &[u64],
    b: &[u64],
    field: Field,
    k: u32,
    pk: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (g, s, t) = field.poly_xgcd(a, b);
    debug_assert_eq!(g, vec![1]);
    let p = BigInt::from(field.modulus());
    let mut pj = p.clone();
    let mut ak = to_mod(a);
    let mut bk = to_mod(b);
    for _ in 1..k {
        let prod = int_mul(&ak, &bk);
        let len = f.len().max(prod.len());
        let diff: Vec<BigInt> = (0..len)
            .map(|i| {
                let x = f.get(i).cloned().unwrap_or_default()
                    - prod.get(i).cloned().unwrap_or_default();
                x.mod_floor(pk)
            })
            .collect();
        debug_assert!(diff.iter().all(|c| (c % &pj).is_zero()));
        let e: Vec<BigInt> = diff.iter().map(|c| c / &pj).collect();
        let ep = to_field(&field, &e);
        let (q, r) = field.poly_divrem(&field.poly_mul(&ep, &t), a);
        let db = field.poly_add(&field.poly_mul(&ep, &s), &field.poly_mul(&q, b));
        ak = add_scaled(&ak, &r, &pj, pk);
        bk = add_scaled(&bk, &db, &pj, pk);
        pj *= &p;
    }
    (ak, bk)
}

fn add_scaled(a: &[BigInt], d: &[u64], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(d.len());
    let v: Vec<BigInt> = (0..len)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() + scale * BigInt::from(*d.get(i).unwrap_or(&0))
        })
        .collect();
    reduce(&v, m)
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = v.into_iter().map(|c| c / &g).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    if out.last().is_some_and(|c| c.sign() == Sign::Minus) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

/// Exact division of integer polynomials; `None` if not divisible over Z.
fn int_divide(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return None;
    }
    let lg = g.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dg].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in g.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            // Cheap constant-term filter before the full product.
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(pk));
            let c0 = symmetric(&[c0], pk).remove(0);
            if !c0.is_zero() && !(&lc * &rest[0]).is_multiple_of(&c0) {
                continue;
            }
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| {
                reduce(&int_mul(&acc, &lifted[i]), pk)
            });
            let cand = primitive(symmetric(&prod, pk));
            if let Some(qt) = int_divide(&rest, &cand) {
                out.push(cand);
                rest = qt;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive(rest));
    out
}

/// Index subsets of a given size in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_univariate, q};
    use num_traits::Signed;

    fn p(s: &str) -> UniPoly {
        parse_univariate(s).unwrap()
    }

    fn facs(s: &str) -> Vec<(UniPoly, usize)> {
        factor_rationals(&p(s)).unwrap().factors
    }

    /// Exhaustive search for a monic integer factor of degree ≤ n/2 with
    /// coefficients inside the Mignotte bound. Only usable for tiny inputs.
    fn has_small_factor(f: &UniPoly) -> bool {
        let n = f.degree();
        let ints = f.primitive_integer();
        assert!(ints[n].is_one(), "oracle needs monic integer input");
        let norm = ints.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
        for d in 1..=n / 2 {
            let bounds: Vec<i64> = (0..d)
                .map(|j| {
                    let binom = (0..j).fold(BigInt::one(), |acc, i| acc * (d - i) / (i + 1));
                    i64::try_from(binom * &norm).unwrap()
                })
                .collect();
            let mut cur: Vec<i64> = bounds.iter().map(|b| -b).collect();
            loop {
                let mut cand: Vec<i64> = cur.clone();
                cand.push(1);
                let g = UniPoly::from_ints(&cand);
                if f.div_rem(&g).unwrap().1.is_zero() {
                    return true;
                }
                let mut i = 0;
                while i < d {
                    if cur[i] < bounds[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = -bounds[i];
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        false
    }

    #[test]
    fn documented_examples() {
        assert_eq!(
            facs("x^4 - 1"),
            vec![(p("x - 1"), 1), (p("x + 1"), 1), (p("x^2 + 1"), 1)]
        );
        assert_eq!(facs("x^4 + 1"), vec![(p("x^4 + 1"), 1)]);
        assert!(!has_small_factor(&p("x^4 + 1")));
        assert_eq!(
            facs("x^3 - 4*x"),
            vec![(p("x - 2"), 1), (p("x"), 1), (p("x + 2"), 1)]
        );
        for r in [q(0), q(2), q(-2)] {
            assert!(p("x^3 - 4*x").eval(&r) == q(0));
        }
    }

    #[test]
    fn hard_cases() {
        // Swinnerton-Dyer: reducible modulo every prime.
        assert!(factor_rationals(&p("x^4 - 10*x^2 + 1"))
            .unwrap()
            .is_irreducible());
        assert!(!has_small_factor(&p("x^4 - 10*x^2 + 1")));
        let f = p("(x^2 - 2)*(x^2 - 3)*(x^2 - 5)*(x + 7)");
        let fz = factor_rationals(&f).unwrap();
        assert_eq!(fz.degrees(), vec![1, 2, 2, 2]);
        assert_eq!(fz.expand(), f);
        let g = p("(3*x^3 - 2)^2*(2*x + 1)/5");
        let gz = factor_rationals(&g).unwrap();
        assert_eq!(gz.expand(), g);
        assert_eq!(gz.factors, vec![(p("x + 1/2"), 1), (p("x^3 - 2/3"), 2)]);
        assert!(factor_rationals(&UniPoly::zero()).is_err());
        assert_eq!(factor_rationals(&p("5")).unwrap().factors, vec![]);
    }

    #[test]
    fn cyclotomic_products() {
        let f = p("x^12 - 1");
        let fz = factor_rationals(&f).unwrap();
        assert_eq!(fz.degrees(), vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn large_coefficients() {
        let f = p("(x^3 - 123456789*x + 987654321)*(x^4 + 1000003*x - 77777777)");
        let fz = factor_rationals(&f).unwrap();
        assert_eq!(fz.degrees(), vec![3, 4]);
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn small_irreducibility_matches_oracle() {
        for s in [
            "x^4 + x + 1",
            "x^4 + 4",
            "x^4 - 2",
            "x^5 - x - 1",
            "x^6 + x^3 + 1",
            "x^4 + 2*x^2 + 9",
            "x^6 - 9",
        ] {
            let f = p(s);
            let irreducible = factor_rationals(&f).unwrap().is_irreducible();
            assert_eq!(irreducible, !has_small_factor(&f), "{s}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn factorization_expands_back(
            a in proptest::collection::vec(-9i64..=9, 2..5),
            b in proptest::collection::vec(-9i64..=9, 2..5),
            c in proptest::collection::vec(-9i64..=9, 1..4),
        ) {
            let f = &(&UniPoly::from_ints(&a) * &UniPoly::from_ints(&b)) * &UniPoly::from_ints(&c);
            proptest::prop_assume!(!f.is_zero());
            let fz = factor_rationals(&f).unwrap();
            proptest::prop_assert_eq!(fz.expand(), f);
            for (h, _) in &fz.factors {
                proptest::prop_assert!(h.is_monic());
                if h.degree() <= 3 && h.degree() >= 2 {
                    // No rational root, so irreducible.
                    let ints = h.primitive_integer();
                    let (c0, cn) = (ints[0].abs(), ints[h.degree()].abs());
                    for num in 0..=i64::try_from(&c0).unwrap_or(0).min(2000) {
                        if num != 0 && !(&c0 % num).is_zero() { continue; }
                        for den in 1..=i64::try_from(&cn).unwrap_or(1).min(2000) {
                            if !(&cn % den).is_zero() { continue; }
                            for s in [1, -1] {
                                let r = Rational::new((s * num).into(), den.into());
                                proptest::prop_assert!(!h.eval(&r).is_zero());
                            }
                        }
                    }
                }
            }
        }
    }
}
