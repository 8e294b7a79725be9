//! Arithmetic in `F_p` and `F_p[x]` for word-sized primes, and factorization
//! of squarefree polynomials over `F_p` (distinct-degree plus
//! Cantor–Zassenhaus equal-degree splitting).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Rational, UniPoly};

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let f = Field::new(n);
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from just below `2^61`.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut cur = (1u64 << 61) - 1;
    std::iter::from_fn(move || {
        while !is_prime(cur) {
            cur -= 2;
        }
        let p = cur;
        cur -= 2;
        Some(p)
    })
}

/// Odd primes in ascending order starting at 3.
pub fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced")
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn from_rational(&self, c: &Rational) -> Option<u64> {
        let d = self.from_int(c.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_int(c.numer()), self.inv(d)))
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> BigInt {
        if a > self.p / 2 {
            BigInt::from(a) - BigInt::from(self.p)
        } else {
            BigInt::from(a)
        }
    }

    // Polynomials are coefficient vectors, ascending, without trailing zeros.

    pub fn reduce_poly(&self, f: &UniPoly) -> Option<Vec<u64>> {
        let v: Option<Vec<u64>> = f.coeffs().iter().map(|c| self.from_rational(c)).collect();
        v.map(trim)
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, y));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, b).1
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g` monic.
    pub fn poly_xgcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = match r0.last() {
            Some(&l) => self.inv(l),
            None => return (r0, s0, t0),
        };
        (
            self.poly_scale(&r0, l),
            self.poly_scale(&s0, l),
            self.poly_scale(&t0, l),
        )
    }

    pub fn poly_derivative(&self, a: &[u64]) -> Vec<u64> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
        let mut acc = self.poly_rem(&[1], m);
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), m);
            }
        }
        acc
    }

    pub fn poly_powmod_big(&self, base: &[u64], e: &num_bigint::BigUint, m: &[u64]) -> Vec<u64> {
        let mut acc = self.poly_rem(&[1], m);
        let b = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        a.len() > 1 && self.poly_gcd(a, &self.poly_derivative(a)).len() == 1
    }

    /// Monic irreducible factors of a squarefree polynomial of positive
    /// degree, sorted by degree then coefficients. Deterministic: the random
    /// splitting uses a fixed seed.
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<Vec<u64>> {
        let f = self.poly_monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            self.equal_degree(&g, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial,
    /// ascending.
    pub fn factor_degrees(&self, f: &[u64]) -> Vec<usize> {
        let f = self.poly_monic(f);
        let mut degs = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            degs.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
        }
        degs.sort_unstable();
        degs
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.clone(), rest.len() - 1));
                break;
            }
            h = self.poly_powmod(&h, self.p as u128, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        loop {
            let a: Vec<u64> = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = if self.p == 2 {
                // Trace map a + a^2 + ... + a^{2^{d-1}}.
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = self.poly_rem(&self.poly_mul(&t, &t), f);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                let e = (num_bigint::BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
                self.poly_sub(&self.poly_powmod_big(&a, &e, f), &[1])
            };
            let g = self.poly_gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&h, d, rng, out);
                return;
            }
        }
    }
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Chinese remaindering of residues into the symmetric range modulo the
/// product of the moduli.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::from(1);
    for (&r, &p) in residues.iter().zip(primes) {
        let f = Field::new(p);
        let cur = f.from_int(&value);
        let m_inv = f.inv(f.from_int(&modulus));
        let k = f.mul(f.sub(r, cur), m_inv);
        value += &modulus * BigInt::from(k);
        modulus *= BigInt::from(p);
    }
    let half = &modulus / 2;
    if value > half {
        value -= modulus;
    }
    value
}

/// Extends `x ≡ value (mod modulus)` by `x ≡ r (mod p)`; `value` stays in
/// `[0, modulus)`.
pub fn crt_step(value: &mut BigInt, modulus: &BigInt, r: u64, p: u64) {
    let f = Field::new(p);
    let k = f.mul(f.sub(r, f.from_int(value)), f.inv(f.from_int(modulus)));
    *value += modulus * BigInt::from(k);
}

/// The fraction `a/b ≡ r (mod m)` with `|a|, b ≤ sqrt(m/2)`, if there is one.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}
