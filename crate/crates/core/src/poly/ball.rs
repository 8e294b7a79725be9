//! Fixed-point midpoint–radius arithmetic. A [`Ball`] at precision `w`
//! stands for the real interval `[(mid - rad) / 2^w, (mid + rad) / 2^w]`;
//! every operation returns a ball containing all results of the exact
//! operation on members of the inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

impl Ball {
    pub fn new(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        assert!(!rad.is_negative());
        Ball { mid, rad, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Ball::new(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn from_rational(c: &Rational, prec: u32) -> Self {
        let scaled = c.numer() << prec;
        let (q, r) = scaled.div_mod_floor(c.denom());
        let rad = if r.is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        };
        Ball::new(q, rad, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_raw(&self) -> &BigInt {
        &self.rad
    }

    pub fn midpoint(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.prec)
    }

    pub fn radius(&self) -> Rational {
        Rational::new(self.rad.clone(), BigInt::one() << self.prec)
    }

    pub fn lower(&self) -> Rational {
        Rational::new(&self.mid - &self.rad, BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> Rational {
        Rational::new(&self.mid + &self.rad, BigInt::one() << self.prec)
    }

    pub fn contains(&self, c: &Rational) -> bool {
        &self.lower() <= c && c <= &self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        assert_eq!(self.prec, other.prec);
        (&self.mid - &other.mid).abs() <= &self.rad + &other.rad
    }

    /// Upper bound of `|x|` in raw units.
    pub fn abs_upper_raw(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    /// Lower bound of `|x|` in raw units (0 if the ball contains 0).
    pub fn abs_lower_raw(&self) -> BigInt {
        let v = self.mid.abs() - &self.rad;
        if v.is_negative() {
            BigInt::zero()
        } else {
            v
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// `true` when the radius is below `2^-bits`.
    pub fn is_tight(&self, bits: u32) -> bool {
        bits <= self.prec && self.rad < (BigInt::one() << (self.prec - bits))
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        assert_eq!(self.prec, rhs.prec);
        Ball::new(&self.mid + &rhs.mid, &self.rad + &rhs.rad, self.prec)
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        assert_eq!(self.prec, rhs.prec);
        Ball::new(&self.mid - &rhs.mid, &self.rad + &rhs.rad, self.prec)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(-&self.mid, self.rad.clone(), self.prec)
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        assert_eq!(self.prec, rhs.prec);
        let w = self.prec;
        let mid = (&self.mid * &rhs.mid) >> w;
        let spread = self.mid.abs() * &rhs.rad + rhs.mid.abs() * &self.rad + &self.rad * &rhs.rad;
        // Both shifts floor, so add one unit for each.
        let rad = (spread >> w) + 2;
        Ball::new(mid, rad, w)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:e} ± {:e}",
            self.to_f64(),
            self.radius().to_f64().unwrap_or(f64::NAN)
        )
    }
}

/// Rectangle `re + i·im` with real and imaginary balls.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        assert_eq!(re.prec, im.prec);
        ComplexBall { re, im }
    }

    pub fn from_rational(c: &Rational, prec: u32) -> Self {
        ComplexBall::new(Ball::from_rational(c, prec), Ball::zero(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    /// Whether the rational `c` may equal the enclosed value.
    pub fn contains(&self, c: &Rational) -> bool {
        self.re.contains(c) && self.im.contains_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    /// Upper bound on `|z|` in raw units.
    pub fn abs_upper_raw(&self) -> BigInt {
        self.re.abs_upper_raw() + self.im.abs_upper_raw()
    }

    /// Lower bound on `|z|` in raw units.
    pub fn abs_lower_raw(&self) -> BigInt {
        self.re.abs_lower_raw().max(self.im.abs_lower_raw())
    }

    pub fn is_tight(&self, bits: u32) -> bool {
        self.re.is_tight(bits) && self.im.is_tight(bits)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall::new(-&self.re, -&self.im)
    }
}

impl Mul for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexBall::new(re, im)
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + i({:?})", self.re, self.im)
    }
}
