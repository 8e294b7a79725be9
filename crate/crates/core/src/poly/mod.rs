//! Exact polynomial arithmetic over the rationals, modular factorization,
//! and certified complex roots.

mod ball;
mod factor;
pub mod modp;
mod multi;
mod parse;
mod roots;
mod uni;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use ball::{Ball, ComplexBall};
pub use factor::{factor_rationals, Factorization};
pub use multi::{Monomial, MultiPoly};
pub use parse::{parse_multivariate, parse_univariate};
pub use roots::{complex_roots, evaluate_at, RootVector};
pub use uni::{is_rational_square, UniPoly};

pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `a/b` as a rational.
pub fn qq(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub(crate) fn fmt_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
