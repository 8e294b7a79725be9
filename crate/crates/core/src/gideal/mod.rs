//! Galois ideals: triangular sets, quotient algebras with staircase bases,
//! and the permutation sets attached to them.

mod algebra;
mod groups;
mod points;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_multivariate, MultiPoly};

pub use algebra::QuotientAlgebra;
pub use groups::{
    decomposition_group, injector, injector_unchecked, is_pure, variety_check, PurityReport,
    VarietyReport,
};
pub use points::{ideal_intersection, ideal_sum, points_ideal, relation_space};

/// A triangular set `f_i = x_i^{d_i} + g_i(x_1..x_i)` with `deg_{x_i} g_i < d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularIdeal {
    nvars: usize,
    gens: Vec<MultiPoly>,
    init_degrees: Vec<u32>,
}

impl TriangularIdeal {
    pub fn new(gens: Vec<MultiPoly>) -> Result<TriangularIdeal> {
        let n = gens.len();
        let mut init_degrees = Vec::with_capacity(n);
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if g.max_var().is_some_and(|v| v > i) {
                return Err(Error::NotTriangular(format!(
                    "f_{} involves later variables",
                    i + 1
                )));
            }
            let d = g.degree_in(i);
            if d == 0 {
                return Err(Error::NotTriangular(format!(
                    "f_{} does not involve x_{}",
                    i + 1,
                    i + 1
                )));
            }
            init_degrees.push(d);
        }
        // Shape of leading terms is checked when the algebra is built.
        let t = TriangularIdeal {
            nvars: n,
            gens,
            init_degrees,
        };
        QuotientAlgebra::from_triangular(&t)?;
        Ok(t)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn init_degrees(&self) -> &[u32] {
        &self.init_degrees
    }

    pub fn dimension(&self) -> usize {
        self.init_degrees.iter().map(|&d| d as usize).product()
    }

    pub fn to_algebra(&self) -> Result<QuotientAlgebra> {
        QuotientAlgebra::from_triangular(self)
    }

    /// Reads one generator per entry in the polynomial grammar.
    pub fn parse(gens: &[&str]) -> Result<TriangularIdeal> {
        let n = gens.len();
        let polys = gens
            .iter()
            .map(|g| parse_multivariate(g, n))
            .collect::<Result<Vec<_>>>()?;
        TriangularIdeal::new(polys)
    }
}

impl fmt::Display for TriangularIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Serialize for TriangularIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        gens.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriangularIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let gens = Vec::<String>::deserialize(d)?;
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        TriangularIdeal::parse(&refs).map_err(serde::de::Error::custom)
    }
}
