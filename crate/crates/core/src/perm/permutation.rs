use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`.
///
/// Stored 0-based; serialized and displayed 1-based. The derived ordering is
/// lexicographic on the image list, which is the canonical order used for
/// group elements and coset representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "degree too large");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection",
                    images.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Builds a permutation from a 1-based image list such as `[2, 1, 3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("images are 1-based".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Builds a permutation of degree `n` from disjoint or overlapping cycles
    /// given 1-based; cycles compose right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut result = Permutation::identity(n);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &point) in cycle.iter().enumerate() {
                if point == 0 || point > n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {point} outside 1..{n}"
                    )));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[point - 1] = next - 1;
            }
            let c = Permutation::from_images(images)?;
            result = &result * &c;
        }
        Ok(result)
    }

    /// Parses either an image list `[2,1,3]` or cycle notation `(1 2)(3 4)`.
    /// Cycle notation needs the degree; image lists must agree with it.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('[') {
            let inner = text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidPermutation(text.to_string()))?;
            let images = parse_int_list(inner)?;
            let p = Permutation::from_one_based(&images)?;
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: p.degree(),
                });
            }
            return Ok(p);
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(text.to_string()))?;
            let cycle = parse_int_list(&open[..close])?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `τ σ τ⁻¹` for `self = σ`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        &(tau * self) * &tau.inverse()
    }

    /// Disjoint cycles (0-based), fixed points omitted, each starting at its
    /// least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.image(j);
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let cycles = self.cycle_type().len();
        (n - cycles).is_multiple_of(2)
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }

    /// The tuple action `σ * y = (y_σ(1), ..., y_σ(n))`.
    pub fn act_tuple<T: Clone>(&self, tuple: &[T]) -> Result<Vec<T>> {
        if tuple.len() != self.degree() {
            return Err(Error::Arity {
                expected: self.degree(),
                found: tuple.len(),
            });
        }
        Ok(self.images().map(|j| tuple[j].clone()).collect())
    }
}

fn parse_int_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("bad point `{s}`")))
        })
        .collect()
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Composition `self ∘ rhs`; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_one_based(images).unwrap()
    }

    #[test]
    fn compose_follows_right_to_left_convention() {
        assert_eq!(
            p(&[2, 1, 3]).compose(&p(&[1, 3, 2])).unwrap(),
            p(&[2, 3, 1])
        );
        assert_eq!(
            Permutation::identity(3).compose(&p(&[3, 1, 2])).unwrap(),
            p(&[3, 1, 2])
        );
        assert!(p(&[2, 3, 1]).compose(&p(&[3, 1, 2])).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        assert!(matches!(
            p(&[2, 1]).compose(&p(&[1, 2, 3])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn tuple_action() {
        let y = vec!['a', 'b', 'c'];
        assert_eq!(p(&[2, 1, 3]).act_tuple(&y).unwrap(), vec!['b', 'a', 'c']);
        assert!(p(&[2, 1]).act_tuple(&y).is_err());
    }

    #[test]
    fn cycle_notation_roundtrip() {
        let s = Permutation::parse(4, "(1 2)(3 4)").unwrap();
        assert_eq!(s, p(&[2, 1, 4, 3]));
        assert_eq!(s.to_string(), "(1 2)(3 4)");
        assert_eq!(
            Permutation::parse(3, "()").unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(Permutation::parse(3, "[2,3,1]").unwrap(), p(&[2, 3, 1]));
        assert_eq!(Permutation::parse(3, "(1 2 3)").unwrap(), p(&[2, 3, 1]));
        assert!(Permutation::parse(3, "(1 4)").is_err());
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
    }

    #[test]
    fn cycle_type_and_parity() {
        let s = p(&[2, 3, 1, 5, 4]);
        assert_eq!(s.cycle_type(), vec![2, 3]);
        assert!(!s.is_even());
        assert_eq!(s.order(), 6);
        assert_eq!(s.inverse().compose(&s).unwrap(), Permutation::identity(5));
    }
}
