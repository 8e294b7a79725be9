//! Certified complex roots. Starting points come from Aberth iteration in
//! double precision; they are polished by Weierstrass (Durand–Kerner)
//! corrections in fixed point and certified by Gerschgorin discs built from
//! rigorous bounds on the corrections.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ball, ComplexBall, MultiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Isolating enclosures for all roots of `source`, in canonical order:
/// ascending real part, ties (overlapping real parts) broken by imaginary
/// part.
#[derive(Clone, Debug)]
pub struct RootVector {
    values: Vec<ComplexBall>,
    precision: u32,
    source: UniPoly,
}

pub fn complex_roots(g: &UniPoly, precision: u32) -> Result<RootVector> {
    if g.is_zero() || g.degree() == 0 {
        return Err(Error::RootIsolation("polynomial has no roots".into()));
    }
    if !g.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let f = g.monic();
    let guesses = aberth_f64(&f);
    let mut values = certify_from(&f, &guesses, precision)?;
    values.sort_by(canonical_cmp);
    Ok(RootVector {
        values,
        precision,
        source: g.clone(),
    })
}

fn canonical_cmp(a: &ComplexBall, b: &ComplexBall) -> Ordering {
    if a.re.overlaps(&b.re) {
        a.im.mid_raw().cmp(b.im.mid_raw())
    } else {
        a.re.mid_raw().cmp(b.re.mid_raw())
    }
}

impl RootVector {
    pub fn values(&self) -> &[ComplexBall] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn source(&self) -> &UniPoly {
        &self.source
    }

    /// Same roots, same order, enclosed to at least `precision` bits.
    pub fn refine(&self, precision: u32) -> Result<RootVector> {
        if precision <= self.precision {
            return Ok(self.clone());
        }
        let f = self.source.monic();
        let guesses: Vec<(f64, f64)> = self.values.iter().map(ComplexBall::to_f64).collect();
        let values = certify_from(&f, &guesses, precision)?;
        // Match each new enclosure to the old one containing it.
        let mut ordered = vec![None; values.len()];
        for v in values {
            let w = self.precision;
            let coarse = ComplexBall::new(rescale(&v.re, w), rescale(&v.im, w));
            let slot = self
                .values
                .iter()
                .position(|old| old.overlaps(&coarse))
                .ok_or_else(|| Error::RootIsolation("refined root left its enclosure".into()))?;
            if ordered[slot].is_some() {
                return Err(Error::RootIsolation(
                    "refinement matched a root twice".into(),
                ));
            }
            ordered[slot] = Some(v);
        }
        Ok(RootVector {
            values: ordered
                .into_iter()
                .map(|v| v.expect("bijective match"))
                .collect(),
            precision,
            source: self.source.clone(),
        })
    }

    /// `σ*α = (α_σ(1), ..., α_σ(n))`.
    pub fn permuted(&self, sigma: &crate::perm::Permutation) -> Result<Vec<ComplexBall>> {
        sigma.act_tuple(&self.values)
    }

    /// Encloses `p(α)`.
    pub fn evaluate(&self, p: &MultiPoly) -> Result<ComplexBall> {
        evaluate_at(p, &self.values)
    }
}

/// Encloses `p(z)` for a tuple of enclosures.
pub fn evaluate_at(p: &MultiPoly, point: &[ComplexBall]) -> Result<ComplexBall> {
    let w = point.first().map_or(64, ComplexBall::prec);
    p.evaluate_with(
        point,
        ComplexBall::from_rational(&Rational::zero(), w),
        |c| ComplexBall::from_rational(c, w),
        |a, b| a + b,
        |a, b| a * b,
    )
}

/// Shrinks precision (the result still encloses the same value).
fn rescale(b: &Ball, w: u32) -> Ball {
    let shift = b.prec() - w;
    let unit = BigInt::one() << shift;
    let (mid, low) = b.mid_raw().div_mod_floor(&unit);
    let mut rad = (b.rad_raw() + &unit - 1u32) >> shift;
    if !low.is_zero() {
        rad += 1u32;
    }
    Ball::new(mid, rad, w)
}

fn aberth_f64(f: &UniPoly) -> Vec<(f64, f64)> {
    let n = f.degree();
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|a| a.to_f64().unwrap_or(0.0))
        .collect();
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            let r = 0.5 * bound.min(1e6).max(1.0);
            (r * t.cos(), r * t.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
            for a in c.iter().rev() {
                dp = cmul(dp, z[i]);
                dp.0 += p.0;
                dp.1 += p.1;
                p = cmul(p, z[i]);
                p.0 += a;
            }
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let inv = cdiv((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s.0 += inv.0;
                    s.1 += inv.1;
                }
            }
            let denom = (
                1.0 - (ratio.0 * s.0 - ratio.1 * s.1),
                -(ratio.0 * s.1 + ratio.1 * s.0),
            );
            let step = cdiv(ratio, denom);
            if step.0.is_finite() && step.1.is_finite() {
                z[i].0 -= step.0;
                z[i].1 -= step.1;
                moved =
                    moved.max((step.0.abs() + step.1.abs()) / (1.0 + z[i].0.abs() + z[i].1.abs()));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Exact fixed-point complex number at scale `2^w`.
#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn mul(&self, o: &Fx, w: u32) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> w,
            im: (&self.re * &o.im + &self.im * &o.re) >> w,
        }
    }

    fn div(&self, o: &Fx, w: u32) -> Option<Fx> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << w).div_floor(&d);
        let im = ((&self.im * &o.re - &self.re * &o.im) << w).div_floor(&d);
        Some(Fx { re, im })
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn ball(&self, w: u32) -> ComplexBall {
        ComplexBall::new(
            Ball::new(self.re.clone(), BigInt::zero(), w),
            Ball::new(self.im.clone(), BigInt::zero(), w),
        )
    }
}

fn from_f64(x: f64, w: u32) -> BigInt {
    let r = Rational::from_float(x).unwrap_or_else(Rational::zero);
    (r * Rational::from_integer(BigInt::one() << w))
        .round()
        .to_integer()
}

/// Polishes the guesses and certifies one enclosure per root at `prec` bits.
fn certify_from(f: &UniPoly, guesses: &[(f64, f64)], prec: u32) -> Result<Vec<ComplexBall>> {
    let n = f.degree();
    if n == 1 {
        let r = -f.coeff(0);
        return Ok(vec![ComplexBall::from_rational(&r, prec)]);
    }
    let mut w = prec + 32 + 4 * n as u32;
    let cap = (prec + 32) * 8 + 4096;
    let mut z: Vec<Fx> = guesses
        .iter()
        .map(|&(re, im)| Fx {
            re: from_f64(re, w),
            im: from_f64(im, w),
        })
        .collect();
    loop {
        let coeffs: Vec<Fx> = f
            .coeffs()
            .iter()
            .map(|c| Fx {
                re: (c * Rational::from_integer(BigInt::one() << w))
                    .round()
                    .to_integer(),
                im: BigInt::zero(),
            })
            .collect();
        for _ in 0..(60 + 8 * n) {
            let mut next = z.clone();
            let mut done = true;
            for i in 0..n {
                let mut p = coeffs[n].clone();
                for c in coeffs[..n].iter().rev() {
                    p = p.mul(&z[i], w);
                    p.re += &c.re;
                }
                let mut d = Fx {
                    re: BigInt::one() << w,
                    im: BigInt::zero(),
                };
                for j in 0..n {
                    if j != i {
                        d = d.mul(&z[i].sub(&z[j]), w);
                    }
                }
                let Some(corr) = p.div(&d, w) else {
                    // Coincident iterates: nudge apart.
                    next[i].re += BigInt::one() << (w / 2);
                    done = false;
                    continue;
                };
                if corr.re.abs() + corr.im.abs() > BigInt::from(4) {
                    done = false;
                }
                next[i] = z[i].sub(&corr);
            }
            z = next;
            if done {
                break;
            }
        }
        if let Some(balls) = gerschgorin(f, &z, w, prec) {
            return Ok(balls
                .into_iter()
                .map(|b| ComplexBall::new(rescale(&b.re, prec), rescale(&b.im, prec)))
                .collect());
        }
        if w > cap {
            return Err(Error::PrecisionExhausted(w));
        }
        // Raise precision and continue from the current iterates.
        z = z
            .into_iter()
            .map(|x| Fx {
                re: x.re << w,
                im: x.im << w,
            })
            .collect();
        w *= 2;
    }
}

/// Gerschgorin inclusion: with Weierstrass corrections `W_i`, the discs
/// `D(z_i - W_i, (n-1)|W_i|)` contain all roots, one per disc when they are
/// pairwise disjoint. We use the enclosing discs `D(z_i, n|W_i|)`.
fn gerschgorin(f: &UniPoly, z: &[Fx], w: u32, prec: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let balls: Vec<ComplexBall> = z.iter().map(|x| x.ball(w)).collect();
    let coeffs: Vec<ComplexBall> = f
        .coeffs()
        .iter()
        .map(|c| ComplexBall::from_rational(c, w))
        .collect();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = coeffs[n].clone();
        for c in coeffs[..n].iter().rev() {
            p = &(&p * &balls[i]) + c;
        }
        let mut d = ComplexBall::from_rational(&Rational::one(), w);
        for j in 0..n {
            if j != i {
                d = &d * &(&balls[i] - &balls[j]);
            }
        }
        let lo = d.abs_lower_raw();
        if lo.is_zero() {
            return None;
        }
        // |W_i| ≤ |p| / |d|, in raw units, rounded up; times n.
        let wi = ((p.abs_upper_raw() << w) + &lo - 1u32) / &lo;
        radii.push(wi * BigInt::from(n) + 1u32);
    }
    let limit = BigInt::one() << (w - prec);
    if radii.iter().any(|r| r > &limit) {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            // Lower bound of |z_i - z_j| (max-norm) must exceed r_i + r_j.
            let gap = (&z[i].re - &z[j].re).abs().max((&z[i].im - &z[j].im).abs());
            if gap <= &radii[i] + &radii[j] {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = &radii[i];
        let mut im = Ball::new(z[i].im.clone(), r.clone(), w);
        // A real-centred disc of twice the radius that meets no other disc
        // holds a conjugation-stable single root, which is therefore real.
        if z[i].im.abs() <= *r {
            let wide = r * 2u32;
            let lonely = (0..n).filter(|&j| j != i).all(|j| {
                let gap = (&z[i].re - &z[j].re).abs().max(z[j].im.abs());
                gap > &wide + &radii[j]
            });
            if lonely {
                im = Ball::zero(w);
            }
        }
        out.push(ComplexBall::new(
            Ball::new(z[i].re.clone(), r.clone(), w),
            im,
        ));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_univariate, q, qq};

    fn p(s: &str) -> UniPoly {
        parse_univariate(s).unwrap()
    }

    fn tight(r: &RootVector, bits: u32) -> bool {
        r.values().iter().all(|v| v.is_tight(bits))
    }

    #[test]
    fn square_root_of_minus_one() {
        let r = complex_roots(&p("x^2 + 1"), 64).unwrap();
        assert!(tight(&r, 60));
        assert!(r.values()[0].re.contains_zero() && r.values()[0].im.contains(&q(-1)));
        assert!(r.values()[1].im.contains(&q(1)));
    }

    #[test]
    fn cube_root_of_two() {
        let r = complex_roots(&p("x^3 - 2"), 128).unwrap();
        assert!(tight(&r, 120));
        let real: Vec<&ComplexBall> = r
            .values()
            .iter()
            .filter(|v| v.im.radius().is_zero())
            .collect();
        assert_eq!(real.len(), 1);
        let x = &real[0].re;
        // 1.2599210498948731647672...
        assert!(
            x.lower() > qq(12599210498, 10_000_000_000)
                && x.upper() < qq(12599210499, 10_000_000_000)
        );
        let cube = &(x * x) * x;
        assert!(cube.contains(&q(2)));
        // Complex pair shares a real part and comes first.
        assert!(r.values()[0].re.overlaps(&r.values()[1].re));
        assert!(r.values()[0].im.upper() < q(0));
    }

    #[test]
    fn rational_roots_are_enclosed() {
        let r = complex_roots(&p("x^2 - 3*x + 2"), 64).unwrap();
        assert!(r.values()[0].contains(&q(1)));
        assert!(r.values()[1].contains(&q(2)));
        assert!(complex_roots(&p("(x - 1)^2"), 64).is_err());
    }

    #[test]
    fn vieta_within_tolerance() {
        for s in [
            "x^5 - x - 1",
            "3*x^4 - 7*x^3 + x - 11",
            "x^6 + x^3 + 1",
            "x^4 + 1",
        ] {
            let f = p(s);
            let r = complex_roots(&f, 96).unwrap();
            let n = f.degree();
            let mut sum = ComplexBall::from_rational(&q(0), 96);
            let mut prod = ComplexBall::from_rational(&q(1), 96);
            for v in r.values() {
                sum = &sum + v;
                prod = &prod * v;
            }
            assert!(sum.contains(&(-f.coeff(n - 1) / f.lead())), "{s}");
            let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
            assert!(prod.contains(&(sign * f.coeff(0) / f.lead())), "{s}");
        }
    }

    #[test]
    fn close_roots_and_refinement() {
        let f = p("(x - 1/1000000)*(x + 1/1000000)*(x^2 - 2)");
        let r = complex_roots(&f, 64).unwrap();
        assert!(r.values()[1].contains(&qq(-1, 1_000_000)));
        assert!(r.values()[2].contains(&qq(1, 1_000_000)));
        let r2 = r.refine(256).unwrap();
        assert!(tight(&r2, 250));
        for (a, b) in r.values().iter().zip(r2.values()) {
            let coarse = ComplexBall::new(rescale(&b.re, 64), rescale(&b.im, 64));
            assert!(a.overlaps(&coarse));
        }
    }

    #[test]
    fn round_trip_with_from_roots() {
        // pol(α) reproduces the monic polynomial within the enclosures.
        let f = p("2*x^4 - 3*x^3 + x^2 + 5");
        let r = complex_roots(&f, 80).unwrap();
        let mut coeffs = vec![ComplexBall::from_rational(&q(1), 80)];
        for v in r.values() {
            let mut next = vec![ComplexBall::from_rational(&q(0), 80); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * v);
            }
            coeffs = next;
        }
        for (k, c) in coeffs.iter().enumerate() {
            assert!(c.contains(&f.monic().coeff(k)), "coefficient {k}");
        }
    }
}
