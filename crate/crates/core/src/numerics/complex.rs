//! Rectangular complex enclosures.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::interval::{down, up, Interval};
use crate::error::{Error, Result};

/// A rectangle `re x im` in the complex plane.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval { re: Interval::ZERO, im: Interval::ZERO };
    pub const ONE: ComplexInterval = ComplexInterval { re: Interval::ONE, im: Interval::ZERO };

    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(z: Complex64) -> Self {
        ComplexInterval { re: Interval::point(z.re), im: Interval::point(z.im) }
    }

    pub fn real(x: Interval) -> Self {
        ComplexInterval { re: x, im: Interval::ZERO }
    }

    /// `i * y`.
    pub fn imag(y: Interval) -> Self {
        ComplexInterval { re: Interval::ZERO, im: y }
    }

    pub fn mid(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    /// Larger of the two half-widths.
    pub fn rad(&self) -> f64 {
        self.re.rad().max(self.im.rad())
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        ComplexInterval { re: self.re, im: -self.im }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ComplexInterval { re: -self.im, im: self.re }
    }

    pub fn scale(&self, s: Interval) -> Self {
        ComplexInterval { re: self.re * s, im: self.im * s }
    }

    pub fn inflate(&self, r: f64) -> Self {
        ComplexInterval { re: self.re.inflate(r), im: self.im.inflate(r) }
    }

    pub fn hull(&self, other: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.hull(&other.re), im: self.im.hull(&other.im) }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> Interval {
        self.norm_sqr().sqrt()
    }

    pub fn sqr(&self) -> Self {
        ComplexInterval {
            re: self.re.sqr() - self.im.sqr(),
            im: Interval::point(2.0) * self.re * self.im,
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        ComplexInterval { re: self.re / n, im: -self.im / n }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = ComplexInterval::ONE;
        let mut base = *self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        ComplexInterval { re: m * self.im.cos(), im: m * self.im.sin() }
    }

    /// Enclosure of the principal argument. Fails if the rectangle meets the
    /// closed negative real axis, where the principal argument jumps.
    pub fn arg(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::domain("ComplexInterval::arg", "rectangle contains 0"));
        }
        if self.re.lo() < 0.0 && self.im.contains_zero() {
            return Err(Error::domain("ComplexInterval::arg", "rectangle meets the negative real axis"));
        }
        // The angular extent of a convex set seen from an outside point is
        // attained at its vertices.
        let corners = [
            (self.re.lo(), self.im.lo()),
            (self.re.lo(), self.im.hi()),
            (self.re.hi(), self.im.lo()),
            (self.re.hi(), self.im.hi()),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in corners {
            // a corner exactly at the origin is excluded above, so atan2 of
            // (0, 0) cannot occur; signed zeros of y on the positive axis are
            // harmless since both signs give 0
            let a = y.atan2(x);
            lo = lo.min(a);
            hi = hi.max(a);
        }
        let pi_hi = up(std::f64::consts::PI);
        Interval::new(down(down(lo)).max(-pi_hi), up(up(hi)).min(pi_hi))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Self> {
        let arg = self.arg()?;
        let re = Interval::point(0.5) * self.norm_sqr().ln();
        Ok(ComplexInterval { re, im: arg })
    }

    /// Principal `log(1 + z)`, accurate for small `z`.
    pub fn ln_1p(&self) -> Result<Self> {
        let one_plus = ComplexInterval { re: self.re + Interval::ONE, im: self.im };
        let arg = one_plus.arg()?;
        // |1+z|^2 - 1 = 2 Re z + |z|^2
        let t = Interval::point(2.0) * self.re + self.norm_sqr();
        let re = Interval::point(0.5) * t.ln_1p();
        Ok(ComplexInterval { re, im: arg })
    }
}

impl From<Complex64> for ComplexInterval {
    fn from(z: Complex64) -> Self {
        ComplexInterval::point(z)
    }
}

impl From<Interval> for ComplexInterval {
    fn from(x: Interval) -> Self {
        ComplexInterval::real(x)
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;

    fn neg(self) -> Self {
        ComplexInterval { re: -self.re, im: -self.im }
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;

    fn add(self, rhs: Self) -> Self {
        ComplexInterval { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;

    fn sub(self, rhs: Self) -> Self {
        ComplexInterval { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;

    fn mul(self, rhs: Self) -> Self {
        ComplexInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Div for ComplexInterval {
    type Output = ComplexInterval;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Add<Interval> for ComplexInterval {
    type Output = ComplexInterval;

    fn add(self, rhs: Interval) -> Self {
        ComplexInterval { re: self.re + rhs, im: self.im }
    }
}

impl Sub<Interval> for ComplexInterval {
    type Output = ComplexInterval;

    fn sub(self, rhs: Interval) -> Self {
        ComplexInterval { re: self.re - rhs, im: self.im }
    }
}

impl Mul<Interval> for ComplexInterval {
    type Output = ComplexInterval;

    fn mul(self, rhs: Interval) -> Self {
        self.scale(rhs)
    }
}

impl std::iter::Sum for ComplexInterval {
    fn sum<I: Iterator<Item = ComplexInterval>>(iter: I) -> Self {
        iter.fold(ComplexInterval::ZERO, |a, b| a + b)
    }
}
