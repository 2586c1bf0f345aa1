//! Closed real intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side, which makes
//! the enclosure property hold without touching the FPU rounding mode.
//! Transcendental functions come from the platform libm and are widened by
//! two ulps; the functions used (`exp`, `ln`, `ln_1p`, `sin`, `cos`,
//! `atan`, `atan2`, `cosh`) are accurate to well under one ulp on glibc and
//! musl.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
pub(crate) fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
fn down2(x: f64) -> f64 {
    x.next_down().next_down()
}

#[inline]
fn up2(x: f64) -> f64 {
    x.next_up().next_up()
}

/// Product with the convention `0 * inf = 0`, which is the right one for
/// endpoint products of intervals.
#[inline]
fn mul0(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi` and no NaN endpoints.
/// Infinite endpoints are allowed.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: f64,
    hi: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::domain("Interval::new", "NaN endpoint"));
        }
        if lo > hi {
            return Err(Error::domain("Interval::new", format!("lo {lo} > hi {hi}")));
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval from endpoints that are already known to be
    /// ordered. NaN input yields [`Interval::ENTIRE`].
    pub(crate) fn from_bounds(lo: f64, hi: f64) -> Self {
        if lo.is_nan() || hi.is_nan() {
            return Interval::ENTIRE;
        }
        debug_assert!(lo <= hi, "unordered bounds {lo} {hi}");
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`; `x` must not be NaN.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "Interval::point(NaN)");
        Interval { lo: x, hi: x }
    }

    /// `[x - k ulp, x + k ulp]`, for quantities known only to within a few
    /// roundings.
    pub fn around(x: f64, ulps: u32) -> Self {
        let (mut lo, mut hi) = (x, x);
        for _ in 0..ulps {
            lo = down(lo);
            hi = up(hi);
        }
        Interval::from_bounds(lo, hi)
    }

    /// `[x - r, x + r]`, rounded outward.
    pub fn ball(x: f64, r: f64) -> Self {
        let r = r.abs();
        Interval::from_bounds(down(x - r), up(x + r))
    }

    /// Enclosure of the rational `num / den`.
    pub fn ratio(num: f64, den: f64) -> Self {
        Interval::point(num) / Interval::point(den)
    }

    /// Enclosure of pi.
    pub fn pi() -> Self {
        Interval { lo: std::f64::consts::PI, hi: up(std::f64::consts::PI) }
    }

    /// Enclosure of the Euler-Mascheroni constant.
    pub fn euler_gamma() -> Self {
        // 0.57721566490153286060...; the double is above the true value
        Interval::around(0.577_215_664_901_532_9, 1)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == f64::NEG_INFINITY || self.hi == f64::INFINITY {
            if self.lo.is_finite() {
                return self.lo;
            }
            if self.hi.is_finite() {
                return self.hi;
            }
            return 0.0;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the distance from [`Interval::mid`] to either endpoint.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        up((self.hi - m).max(m - self.lo))
    }

    pub fn width(&self) -> f64 {
        up(self.hi - self.lo)
    }

    /// Largest absolute value.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// `self + [-r, r]`.
    pub fn inflate(&self, r: f64) -> Interval {
        let r = r.abs();
        Interval::from_bounds(down(self.lo - r), up(self.hi + r))
    }

    /// True when every element is strictly below every element of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn abs(&self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn sqr(&self) -> Interval {
        let lo = self.mig();
        let hi = self.mag();
        Interval::from_bounds(down(lo * lo).max(0.0), up(hi * hi))
    }

    pub fn recip(&self) -> Interval {
        Interval::ONE / *self
    }

    pub fn powi(&self, n: i32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Interval::ONE;
        let mut base = *self;
        let mut k = n as u32;
        let even = n % 2 == 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if even {
            Interval::from_bounds(acc.lo.max(0.0), acc.hi)
        } else {
            acc
        }
    }

    pub fn sqrt(&self) -> Interval {
        if self.hi < 0.0 {
            return Interval::ENTIRE;
        }
        let lo = if self.lo <= 0.0 { 0.0 } else { down(self.lo.sqrt()).max(0.0) };
        Interval::from_bounds(lo, up(self.hi.sqrt()))
    }

    pub fn exp(&self) -> Interval {
        Interval::from_bounds(down2(self.lo.exp()).max(0.0), up2(self.hi.exp()))
    }

    /// Natural logarithm. Non-positive parts of the argument map to `-inf`.
    pub fn ln(&self) -> Interval {
        if self.hi <= 0.0 {
            return Interval::ENTIRE;
        }
        let lo = if self.lo <= 0.0 { f64::NEG_INFINITY } else { down2(self.lo.ln()) };
        Interval::from_bounds(lo, up2(self.hi.ln()))
    }

    /// `ln(1 + x)`, accurate for small `x`.
    pub fn ln_1p(&self) -> Interval {
        if self.hi <= -1.0 {
            return Interval::ENTIRE;
        }
        let lo = if self.lo <= -1.0 { f64::NEG_INFINITY } else { down2(self.lo.ln_1p()) };
        Interval::from_bounds(lo, up2(self.hi.ln_1p()))
    }

    pub fn atan(&self) -> Interval {
        let cap = up(std::f64::consts::FRAC_PI_2);
        Interval::from_bounds(down2(self.lo.atan()).max(-cap), up2(self.hi.atan()).min(cap))
    }

    /// Shared implementation for `sin` and `cos`: both are 1-Lipschitz, so
    /// `f(mid) +- rad` is an enclosure.
    fn lipschitz_unit(&self, f: fn(f64) -> f64) -> Interval {
        if !self.is_finite() || self.width() > 6.3 {
            return Interval { lo: -1.0, hi: 1.0 };
        }
        let m = self.mid();
        let r = self.rad();
        let v = f(m);
        let slack = up2(v.abs()) - v.abs() + f64::MIN_POSITIVE;
        let lo = down(v - r - slack).max(-1.0);
        let hi = up(v + r + slack).min(1.0);
        Interval::from_bounds(lo, hi)
    }

    pub fn sin(&self) -> Interval {
        if self.lo == self.hi {
            let v = self.lo.sin();
            return Interval::from_bounds(down2(v).max(-1.0), up2(v).min(1.0));
        }
        self.lipschitz_unit(f64::sin)
    }

    pub fn cos(&self) -> Interval {
        if self.lo == self.hi {
            let v = self.lo.cos();
            return Interval::from_bounds(down2(v).max(-1.0), up2(v).min(1.0));
        }
        self.lipschitz_unit(f64::cos)
    }

    pub fn cosh(&self) -> Interval {
        let (a, b) = (self.lo.cosh(), self.hi.cosh());
        if self.lo >= 0.0 {
            Interval::from_bounds(down2(a).max(1.0), up2(b))
        } else if self.hi <= 0.0 {
            Interval::from_bounds(down2(b).max(1.0), up2(a))
        } else {
            Interval::from_bounds(1.0, up2(a.max(b)))
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::from_bounds(down(self.lo + rhs.lo), up(self.hi + rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval::from_bounds(down(self.lo - rhs.hi), up(self.hi - rhs.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            mul0(self.lo, rhs.lo),
            mul0(self.lo, rhs.hi),
            mul0(self.hi, rhs.lo),
            mul0(self.hi, rhs.hi),
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::from_bounds(down(lo), up(hi))
    }
}

impl Div for Interval {
    type Output = Interval;

    /// Division by an interval containing zero returns [`Interval::ENTIRE`].
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        let q = [self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi];
        if q.iter().any(|v| v.is_nan()) {
            return Interval::ENTIRE;
        }
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::from_bounds(down(lo), up(hi))
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, rhs: f64) -> Interval {
                $tr::$m(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                $tr::$m(Interval::point(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}
