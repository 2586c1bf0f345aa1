//! Minimal double-double arithmetic (about 32 significant digits).
//!
//! Only used by the fast log-gamma path, where the leading Stirling terms
//! `y log|w|` and `y arg w` are of size ~10^4 and plain f64 loses the last
//! digit needed for 1e-12 absolute accuracy.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

pub(crate) const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
pub(crate) const FRAC_PI_2: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123_233_995_736_766e-17 };
pub(crate) const HALF_LN_2PI: Dd = Dd { hi: 0.918_938_533_204_672_8, lo: -3.878_294_158_067_241_5e-17 };

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        two_sum(a, b)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        quick_two_sum(q1, q2) + Dd::new(q3)
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(0.0);
        }
        let s = self.hi.sqrt();
        let r = self - two_prod(s, s);
        quick_two_sum(s, r.hi / (2.0 * s))
    }

    /// Natural logarithm of a positive double-double.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        // x = m 2^e with m in [1/sqrt2, sqrt2); ln m = 2 atanh((m-1)/(m+1))
        let mut e = self.hi.log2().round() as i32;
        let mut scale = 2f64.powi(-e);
        let mut m = Dd { hi: self.hi * scale, lo: self.lo * scale };
        if m.hi > std::f64::consts::SQRT_2 {
            e += 1;
            scale *= 0.5;
            m = Dd { hi: self.hi * scale, lo: self.lo * scale };
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            e -= 1;
            scale *= 2.0;
            m = Dd { hi: self.hi * scale, lo: self.lo * scale };
        }
        let s = (m - Dd::new(1.0)).div(m + Dd::new(1.0));
        let s2 = s * s;
        let mut term = s;
        let mut acc = s;
        for k in 1..24 {
            term = term * s2;
            let t = term.div(Dd::new((2 * k + 1) as f64));
            acc = acc + t;
            if t.hi.abs() < 1e-34 {
                break;
            }
        }
        acc.mul_f64(2.0) + LN2.mul_f64(e as f64)
    }

    /// Arctangent for `|x| <= 1`.
    fn atan_unit(self) -> Dd {
        // two halvings: atan x = 2 atan(x / (1 + sqrt(1 + x^2)))
        let mut x = self;
        for _ in 0..2 {
            let d = Dd::new(1.0) + (Dd::new(1.0) + x * x).sqrt();
            x = x.div(d);
        }
        let x2 = x * x;
        let mut term = x;
        let mut acc = x;
        for k in 1..30 {
            term = -(term * x2);
            let t = term.div(Dd::new((2 * k + 1) as f64));
            acc = acc + t;
            if t.hi.abs() < 1e-34 {
                break;
            }
        }
        acc.mul_f64(4.0)
    }

    /// Principal argument of `x + iy` for `x > 0`.
    pub fn arg_right(x: Dd, y: Dd) -> Dd {
        debug_assert!(x.hi > 0.0);
        if y.hi.abs() <= x.hi {
            y.div(x).atan_unit()
        } else if y.hi > 0.0 {
            FRAC_PI_2 - x.div(y).atan_unit()
        } else {
            -FRAC_PI_2 - x.div(y).atan_unit()
        }
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, b: Dd) -> Dd {
        let s = two_sum(self.hi, b.hi);
        let t = two_sum(self.lo, b.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, b: Dd) -> Dd {
        let p = two_prod(self.hi, b.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * b.lo + self.lo * b.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_two_is_ln2() {
        let l = Dd::new(2.0).ln();
        assert!((l - LN2).to_f64().abs() < 1e-30);
    }

    #[test]
    fn ln_of_ten() {
        // ln(10) = 2.302585092994045684017991454684...
        let l = Dd::new(10.0).ln();
        assert_eq!(l.hi, std::f64::consts::LN_10);
        assert!((l.lo - -2.170_756_223_382_249_4e-16).abs() < 1e-29);
    }

    #[test]
    fn atan_of_one_is_quarter_pi() {
        let a = Dd::arg_right(Dd::new(1.0), Dd::new(1.0));
        let q = FRAC_PI_2.mul_f64(0.5);
        assert!((a - q).to_f64().abs() < 1e-31);
    }

    #[test]
    fn arg_near_imaginary_axis() {
        let a = Dd::arg_right(Dd::new(1e-3), Dd::new(1000.0));
        assert!((a.to_f64() - (1000f64).atan2(1e-3)).abs() < 1e-15);
        let b = Dd::arg_right(Dd::new(1e-3), Dd::new(-1000.0));
        assert!((b.to_f64() + a.to_f64()).abs() < 1e-30);
    }

    #[test]
    fn sqrt_squares_back() {
        let s = Dd::new(2.0).sqrt();
        assert!(((s * s) - Dd::new(2.0)).to_f64().abs() < 1e-30);
    }
}
