//! The test function `f_{a,b,h}` and its Fourier transform.
//!
//! ```text
//! f(t)  = (1/2pi) (e^{-iat} - e^{-ibt}) / (it cosh(ht/2))
//! f^(z) = (2/pi) [arctan e^{pi(z-a)/h} - arctan e^{pi(z-b)/h}],  |Im z| < h/2
//! ```
//!
//! `f^` is the convolution of the indicator of `[a, b]` with
//! `1/(h cosh(pi z/h))`, so it is close to 1 well inside the window and
//! decays like `e^{-pi d/h}` at distance `d` outside.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::special::arctan_cut;
use crate::numerics::{arctan_cut_enclosure, ComplexInterval, EvalMode, Interval};

/// The window parameters `(a, b, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestWindow {
    pub a: f64,
    pub b: f64,
    pub h: f64,
}

impl TestWindow {
    pub fn new(a: f64, b: f64, h: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && h.is_finite()) {
            return Err(Error::domain("TestWindow::new", "non-finite parameter"));
        }
        if h <= 0.0 {
            return Err(Error::domain("TestWindow::new", format!("h = {h} must be positive")));
        }
        if a > b {
            return Err(Error::domain("TestWindow::new", format!("a = {a} > b = {b}")));
        }
        Ok(TestWindow { a, b, h })
    }

    /// Half the strip width: `f^` is defined for `|Im z| < h/2`.
    pub fn strip_half_width(&self) -> f64 {
        0.5 * self.h
    }

    /// Whether `b - a > 5h/pi`, the width needed for `Re f^ > 0.49` inside.
    pub fn is_wide(&self) -> bool {
        let width = Interval::point(self.b) - Interval::point(self.a);
        let need = Interval::point(5.0) * Interval::point(self.h) / Interval::pi();
        need.strictly_below(&width)
    }

    /// Whether `f` is an admissible test function for the given abscissae,
    /// i.e. `h > sigma1 - sigma0/2`.
    pub fn is_admissible(&self, sigma0: f64, sigma1: f64) -> bool {
        self.h > sigma1 - 0.5 * sigma0
    }

    fn check_strip(&self, func: &'static str, im_mag: f64) -> Result<()> {
        if im_mag < self.strip_half_width() {
            Ok(())
        } else {
            Err(Error::domain(func, format!("|Im z| = {im_mag} is not below h/2 = {}", self.strip_half_width())))
        }
    }
}

/// `sin(x)/x` with a short Taylor expansion near 0.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        // remainder below x^6/5040 < 2e-28
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Enclosure of `sin(x)/x`.
fn sinc_enclosure(x: Interval) -> Interval {
    let m = x.mag();
    if m < 0.5 {
        // 1 - x^2/6 <= sin(x)/x <= 1
        let lo = Interval::ONE - x.sqr() / Interval::point(6.0);
        return Interval::new(lo.lo(), 1.0).unwrap_or(Interval::new(-1.0, 1.0).unwrap());
    }
    if x.contains_zero() {
        // global minimum of sinc is about -0.2172
        return Interval::new(-0.2173, 1.0).unwrap();
    }
    let v = x.sin() / x;
    v.intersect(&Interval::new(-0.2173, 1.0).unwrap()).unwrap_or(v)
}

/// `f_{a,b,h}(t)`; at `t = 0` the limit `(b-a)/(2pi)`.
pub fn f_eval(w: &TestWindow, t: f64) -> Complex64 {
    // (e^{-iat} - e^{-ibt})/(it) = 2 e^{-ict} sin(dt)/t,  c = (a+b)/2, d = (b-a)/2
    let c = 0.5 * (w.a + w.b);
    let d = 0.5 * (w.b - w.a);
    let amp = d * sinc(d * t) / (PI * (0.5 * w.h * t).cosh());
    let (s, co) = (c * t).sin_cos();
    Complex64::new(amp * co, -amp * s)
}

/// Enclosure of `f_{a,b,h}(t)` over an interval of `t`.
pub fn f_enclosure(w: &TestWindow, t: Interval) -> ComplexInterval {
    let a = Interval::point(w.a);
    let b = Interval::point(w.b);
    let half = Interval::point(0.5);
    let c = (a + b) * half;
    let d = (b - a) * half;
    let dt = d * t;
    let amp = d * sinc_enclosure(dt) / (Interval::pi() * (half * Interval::point(w.h) * t).cosh());
    let ct = c * t;
    ComplexInterval::new(amp * ct.cos(), -(amp * ct.sin()))
}

/// The bound `|f(t)| < (2/pi) e^{-h|t|/2} / |t|`, valid for `|t| >= 1`.
pub fn f_abs_bound(w: &TestWindow, t: f64) -> f64 {
    FRAC_2_PI * (-0.5 * w.h * t.abs()).exp() / t.abs()
}

fn exp_arctan(v: Complex64) -> Result<Complex64> {
    arctan_cut(v.exp())
}

fn exp_arctan_enclosure(v: ComplexInterval) -> Result<ComplexInterval> {
    arctan_cut_enclosure(v.exp())
}

/// Which of the three algebraically equivalent forms of `f^` to use. Each
/// keeps the arctan arguments inside the unit disc so nothing overflows.
#[derive(Clone, Copy)]
enum Side {
    Left,
    Inside,
    Right,
}

fn side(w: &TestWindow, x: f64) -> Side {
    if x <= w.a {
        Side::Left
    } else if x >= w.b {
        Side::Right
    } else {
        Side::Inside
    }
}

/// `f^_{a,b,h}(z)` in plain floating point.
pub fn fhat(w: &TestWindow, z: Complex64) -> Result<Complex64> {
    w.check_strip("fhat", z.im.abs())?;
    let s = PI / w.h;
    let va = (z - w.a) * s;
    let vb = (z - w.b) * s;
    // arctan u + arctan(1/u) = pi/2 on Re u > 0, and e^v has positive real
    // part throughout the strip
    Ok(match side(w, z.re) {
        Side::Left => (exp_arctan(va)? - exp_arctan(vb)?) * FRAC_2_PI,
        Side::Right => (exp_arctan(-vb)? - exp_arctan(-va)?) * FRAC_2_PI,
        Side::Inside => Complex64::new(1.0, 0.0) - (exp_arctan(-va)? + exp_arctan(vb)?) * FRAC_2_PI,
    })
}

/// `1 - f^_{a,b,h}(z)`, computed without cancellation inside the window.
pub fn fhat_complement(w: &TestWindow, z: Complex64) -> Result<Complex64> {
    w.check_strip("fhat_complement", z.im.abs())?;
    let s = PI / w.h;
    let va = (z - w.a) * s;
    let vb = (z - w.b) * s;
    match side(w, z.re) {
        Side::Inside => Ok((exp_arctan(-va)? + exp_arctan(vb)?) * FRAC_2_PI),
        _ => Ok(Complex64::new(1.0, 0.0) - fhat(w, z)?),
    }
}

fn two_over_pi() -> Interval {
    Interval::point(2.0) / Interval::pi()
}

/// Enclosure of `f^_{a,b,h}` over a rectangle inside the strip.
pub fn fhat_enclosure(w: &TestWindow, z: ComplexInterval) -> Result<ComplexInterval> {
    w.check_strip("fhat_enclosure", z.im.mag())?;
    let s = Interval::pi() / Interval::point(w.h);
    let va = (z - Interval::point(w.a)) * s;
    let vb = (z - Interval::point(w.b)) * s;
    let k = two_over_pi();
    Ok(match side(w, z.re.mid()) {
        Side::Left => (exp_arctan_enclosure(va)? - exp_arctan_enclosure(vb)?) * k,
        Side::Right => (exp_arctan_enclosure(-vb)? - exp_arctan_enclosure(-va)?) * k,
        Side::Inside => ComplexInterval::ONE - (exp_arctan_enclosure(-va)? + exp_arctan_enclosure(vb)?) * k,
    })
}

/// Enclosure of `1 - f^_{a,b,h}`.
pub fn fhat_complement_enclosure(w: &TestWindow, z: ComplexInterval) -> Result<ComplexInterval> {
    w.check_strip("fhat_complement_enclosure", z.im.mag())?;
    let s = Interval::pi() / Interval::point(w.h);
    let va = (z - Interval::point(w.a)) * s;
    let vb = (z - Interval::point(w.b)) * s;
    match side(w, z.re.mid()) {
        Side::Inside => Ok((exp_arctan_enclosure(-va)? + exp_arctan_enclosure(vb)?) * two_over_pi()),
        _ => Ok(ComplexInterval::ONE - fhat_enclosure(w, z)?),
    }
}

/// `f^` in the requested evaluation mode.
pub fn fhat_eval(w: &TestWindow, z: Complex64, mode: EvalMode) -> Result<ComplexInterval> {
    match mode {
        EvalMode::Fast => fhat(w, z).map(ComplexInterval::point),
        EvalMode::Enclosure => fhat_enclosure(w, ComplexInterval::point(z)),
    }
}

/// Strict envelopes `lower < Re f^(z) < upper`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FhatBounds {
    pub lower: f64,
    pub upper: f64,
}

/// The envelope for `Re f^(z)` that applies at `Re z`:
///
/// * inside `[a, b]`: `1 - Re f^ < (4/pi) e^{-(pi/h) min(x-a, b-x)}`, and
///   `Re f^ > 0.49` when `b - a > 5h/pi`; upper envelope 1;
/// * outside `(a, b)`: `Re f^ < (2/pi) e^{-(pi/h) max(x-b, a-x)}`;
/// * everywhere: `Re f^ > 0`.
///
/// At `x = a` or `x = b` both cases apply and the tighter pair is returned.
pub fn fhat_bounds(w: &TestWindow, z: Complex64) -> Result<FhatBounds> {
    w.check_strip("fhat_bounds", z.im.abs())?;
    let x = Interval::point(z.re);
    let a = Interval::point(w.a);
    let b = Interval::point(w.b);
    let s = Interval::pi() / Interval::point(w.h);
    let mut lower = 0.0f64;
    let mut upper = 1.0f64;
    if w.a <= z.re && z.re <= w.b {
        let d = (x - a).min(&(b - x));
        let inner = Interval::ONE - Interval::point(4.0) / Interval::pi() * (-(s * d)).exp();
        lower = lower.max(inner.lo());
        if w.is_wide() {
            lower = lower.max(0.49);
        }
    }
    if z.re <= w.a || z.re >= w.b {
        let d = (x - b).max(&(a - x));
        let outer = two_over_pi() * (-(s * d)).exp();
        upper = upper.min(outer.hi());
    }
    Ok(FhatBounds { lower, upper })
}

/// Bound on `|d/dx Re f^(x + iy)|` used to turn ordinate errors into slack.
///
/// On the real axis the derivative is `(1/h)[sech(pi(x-a)/h) - sech(pi(x-b)/h)]`,
/// at most `1/h` in modulus; `2/h` leaves room for the two terms separately.
pub fn fhat_derivative_bound(w: &TestWindow) -> f64 {
    2.0 / w.h
}

/// The auxiliary pair `g(t) = (1/2) e^{-r|t| + iXt}`,
/// `g^(xi) = 1/((xi - X)^2 + r^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AuxPair {
    pub r: f64,
    pub x: f64,
}

impl AuxPair {
    pub fn g(&self, t: f64) -> Complex64 {
        Complex64::from_polar(0.5 * (-self.r * t.abs()).exp(), self.x * t)
    }

    pub fn ghat(&self, xi: f64) -> f64 {
        let d = xi - self.x;
        1.0 / (d * d + self.r * self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(a: f64, b: f64, h: f64) -> TestWindow {
        TestWindow::new(a, b, h).unwrap()
    }

    #[test]
    fn f_at_zero_is_width_over_two_pi() {
        let w = win(-1.0, 3.0, 2.0);
        let v = f_eval(&w, 0.0);
        assert!((v.re - 4.0 / (2.0 * PI)).abs() < 1e-16);
        assert_eq!(v.im, 0.0);
        assert!(f_enclosure(&w, Interval::point(0.0)).contains(v));
    }

    #[test]
    fn f_matches_definition() {
        let w = win(1.5, 7.0, 2.5);
        for &t in &[0.3, -2.0, 5.5, 1e-5] {
            let i = Complex64::new(0.0, 1.0);
            let direct = ((-i * w.a * t).exp() - (-i * w.b * t).exp()) / (i * t * (0.5 * w.h * t).cosh() * 2.0 * PI);
            // the direct quotient cancels for small t
            assert!((direct - f_eval(&w, t)).norm() < 1e-13 + 1e-15 / t.abs(), "t = {t}");
        }
    }

    #[test]
    fn f_conjugate_symmetry() {
        let w = win(2.0, 11.0, 1.7);
        for &t in &[0.1, 1.0, 4.2] {
            assert!((f_eval(&w, t).conj() - f_eval(&w, -t)).norm() < 1e-16);
        }
    }

    #[test]
    fn f_enclosure_contains_fast() {
        let w = win(-3.0, 20.0, 2.5);
        for k in 1..50 {
            let t = 0.37 * k as f64;
            assert!(f_enclosure(&w, Interval::point(t)).contains(f_eval(&w, t)));
        }
    }

    #[test]
    fn f_abs_bound_holds() {
        let w = win(-3.0, 20.0, 2.5);
        for k in 0..200 {
            let t = 1.0 + 0.05 * k as f64;
            assert!(f_eval(&w, t).norm() < f_abs_bound(&w, t));
        }
    }

    #[test]
    fn fhat_midpoint_value() {
        let w = win(0.0, 4.0, 1.0);
        let v = fhat(&w, Complex64::new(2.0, 0.0)).unwrap();
        let expect = 1.0 - (4.0 / PI) * (-PI * 4.0 / 2.0).exp().atan();
        assert!((v.re - expect).abs() < 1e-15);
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn fhat_at_edge_of_wide_window_is_half() {
        let w = win(0.0, 100.0, 1.0);
        let v = fhat(&w, Complex64::new(100.0, 0.0)).unwrap();
        assert!((v.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fhat_rejects_outside_strip() {
        let w = win(0.0, 10.0, 2.0);
        assert!(fhat(&w, Complex64::new(1.0, 1.0)).is_err());
        assert!(fhat(&w, Complex64::new(1.0, 0.999)).is_ok());
        assert!(fhat_bounds(&w, Complex64::new(1.0, -1.0)).is_err());
    }

    #[test]
    fn fhat_far_away_does_not_overflow() {
        let w = win(0.0, 10.0, 0.5);
        let v = fhat(&w, Complex64::new(1e6, 0.1)).unwrap();
        assert!(v.norm() == 0.0 || v.norm() < 1e-300);
        let e = fhat_enclosure(&w, ComplexInterval::point(Complex64::new(-1e6, 0.1))).unwrap();
        assert!(e.is_finite());
    }

    #[test]
    fn fhat_enclosure_contains_fast() {
        let w = win(-2.0, 9.0, 2.5);
        for k in 0..60 {
            let z = Complex64::new(-12.0 + 0.5 * k as f64, 0.02 * (k as f64) - 0.6);
            let e = fhat_enclosure(&w, ComplexInterval::point(z)).unwrap();
            let v = fhat(&w, z).unwrap();
            assert!(e.inflate(1e-15).contains(v), "{z}: {e:?} vs {v}");
            assert!(e.rad() < 1e-13);
        }
    }

    #[test]
    fn complement_is_one_minus_fhat() {
        let w = win(0.0, 30.0, 2.5);
        let z = Complex64::new(15.0, 0.3);
        let c = fhat_complement(&w, z).unwrap();
        let v = fhat(&w, z).unwrap();
        assert!((c + v - 1.0).norm() < 1e-15);
        assert!(c.re > 0.0 && c.re < 1e-7);
    }

    #[test]
    fn bounds_examples() {
        let h = 1.0;
        let w = win(0.0, 10.0, h);
        let b = fhat_bounds(&w, Complex64::new(h, 0.0)).unwrap();
        assert!((b.lower - (1.0 - 4.0 / PI * (-PI).exp())).abs() < 1e-15);
        let b = fhat_bounds(&w, Complex64::new(10.0 + h, 0.0)).unwrap();
        assert!((b.upper - 2.0 / PI * (-PI).exp()).abs() < 1e-15);
        assert_eq!(b.lower, 0.0);
    }

    #[test]
    fn derivative_bound_values() {
        assert!((fhat_derivative_bound(&win(0.0, 1.0, PI)) - 2.0 / PI).abs() < 1e-16);
        assert!((fhat_derivative_bound(&win(0.0, 1.0, 2.5)) - 0.8).abs() < 1e-16);
    }

    #[test]
    fn theorem_pole_lower_bound() {
        let (r, h) = (20.0, 2.5);
        let w = win(0.0, r, h);
        let v = fhat(&w, Complex64::new(0.0, 0.5)).unwrap();
        assert!(2.0 * v.re >= 1.0 - 4.0 / PI * (-PI / h * r).exp());
        assert!(2.0 * v.re <= 1.0);
    }

    #[test]
    fn window_validation() {
        assert!(TestWindow::new(1.0, 0.0, 1.0).is_err());
        assert!(TestWindow::new(0.0, 1.0, 0.0).is_err());
        assert!(TestWindow::new(0.0, f64::NAN, 1.0).is_err());
        assert!(win(0.0, 5.0 * 2.5 / PI + 1e-9, 2.5).is_wide());
        assert!(!win(0.0, 5.0 * 2.5 / PI, 2.5).is_wide());
    }
}
