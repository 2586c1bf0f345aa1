//! Log-gamma, digamma and the cut-plane arctangent.
//!
//! `log_gamma` is the branch `l_{Γ,1}` of log Γ on `Re z > 0` normalized by
//! `l(1) = 0` and continuous in the right half-plane. It coincides with the
//! principal `ln Γ` on the positive axis but not elsewhere (its imaginary
//! part is unbounded).
//!
//! Both functions shift `z` to `w = z + n` with `Re w >= 10` and then use
//! the Stirling series with `K = 12` terms. For `Re w >= 0` the Binet
//! integral for the remainder gives
//!
//! ```text
//! |R_K(w)|  <= (pi/2) |B_2K| / K   * |w|^(1-2K)
//! |R'_K(w)| <= 2 |B_2K|            * |w|^(-2K)
//! ```
//!
//! which at `|w| >= 10` is far below double precision.

use num_complex::Complex64;

use super::complex::ComplexInterval;
use super::dd::{self, Dd};
use super::interval::Interval;
use super::EvalMode;
use crate::error::{Error, Result};

const SHIFT_TARGET: f64 = 10.0;
const TERMS: usize = 12;

/// `B_{2k}` as (numerator, denominator), k = 1..=12.
const BERNOULLI: [(f64, f64); TERMS] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

fn shift_count(re: f64) -> u32 {
    if re >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - re).ceil() as u32
    }
}

fn check_right_half(func: &'static str, re: f64) -> Result<()> {
    if re > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(func, format!("Re z = {re} is not positive")))
    }
}

/// Neumaier-compensated complex sum.
fn compensated_sum(terms: impl Iterator<Item = Complex64>) -> Complex64 {
    let (mut s, mut c) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for t in terms {
        for (sv, cv, tv) in [(&mut s.re, &mut c.re, t.re), (&mut s.im, &mut c.im, t.im)] {
            let u = *sv + tv;
            if sv.abs() >= tv.abs() {
                *cv += (*sv - u) + tv;
            } else {
                *cv += (tv - u) + *sv;
            }
            *sv = u;
        }
    }
    s + c
}

/// `ln(1 + w)` for complex `w`, accurate near 0.
pub(crate) fn clog1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// The branch `l_{Γ,1}(z)` of `log Γ(z)` for `Re z > 0`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_right_half("log_gamma", z.re)?;
    if z.im < 0.0 {
        return log_gamma(z.conj()).map(|v| v.conj());
    }
    let n = shift_count(z.re);
    let x = Dd::sum(z.re, n as f64);
    let y = Dd::new(z.im);
    let w = Complex64::new(x.to_f64(), z.im);

    // leading terms in double-double:
    //   Re = (x - 1/2) ln|w| - y arg w - x + ln(2pi)/2
    //   Im = (x - 1/2) arg w + y ln|w| - y
    let ln_abs = (x * x + y * y).ln().mul_f64(0.5);
    let arg = Dd::arg_right(x, y);
    let xm = x - Dd::new(0.5);
    let re = xm * ln_abs - y * arg - x + dd::HALF_LN_2PI;
    let im = xm * arg + y * ln_abs - y;

    let r = w.inv();
    let r2 = r * r;
    let mut pow = r;
    let mut series = Vec::with_capacity(TERMS + n as usize);
    for (k, &(num, den)) in BERNOULLI.iter().enumerate().take(TERMS - 1) {
        let k = (k + 1) as f64;
        series.push(pow * (num / (den * 2.0 * k * (2.0 * k - 1.0))));
        pow *= r2;
    }
    // lower-order parts of the leading terms go into the compensated sum
    series.push(Complex64::new(re.lo, im.lo));
    for k in 0..n {
        series.push(-(z + k as f64).ln());
    }
    let tail = compensated_sum(series.into_iter().rev());
    Ok(Complex64::new(re.hi, im.hi) + tail)
}

/// Enclosure of `l_{Γ,1}` over a rectangle in the right half-plane.
pub fn log_gamma_enclosure(z: ComplexInterval) -> Result<ComplexInterval> {
    check_right_half("log_gamma_enclosure", z.re.lo())?;
    let n = shift_count(z.re.lo());
    let w = z + Interval::point(n as f64);
    let half = Interval::point(0.5);
    let ln_w = w.ln()?;
    let half_ln_2pi = Interval::around(dd::HALF_LN_2PI.hi, 1);
    let mut acc = (w - half) * ln_w - w + half_ln_2pi;

    let r = w.recip();
    let r2 = r.sqr();
    let mut pow = r;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate().take(TERMS - 1) {
        let k = (k + 1) as f64;
        let coef = Interval::point(num) / Interval::point(den * 2.0 * k * (2.0 * k - 1.0));
        acc = acc + pow * coef;
        pow = pow * r2;
    }
    let (bn, bd) = BERNOULLI[TERMS - 1];
    let abs_w = w.abs().lo();
    let kk = TERMS as f64;
    let bound = Interval::pi() * Interval::point(bn.abs())
        / Interval::point(2.0 * bd * kk)
        / Interval::point(abs_w).powi(2 * TERMS as i32 - 1);
    acc = acc.inflate(bound.hi());

    for k in 0..n {
        acc = acc - (z + Interval::point(k as f64)).ln()?;
    }
    Ok(acc)
}

/// `Γ'/Γ(z)` for `Re z > 0`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_right_half("digamma", z.re)?;
    let n = shift_count(z.re);
    let w = z + n as f64;
    let r = w.inv();
    let r2 = r * r;
    let mut terms = Vec::with_capacity(TERMS + n as usize + 2);
    terms.push(w.ln());
    terms.push(-0.5 * r);
    let mut pow = r2;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate().take(TERMS - 1) {
        let k = (k + 1) as f64;
        terms.push(-pow * (num / (den * 2.0 * k)));
        pow *= r2;
    }
    for k in 0..n {
        terms.push(-(z + k as f64).inv());
    }
    Ok(compensated_sum(terms.into_iter().rev()))
}

/// Enclosure of `Γ'/Γ` over a rectangle in the right half-plane.
pub fn digamma_enclosure(z: ComplexInterval) -> Result<ComplexInterval> {
    check_right_half("digamma_enclosure", z.re.lo())?;
    let n = shift_count(z.re.lo());
    let w = z + Interval::point(n as f64);
    let r = w.recip();
    let r2 = r.sqr();
    let mut acc = w.ln()? - r.scale(Interval::point(0.5));
    let mut pow = r2;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate().take(TERMS - 1) {
        let k = (k + 1) as f64;
        let coef = Interval::point(num) / Interval::point(den * 2.0 * k);
        acc = acc - pow * coef;
        pow = pow * r2;
    }
    let (bn, bd) = BERNOULLI[TERMS - 1];
    let abs_w = w.abs().lo();
    let bound = Interval::point(2.0 * bn.abs()) / Interval::point(bd) / Interval::point(abs_w).powi(2 * TERMS as i32);
    acc = acc.inflate(bound.hi());
    for k in 0..n {
        acc = acc - (z + Interval::point(k as f64)).recip();
    }
    Ok(acc)
}

/// The two-term asymptotic form `log z - 1/(2z)` widened by `3/(2|z|^2)`.
///
/// This is a coarse enclosure valid on all of `Re z > 0` without shifting;
/// it is used as an independent consistency check on [`digamma`].
pub fn digamma_asymptotic_enclosure(z: Complex64) -> Result<ComplexInterval> {
    check_right_half("digamma_asymptotic_enclosure", z.re)?;
    let zi = ComplexInterval::point(z);
    let main = zi.ln()? - zi.recip().scale(Interval::point(0.5));
    let r = Interval::point(1.5) / zi.norm_sqr();
    Ok(main.inflate(r.hi()))
}

/// Evaluate `l_{Γ,1}` in the requested mode. `Fast` returns a point.
pub fn log_gamma_branch(z: Complex64, mode: EvalMode) -> Result<ComplexInterval> {
    match mode {
        EvalMode::Fast => log_gamma(z).map(ComplexInterval::point),
        EvalMode::Enclosure => log_gamma_enclosure(ComplexInterval::point(z)),
    }
}

/// Evaluate the digamma function in the requested mode.
pub fn digamma_eval(z: Complex64, mode: EvalMode) -> Result<ComplexInterval> {
    match mode {
        EvalMode::Fast => digamma(z).map(ComplexInterval::point),
        EvalMode::Enclosure => digamma_enclosure(ComplexInterval::point(z)),
    }
}

/// Arctangent on the plane cut along `i[1, inf)` and `-i[1, inf)`:
/// `arctan z = (i/2) [log(1 - iz) - log(1 + iz)]` with principal logs.
pub fn arctan_cut(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im.abs() >= 1.0 {
        return Err(Error::domain("arctan_cut", format!("{z} lies on a branch cut")));
    }
    let iz = Complex64::new(-z.im, z.re);
    let d = clog1p(-iz) - clog1p(iz);
    Ok(Complex64::new(-0.5 * d.im, 0.5 * d.re))
}

/// Enclosure of [`arctan_cut`] over a rectangle that avoids the cuts.
pub fn arctan_cut_enclosure(z: ComplexInterval) -> Result<ComplexInterval> {
    let iz = z.mul_i();
    let d = (-iz).ln_1p()? - iz.ln_1p()?;
    let half = Interval::point(0.5);
    Ok(ComplexInterval::new(-d.im * half, d.re * half))
}
