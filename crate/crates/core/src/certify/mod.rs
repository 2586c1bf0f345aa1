//! Completeness certificates for lists of zeros.
//!
//! Every certificate evaluates a left side `lhs` in interval arithmetic and
//! declares the list complete on the window only when
//! `lhs.hi + w_f_tail + precision_slack <= threshold`. A failed inequality
//! proves nothing, hence the verdict `INCONCLUSIVE`.

mod diagnostics;
mod general;
mod report;
mod theorems;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use diagnostics::{
    guard_report, recommend_cutoff, zeta_counting_bounds, zeta_zero_sum_tails, CutoffRule, ZeroSumTails,
};
pub use general::{certify_general, explicit_formula_check, ResidualReport};
pub use report::{CertificateReport, GuardReport, TheoremUsed, Terms, Verdict};
pub use theorems::{
    certify_auto, default_h, certify_elliptic, certify_hecke, certify_zeta_r, certify_zeta_window, elliptic_penalty,
    hecke_penalty, zeta_theorem_cutoff, TheoremChoice,
};

use crate::arch::ArchOptions;
use crate::error::{Error, Result};
use crate::lfunc::{LFunctionDescriptor, ZeroList};
use crate::numerics::{ComplexInterval, EvalMode, Interval};
use crate::par::{map_collect, Parallelism};
use crate::primesum::DEFAULT_BUDGET;
use crate::testfn::{fhat, fhat_derivative_bound, fhat_enclosure, TestWindow};

/// Error allowance for the shortcut that counts deep-interior zeros as 1.
pub const SHORTCUT_SLACK: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub mode: EvalMode,
    /// Remainder budget for the prime-sum cutoff.
    pub budget: f64,
    pub arch: ArchOptions,
    /// Count zeros deep inside the window as exactly 1.
    pub shortcut: bool,
    /// Reject ordinate pairs closer than the precision unless multiplicity
    /// is asserted.
    pub strict: bool,
    /// The caller asserts that repeated ordinates are genuine multiple zeros.
    pub assert_multiplicity: bool,
    pub parallelism: Parallelism,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: EvalMode::Enclosure,
            budget: DEFAULT_BUDGET,
            arch: ArchOptions::default(),
            shortcut: false,
            strict: false,
            assert_multiplicity: false,
            parallelism: Parallelism::default(),
        }
    }
}

/// Zero-sum with bookkeeping.
pub(crate) struct ZeroSum {
    pub value: Interval,
    pub used: usize,
    pub slack: f64,
}

/// Half-width of the interior band where the shortcut applies:
/// `R* = (h/pi)(log m + 5)` for `m` listed zeros, so that each shortcut
/// zero is off by at most `(4/pi) e^{-5}/m`.
pub fn shortcut_radius(h: f64, m: usize) -> f64 {
    h / std::f64::consts::PI * ((m.max(1) as f64).ln() + 5.0)
}

fn fhat_re(w: &TestWindow, gamma: f64, mode: EvalMode) -> Result<Interval> {
    match mode {
        EvalMode::Enclosure => Ok(fhat_enclosure(w, ComplexInterval::point(Complex64::new(gamma, 0.0)))?.re),
        EvalMode::Fast => Ok(Interval::point(fhat(w, Complex64::new(gamma, 0.0))?.re)),
    }
}

/// `sum_j f^(gamma_j)` over the whole list, with precision slack
/// `m (2/h) delta` and the shortcut allowance when enabled.
pub(crate) fn zero_sum(w: &TestWindow, zeros: &ZeroList, opts: &CertifyOptions) -> Result<ZeroSum> {
    let m = zeros.len();
    let r_star = shortcut_radius(w.h, m);
    let band = (w.a + r_star, w.b - r_star);
    let shortcut = opts.shortcut && band.0 <= band.1;
    let values = map_collect(zeros.ordinates(), opts.parallelism, |&g| {
        if shortcut && band.0 <= g && g <= band.1 {
            Ok(Interval::ONE)
        } else {
            fhat_re(w, g, opts.mode)
        }
    });
    let mut value = Interval::ZERO;
    for v in values {
        value += v?;
    }
    let mut slack = m as f64 * fhat_derivative_bound(w) * zeros.precision_delta();
    if shortcut {
        slack += SHORTCUT_SLACK;
    }
    Ok(ZeroSum { value, used: m, slack })
}

/// `sum_poles n f^((rho - sigma0/2)/i)`, real part.
pub(crate) fn pole_term(desc: &LFunctionDescriptor, w: &TestWindow, mode: EvalMode) -> Result<(Interval, Option<String>)> {
    let half = Interval::point(desc.sigma0()) / Interval::point(2.0);
    let mut total = ComplexInterval::ZERO;
    for pole in desc.poles() {
        // (rho - sigma0/2)/i = Im rho - i (Re rho - sigma0/2)
        let shift = Interval::point(pole.location.re) - half;
        if !(shift.mag() < w.strip_half_width()) {
            return Err(Error::hypothesis(
                "pole inside the strip",
                format!("pole at {} is {} from the critical line, h/2 = {}", pole.location, shift.mag(), 0.5 * w.h),
            ));
        }
        let z = ComplexInterval::new(Interval::point(pole.location.im), -shift);
        let v = match mode {
            EvalMode::Enclosure => fhat_enclosure(w, z)?,
            EvalMode::Fast => ComplexInterval::point(fhat(w, z.mid())?),
        };
        total = total + v.scale(Interval::point(pole.multiplicity as f64));
    }
    let note = if total.im.mag() > 1e-9 * (1.0 + total.re.mag()) {
        Some(format!("pole contributions have imaginary part {:.3e}; only the real part is used", total.im.mid()))
    } else {
        None
    };
    Ok((total.re, note))
}

/// Checks common to every certificate; returns warnings.
pub(crate) fn check_zero_list(w: &TestWindow, zeros: &ZeroList, opts: &CertifyOptions) -> Result<Vec<String>> {
    let delta = zeros.precision_delta();
    if !(delta < w.h / 20.0) {
        return Err(Error::hypothesis("precision_delta < h/20", format!("delta = {delta}, h/20 = {}", w.h / 20.0)));
    }
    let mut warnings = Vec::new();
    let tight = zeros.close_pairs(delta);
    if opts.strict && !opts.assert_multiplicity && !tight.is_empty() {
        let (i, j) = tight[0];
        return Err(Error::hypothesis(
            "distinct ordinates",
            format!(
                "ordinates {} and {} are closer than the precision {delta}; assert multiplicity to list a multiple zero",
                zeros.ordinates()[i],
                zeros.ordinates()[j]
            ),
        ));
    }
    let close = zeros.close_pairs(2.0 * delta);
    if !close.is_empty() && !opts.assert_multiplicity {
        let shown: Vec<String> = close.iter().take(5).map(|&(i, _)| format!("{}", zeros.ordinates()[i])).collect();
        warnings.push(format!(
            "{} ordinate pair(s) within 2 delta (possible duplicate beyond multiplicity): {}",
            close.len(),
            shown.join(", ")
        ));
    }
    if opts.mode == EvalMode::Fast {
        warnings.push("fast mode: floating-point evaluation, not a rigorous certificate".into());
    }
    Ok(warnings)
}
