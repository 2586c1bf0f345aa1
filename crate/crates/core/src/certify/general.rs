use serde::{Deserialize, Serialize};

use super::report::verdict_for;
use super::{check_zero_list, pole_term, zero_sum, CertificateReport, CertifyOptions, TheoremUsed, Terms};
use crate::arch::{w_inf_eval, WInf};
use crate::error::{Error, Result};
use crate::lfunc::{LFunctionDescriptor, ZeroList};
use crate::numerics::Interval;
use crate::primesum::{usable_cutoff, w_f_eval, PrimeSum};
use crate::testfn::TestWindow;

fn check_h(desc: &LFunctionDescriptor, w: &TestWindow) -> Result<()> {
    let need = 2.0 * desc.sigma1() - desc.sigma0();
    if w.h > need {
        Ok(())
    } else {
        Err(Error::hypothesis("h > 2 sigma1 - sigma0", format!("h = {}, 2 sigma1 - sigma0 = {need}", w.h)))
    }
}

fn prime_sum(
    desc: &LFunctionDescriptor,
    w: &TestWindow,
    opts: &CertifyOptions,
    warnings: &mut Vec<String>,
) -> Result<PrimeSum> {
    let (cutoff, capped) = usable_cutoff(desc, w.h, opts.budget)?;
    if capped {
        warnings.push(format!("prime-power cutoff capped at the coefficient data limit {cutoff}"));
    }
    w_f_eval(desc, w, cutoff, opts.mode, opts.parallelism)
}

/// The general inequality
/// `w_f + w_inf - sum_j f^(gamma_j) + sum_poles n f^((rho - sigma0/2)/i) <= 0.49`,
/// with the prime-sum remainder added to the decisive value.
pub fn certify_general(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    w: &TestWindow,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    check_h(desc, w)?;
    if !w.is_wide() {
        return Err(Error::hypothesis(
            "b - a > 5h/pi",
            format!("b - a = {}, 5h/pi = {}", w.b - w.a, 5.0 * w.h / std::f64::consts::PI),
        ));
    }
    let mut warnings = check_zero_list(w, zeros, opts)?;
    let (pole, note) = pole_term(desc, w, opts.mode)?;
    warnings.extend(note);
    let wf = prime_sum(desc, w, opts, &mut warnings)?;
    let winf = w_inf_eval(desc, w, &opts.arch)?;
    let zs = zero_sum(w, zeros, opts)?;
    let lhs = wf.value + winf.total - zs.value + pole;
    let terms = Terms {
        w_f: wf.value,
        w_f_tail: wf.tail_bound,
        cutoff: wf.cutoff,
        w_inf: winf.total,
        w_inf_remainder: 0.0,
        zero_sum: zs.value,
        pole_term: pole,
        precision_slack: zs.slack,
    };
    let theorem = TheoremUsed::General;
    let threshold = theorem.threshold();
    Ok(CertificateReport {
        verdict: verdict_for(lhs, &terms, theorem),
        theorem_used: theorem,
        window: *w,
        lhs,
        threshold,
        terms,
        zeros_used: zs.used,
        guard: None,
        warnings,
    })
}

/// `w_s - w_f - w_inf` with `w_s = sum_j f^(gamma_j) - sum_poles n f^(...)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub window: TestWindow,
    /// Enclosure of the residual; the prime-sum remainder and the
    /// ordinate-precision slack are folded into its radius.
    pub residual: Interval,
    pub w_s: Interval,
    pub w_f: Interval,
    pub w_f_tail: f64,
    pub cutoff: u64,
    pub w_inf: WInf,
    pub zeros_used: usize,
}

/// Explicit-formula residual. Near zero when the list holds every zero
/// with non-negligible `f^` mass; a diagnostic, not a certificate.
pub fn explicit_formula_check(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    w: &TestWindow,
    opts: &CertifyOptions,
) -> Result<ResidualReport> {
    check_h(desc, w)?;
    let mut plain = opts.clone();
    plain.shortcut = false;
    let (pole, _) = pole_term(desc, w, opts.mode)?;
    let mut ignored = Vec::new();
    let (wf, cutoff, tail) = if w.a == w.b {
        (Interval::ZERO, 0, 0.0)
    } else {
        let s = prime_sum(desc, w, &plain, &mut ignored)?;
        (s.value, s.cutoff, s.tail_bound)
    };
    let winf = w_inf_eval(desc, w, &opts.arch)?;
    let zs = zero_sum(w, zeros, &plain)?;
    let w_s = zs.value - pole;
    let residual = (w_s - wf - winf.total).inflate(tail + zs.slack);
    Ok(ResidualReport { window: *w, residual, w_s, w_f: wf, w_f_tail: tail, cutoff, w_inf: winf, zeros_used: zs.used })
}
