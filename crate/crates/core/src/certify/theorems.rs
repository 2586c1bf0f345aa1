//! Family-specialized inequalities. Each absorbs the prime-sum remainder
//! and the oscillatory integrals into explicit constants, so `w_f_tail` is
//! zero in these reports and the remainder shows up as `w_inf_remainder`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diagnostics::{guard_report, recommend_cutoff, CutoffRule};
use super::report::verdict_for;
use super::{certify_general, check_zero_list, zero_sum, CertificateReport, CertifyOptions, Terms, TheoremUsed};
use crate::arch::w_inf_main;
use crate::error::{Error, Result};
use crate::lfunc::{zeta_descriptor, Family, HeckeBlock, LFunctionDescriptor, ZeroList};
use crate::numerics::Interval;
use crate::primesum::{w_f_eval, MAX_CUTOFF};
use crate::testfn::{fhat_eval, TestWindow};

const TAIL_NOTE: &str = "prime-sum remainder absorbed into the threshold";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremChoice {
    /// Family inequality when its hypotheses hold, otherwise the general one.
    Auto,
    General,
    ZetaR,
    ZetaAb,
    Hecke,
    Elliptic,
}

/// Prime-power cutoff `floor((30/alpha)^{1/alpha})`, `alpha = (h-1)/2`, of
/// the zeta inequalities.
pub fn zeta_theorem_cutoff(h: f64) -> Result<u64> {
    if !(h > 1.0 && h <= PI) {
        return Err(Error::hypothesis("1 < h <= pi", format!("h = {h}")));
    }
    let alpha = (Interval::point(h) - Interval::ONE) / Interval::point(2.0);
    let x = ((Interval::point(30.0) / alpha).ln() / alpha).exp();
    if !(x.hi() <= MAX_CUTOFF as f64) {
        return Err(Error::Budget(format!("prime-power cutoff {:.3e} at h = {h} is out of reach", x.hi())));
    }
    Ok(x.hi().floor() as u64)
}

/// `c/|t|`, or 0 at `t = 0`, as an upper bound.
fn penalty(c: Interval, t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        (c / Interval::point(t.abs())).hi()
    }
}

/// `E(t) = 5.57/|t|`, `E(0) = 0`.
pub fn elliptic_penalty(t: f64) -> f64 {
    penalty(Interval::ratio(557.0, 100.0), t)
}

/// `E(a, b) = 1.65 sum_real [E0(a + phi) + E0(b + phi)] + 5.57 sum_complex [...]`
/// with `E0(t) = 1/|t|` and `E0(0) = 0`.
pub fn hecke_penalty(block: &HeckeBlock, a: f64, b: f64) -> f64 {
    let real = Interval::ratio(165.0, 100.0);
    let complex = Interval::ratio(557.0, 100.0);
    let real_terms = block.real_places.iter().flat_map(|&(phi, _)| [penalty(real, a + phi), penalty(real, b + phi)]);
    let complex_terms =
        block.complex_places.iter().flat_map(|&(phi, _)| [penalty(complex, a + phi), penalty(complex, b + phi)]);
    // outward addition would turn an exact 0 into a subnormal
    real_terms.chain(complex_terms).filter(|&t| t != 0.0).map(Interval::point).sum::<Interval>().hi()
}

fn guard_extension(rule: CutoffRule, x: f64, warnings: &mut Vec<String>) -> f64 {
    match recommend_cutoff(rule, x) {
        Ok(c) => c,
        Err(_) => {
            warnings.push(format!("no cutoff recommendation at X = {x}"));
            0.0
        }
    }
}

struct Assembled<'a> {
    theorem: TheoremUsed,
    window: TestWindow,
    desc: &'a LFunctionDescriptor,
    zeros: &'a ZeroList,
    cutoff: u64,
    remainder: f64,
    pole: Interval,
    /// Recommended extensions `C(a)`, `C(b)`.
    guard: (f64, f64),
}

fn assemble(x: Assembled<'_>, opts: &CertifyOptions, mut warnings: Vec<String>) -> Result<CertificateReport> {
    let w = &x.window;
    let wf = w_f_eval(x.desc, w, x.cutoff, opts.mode, opts.parallelism)?;
    let main = w_inf_main(x.desc, w.a, w.b, opts.mode)?;
    let zs = zero_sum(w, x.zeros, opts)?;
    let lhs = wf.value + main + Interval::point(x.remainder) - zs.value + x.pole;
    warnings.push(TAIL_NOTE.into());
    let guard = guard_report(x.zeros, w.a, w.b, x.guard.0, x.guard.1);
    let terms = Terms {
        w_f: wf.value,
        w_f_tail: 0.0,
        cutoff: wf.cutoff,
        w_inf: main,
        w_inf_remainder: x.remainder,
        zero_sum: zs.value,
        pole_term: x.pole,
        precision_slack: zs.slack,
    };
    Ok(CertificateReport {
        verdict: verdict_for(lhs, &terms, x.theorem),
        theorem_used: x.theorem,
        window: *w,
        lhs,
        threshold: x.theorem.threshold(),
        terms,
        zeros_used: zs.used,
        guard: Some(guard),
        warnings,
    })
}

fn check_zeta_h(h: f64) -> Result<()> {
    if h > 1.0 && h <= PI {
        Ok(())
    } else {
        Err(Error::hypothesis("1 < h <= pi", format!("h = {h}")))
    }
}

/// Completeness of a list of zeta zeros with ordinates in `(0, R]`:
/// `w_f + (1/pi) Im lgamma(1/4 + iR/2) - (R/2pi) log pi + 1.6/R - sum f^(t_n) <= -0.56`
/// with `f = f_{0,R,h}`.
pub fn certify_zeta_r(zeros: &ZeroList, r: f64, h: f64, opts: &CertifyOptions) -> Result<CertificateReport> {
    if !(r >= 15.0) {
        return Err(Error::hypothesis("R >= 15", format!("R = {r}")));
    }
    check_zeta_h(h)?;
    if let Some(&g) = zeros.ordinates().iter().find(|&&g| !(g > 0.0)) {
        return Err(Error::hypothesis("ordinates > 0", format!("listed ordinate {g}")));
    }
    let window = TestWindow::new(0.0, r, h)?;
    let warnings = check_zero_list(&window, zeros, opts)?;
    let desc = zeta_descriptor();
    let remainder = (Interval::ratio(16.0, 10.0) / Interval::point(r)).hi();
    let mut warnings = warnings;
    let c_b = guard_extension(CutoffRule::ZetaR { h }, r, &mut warnings);
    if r < 1e6 {
        warnings.push("guard extension is advisory below R = 1e6".into());
    }
    assemble(
        Assembled {
            theorem: TheoremUsed::ZetaR,
            window,
            desc: &desc,
            zeros,
            cutoff: zeta_theorem_cutoff(h)?,
            remainder,
            pole: Interval::ZERO,
            guard: (0.0, c_b),
        },
        opts,
        warnings,
    )
}

/// Completeness of a list of zeta zeros on `[a, b]`:
/// `w_f + (1/pi) Im[lgamma(1/4 + ib/2) - lgamma(1/4 + ia/2)] - ((b-a)/2pi) log pi + 3.2/a - sum f^(gamma) <= 0.44`.
pub fn certify_zeta_window(
    zeros: &ZeroList,
    a: f64,
    b: f64,
    h: f64,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    check_zeta_h(h)?;
    if !(a > 15.0 && a < b - 5.0 * h / PI) {
        return Err(Error::hypothesis("15 < a < b - 5h/pi", format!("a = {a}, b = {b}, h = {h}")));
    }
    let window = TestWindow::new(a, b, h)?;
    let mut warnings = check_zero_list(&window, zeros, opts)?;
    let desc = zeta_descriptor();
    let remainder = (Interval::ratio(32.0, 10.0) / Interval::point(a)).hi();
    let rule = CutoffRule::ZetaWindow { h };
    let c_a = guard_extension(rule, a, &mut warnings);
    let c_b = guard_extension(rule, b, &mut warnings);
    assemble(
        Assembled {
            theorem: TheoremUsed::ZetaAB,
            window,
            desc: &desc,
            zeros,
            cutoff: zeta_theorem_cutoff(h)?,
            remainder,
            pole: Interval::ZERO,
            guard: (c_a, c_b),
        },
        opts,
        warnings,
    )
}

fn check_edges(name: &'static str, edges: &[(f64, f64)], bound: f64) -> Result<()> {
    for &(z, shift) in edges {
        let t = z + shift;
        if !(t == 0.0 || t.abs() > bound) {
            return Err(Error::hypothesis(name, format!("{t} at endpoint {z} is neither 0 nor beyond {bound}")));
        }
    }
    Ok(())
}

/// Hecke L-series at `h = pi` with prime-ideal norms up to `20N`:
/// `w_f + main + E(a, b) + 2 eps0 Re f^(i/2) - sum f^(gamma) <= 0.44`.
pub fn certify_hecke(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    a: f64,
    b: f64,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    if !matches!(desc.family(), Family::Hecke | Family::HeckeGaussian) {
        return Err(Error::hypothesis("Hecke family", format!("descriptor family is {:?}", desc.family())));
    }
    let block = desc
        .hecke()
        .ok_or_else(|| Error::hypothesis("Hecke family", "descriptor has no hecke block"))?;
    if !(b - a > 5.0) {
        return Err(Error::hypothesis("b - a > 5", format!("a = {a}, b = {b}")));
    }
    let n = block.degree as f64;
    let phis: Vec<f64> = block.real_places.iter().chain(&block.complex_places).map(|&(phi, _)| phi).collect();
    let edges: Vec<(f64, f64)> = [a, b].iter().flat_map(|&z| phis.iter().map(move |&p| (z, p))).collect();
    check_edges("z + phi_j = 0 or |z + phi_j| > 20N", &edges, 20.0 * n)?;
    let window = TestWindow::new(a, b, PI)?;
    let mut warnings = check_zero_list(&window, zeros, opts)?;
    let pole = if block.principal {
        fhat_eval(&window, Complex64::new(0.0, 0.5), opts.mode)?.re * Interval::point(2.0)
    } else {
        Interval::ZERO
    };
    let a_const = block
        .real_places
        .iter()
        .chain(&block.complex_places)
        .map(|&(phi, k)| phi.abs() + k.unsigned_abs() as f64 / 2.0)
        .fold(0.0, f64::max);
    let rule = CutoffRule::Hecke { a_const, q_prime: desc.q() + std::f64::consts::E, degree: block.degree };
    let c_a = guard_extension(rule, a, &mut warnings);
    let c_b = guard_extension(rule, b, &mut warnings);
    assemble(
        Assembled {
            theorem: TheoremUsed::Hecke,
            window,
            desc,
            zeros,
            cutoff: 20 * block.degree as u64,
            remainder: hecke_penalty(block, a, b),
            pole,
            guard: (c_a, c_b),
        },
        opts,
        warnings,
    )
}

/// Elliptic curve L-function at `h = pi` with `p^m < 30`:
/// `w_f + ((b-a)/2pi) log(N/4pi^2) + (1/pi) Im[lgamma(1+ib) - lgamma(1+ia)] + E(a) + E(b) - sum f^(gamma) <= 0.42`.
pub fn certify_elliptic(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    a: f64,
    b: f64,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    let Some(block) = desc.elliptic().filter(|_| desc.family() == Family::Elliptic) else {
        return Err(Error::hypothesis("elliptic family", format!("descriptor family is {:?}", desc.family())));
    };
    if !(b - a > 5.0) {
        return Err(Error::hypothesis("b - a > 5", format!("a = {a}, b = {b}")));
    }
    check_edges("|z| > 15 or z = 0", &[(a, 0.0), (b, 0.0)], 15.0)?;
    let window = TestWindow::new(a, b, PI)?;
    let mut warnings = check_zero_list(&window, zeros, opts)?;
    let rule = CutoffRule::Elliptic { conductor: block.conductor };
    let c_a = guard_extension(rule, a, &mut warnings);
    let c_b = guard_extension(rule, b, &mut warnings);
    let remainder = [elliptic_penalty(a), elliptic_penalty(b)]
        .into_iter()
        .filter(|&t| t != 0.0)
        .map(Interval::point)
        .sum::<Interval>()
        .hi();
    assemble(
        Assembled {
            theorem: TheoremUsed::Elliptic,
            window,
            desc,
            zeros,
            cutoff: 29,
            remainder,
            pole: Interval::ZERO,
            guard: (c_a, c_b),
        },
        opts,
        warnings,
    )
}

/// A reasonable `h` when the caller gives none.
/// Window parameter used when none is given.
pub fn default_h(desc: &LFunctionDescriptor) -> f64 {
    match desc.family() {
        Family::Zeta => 2.5,
        Family::Hecke | Family::HeckeGaussian | Family::Elliptic => PI,
        Family::Generic => {
            let need = 2.0 * desc.sigma1() - desc.sigma0();
            if PI > need {
                PI
            } else {
                need + 1.0
            }
        }
    }
}

fn require_zeta(desc: &LFunctionDescriptor) -> Result<()> {
    if desc.family() == Family::Zeta {
        Ok(())
    } else {
        Err(Error::hypothesis("zeta family", format!("descriptor family is {:?}", desc.family())))
    }
}

fn require_pi(h: Option<f64>) -> Result<()> {
    match h {
        Some(h) if h != PI => Err(Error::hypothesis("h = pi", format!("h = {h}"))),
        _ => Ok(()),
    }
}

fn family_attempt(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    a: f64,
    b: f64,
    h: Option<f64>,
    opts: &CertifyOptions,
) -> Option<Result<CertificateReport>> {
    match desc.family() {
        Family::Zeta if a == 0.0 => Some(certify_zeta_r(zeros, b, h.unwrap_or(2.5), opts)),
        Family::Zeta => Some(certify_zeta_window(zeros, a, b, h.unwrap_or(2.5), opts)),
        Family::Hecke | Family::HeckeGaussian if desc.hecke().is_some() => {
            Some(require_pi(h).and_then(|_| certify_hecke(desc, zeros, a, b, opts)))
        }
        Family::Elliptic => Some(require_pi(h).and_then(|_| certify_elliptic(desc, zeros, a, b, opts))),
        _ => None,
    }
}

/// Runs the chosen inequality on `[a, b]` (for `ZetaR`, `a` must be 0 and
/// `b` is `R`). `Auto` tries the family inequality first and falls back to
/// the general one when a hypothesis fails.
pub fn certify_auto(
    desc: &LFunctionDescriptor,
    zeros: &ZeroList,
    choice: TheoremChoice,
    a: f64,
    b: f64,
    h: Option<f64>,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    let general = |note: Option<String>| -> Result<CertificateReport> {
        let w = TestWindow::new(a, b, h.unwrap_or_else(|| default_h(desc)))?;
        let mut report = certify_general(desc, zeros, &w, opts)?;
        if let Some(note) = note {
            report.warnings.insert(0, note);
        }
        Ok(report)
    };
    match choice {
        TheoremChoice::General => general(None),
        TheoremChoice::ZetaR => {
            require_zeta(desc)?;
            if a != 0.0 {
                return Err(Error::hypothesis("window (0, R]", format!("a = {a}")));
            }
            certify_zeta_r(zeros, b, h.unwrap_or(2.5), opts)
        }
        TheoremChoice::ZetaAb => {
            require_zeta(desc)?;
            certify_zeta_window(zeros, a, b, h.unwrap_or(2.5), opts)
        }
        TheoremChoice::Hecke => {
            require_pi(h)?;
            certify_hecke(desc, zeros, a, b, opts)
        }
        TheoremChoice::Elliptic => {
            require_pi(h)?;
            certify_elliptic(desc, zeros, a, b, opts)
        }
        TheoremChoice::Auto => match family_attempt(desc, zeros, a, b, h, opts) {
            None => general(None),
            Some(Err(Error::Hypothesis { name, detail })) => {
                general(Some(format!("family inequality not applicable ({name}: {detail}); used the general one")))
            }
            Some(other) => other,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_cutoff_at_two_and_a_half() {
        let m = zeta_theorem_cutoff(2.5).unwrap();
        assert_eq!(m, 136);
        assert!(m <= 140);
        assert_eq!(zeta_theorem_cutoff(PI).unwrap(), 22);
        assert!(zeta_theorem_cutoff(1.0).is_err());
        assert!(zeta_theorem_cutoff(3.2).is_err());
    }

    #[test]
    fn elliptic_penalty_values() {
        assert_eq!(elliptic_penalty(0.0), 0.0);
        assert!((elliptic_penalty(20.0) - 0.2785).abs() < 1e-15);
        assert!(elliptic_penalty(20.0) >= 0.2785);
        assert_eq!(elliptic_penalty(-20.0), elliptic_penalty(20.0));
    }

    #[test]
    fn hecke_penalty_zero_at_origin() {
        let block = HeckeBlock { degree: 2, real_places: vec![], complex_places: vec![(0.0, 0)], principal: true };
        assert_eq!(hecke_penalty(&block, 0.0, 0.0), 0.0);
        let v = hecke_penalty(&block, 0.0, 50.0);
        assert!((v - 5.57 / 50.0).abs() < 1e-15);
        let real = HeckeBlock { degree: 1, real_places: vec![(2.0, 0)], complex_places: vec![], principal: false };
        assert!((hecke_penalty(&real, -2.0, 18.0) - 1.65 / 20.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_hypotheses_named() {
        let z = ZeroList::new(vec![14.134725141734693], 1e-12, "").unwrap();
        let opts = CertifyOptions::default();
        let e = certify_zeta_r(&z, 10.0, 2.5, &opts).unwrap_err();
        assert!(matches!(e, Error::Hypothesis { name: "R >= 15", .. }));
        let e = certify_zeta_window(&z, 15.0, 40.0, 2.5, &opts).unwrap_err();
        assert!(matches!(e, Error::Hypothesis { .. }));
        let neg = ZeroList::new(vec![-14.134725141734693, 14.134725141734693], 1e-12, "").unwrap();
        assert!(certify_zeta_r(&neg, 20.0, 2.5, &opts).is_err());
    }
}
