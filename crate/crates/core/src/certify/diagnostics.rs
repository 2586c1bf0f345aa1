//! Cutoff recommendations and zeta zero-counting diagnostics.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use super::report::GuardReport;
use crate::error::{Error, Result};
use crate::lfunc::ZeroList;

/// Extension rules `C(X)`: how far beyond the window the list should be
/// complete for the certificate to be expected to succeed (under RH).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum CutoffRule {
    /// `(h/pi) log log(e (Q + 1)(|X| + 1))`.
    General { h: f64, q: f64 },
    /// Zeta on `(0, R]`: `(h/pi)(log log R + 0.4)`.
    ZetaR { h: f64 },
    /// Zeta on `[a, b]`: `(h/pi)(log log T + 1.1)`.
    ZetaWindow { h: f64 },
    /// `log log(|X| + A) + log log Q' + log N + 3`.
    Hecke { a_const: f64, q_prime: f64, degree: u32 },
    /// `log log(N X^2) + 3`.
    Elliptic { conductor: u64 },
}

/// The extension `C(X)` for a rule.
pub fn recommend_cutoff(rule: CutoffRule, x: f64) -> Result<f64> {
    let bad = |why: String| Err(Error::domain("recommend_cutoff", why));
    if !x.is_finite() {
        return bad(format!("X = {x} is not finite"));
    }
    match rule {
        CutoffRule::General { h, q } => {
            if !(h > 0.0 && q > 0.0) {
                return bad(format!("need h > 0 and Q > 0, got h = {h}, Q = {q}"));
            }
            Ok(h / PI * (E * (q + 1.0) * (x.abs() + 1.0)).ln().ln())
        }
        CutoffRule::ZetaR { h } | CutoffRule::ZetaWindow { h } => {
            if x < 15.0 {
                return bad(format!("zeta cutoffs need T >= 15, got {x}"));
            }
            let c = if matches!(rule, CutoffRule::ZetaR { .. }) { 0.4 } else { 1.1 };
            Ok(h / PI * (x.ln().ln() + c))
        }
        CutoffRule::Hecke { a_const, q_prime, degree } => {
            if x.abs() + a_const <= E || q_prime <= E || degree == 0 {
                return bad(format!("need |X| + A > e, Q' > e and N >= 1 (X = {x}, A = {a_const}, Q' = {q_prime})"));
            }
            Ok((x.abs() + a_const).ln().ln() + q_prime.ln().ln() + (degree as f64).ln() + 3.0)
        }
        CutoffRule::Elliptic { conductor } => {
            let nx2 = conductor as f64 * x * x;
            if nx2 <= E {
                return bad(format!("need N X^2 > e, got {nx2}"));
            }
            Ok(nx2.ln().ln() + 3.0)
        }
    }
}

/// `g(T) = (T/2pi) log(T/(2 pi e)) + 7/8` and
/// `r1(T) = 0.112 log T + 0.278 log log T + 2.584`, with `|N(T) - g(T)| <= r1(T)`.
pub fn zeta_counting_bounds(t: f64) -> Result<(f64, f64)> {
    if !(t >= E) {
        return Err(Error::domain("zeta_counting_bounds", format!("T = {t} must be at least e")));
    }
    let g = t / (2.0 * PI) * (t / (2.0 * PI * E)).ln() + 7.0 / 8.0;
    let r1 = 0.112 * t.ln() + 0.278 * t.ln().ln() + 2.584;
    Ok((g, r1))
}

/// Bounds on the `f^` mass of zeta zeros outside `[T_a, T_b]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumTails {
    /// Zeros above `T_b`.
    pub upper: f64,
    /// Zeros with negative ordinate.
    pub lower_neg: f64,
    /// Zeros in `(0, T_a)`; zero when `a = 0`.
    pub lower_pos: f64,
}

fn zsum_bracket(h: f64, t: f64) -> f64 {
    (0.143 + 0.033 * h) * t.ln() + 0.354 * t.ln().ln() + 3.3
}

/// Tail bounds for the zeta zero sum; `t_a` is required when `a > 14` and
/// ignored when `a = 0`.
pub fn zeta_zero_sum_tails(a: f64, b: f64, h: f64, t_a: Option<f64>, t_b: f64) -> Result<ZeroSumTails> {
    let hyp = |name: &'static str, detail: String| Err(Error::hypothesis(name, detail));
    if !(a == 0.0 || a > 14.0) {
        return hyp("a = 0 or a > 14", format!("a = {a}"));
    }
    if !(b > a.max(14.0)) {
        return hyp("b > max(a, 14)", format!("a = {a}, b = {b}"));
    }
    if !(h > 1.0 && h <= PI) {
        return hyp("1 < h <= pi", format!("h = {h}"));
    }
    if !(t_b > b) {
        return hyp("T_b > b", format!("b = {b}, T_b = {t_b}"));
    }
    let s = PI / h;
    let upper = (s * (b - t_b)).exp() * zsum_bracket(h, t_b);
    let lower_neg = (-s * a).exp() / 10000.0;
    let lower_pos = if a == 0.0 {
        0.0
    } else {
        let Some(t_a) = t_a else {
            return hyp("14 < T_a < a", "T_a is required when a > 14".into());
        };
        if !(t_a > 14.0 && t_a < a) {
            return hyp("14 < T_a < a", format!("T_a = {t_a}, a = {a}"));
        }
        (s * (t_a - a)).exp() * zsum_bracket(h, a)
    };
    Ok(ZeroSumTails { upper, lower_neg, lower_pos })
}

/// Compares the listed range with `[a - C(a), b + C(b)]`.
pub fn guard_report(zeros: &ZeroList, a: f64, b: f64, c_a: f64, c_b: f64) -> GuardReport {
    let recommended_lo = a - c_a;
    let recommended_hi = b + c_b;
    let listed_lo = zeros.ordinates().first().copied();
    let listed_hi = zeros.ordinates().last().copied();
    // without a listed zero below a, nothing certifies coverage below a
    let deficit_lo = match listed_lo {
        Some(lo) if lo < a => (lo - recommended_lo).max(0.0),
        _ => c_a,
    };
    let deficit_hi = match listed_hi {
        Some(hi) if hi > b => (recommended_hi - hi).max(0.0),
        _ => c_b,
    };
    GuardReport {
        extension_lo: c_a,
        extension_hi: c_b,
        recommended_lo,
        recommended_hi,
        listed_lo,
        listed_hi,
        deficit_lo,
        deficit_hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_bounds_at_100() {
        let (g, r1) = zeta_counting_bounds(100.0).unwrap();
        assert!((g - 29.002_343_587_325_35).abs() < 1e-12);
        assert!((r1 - 3.524_334_996_805_263).abs() < 1e-12);
        assert!(zeta_counting_bounds(2.0).is_err());
    }

    #[test]
    fn cutoff_values() {
        let c = recommend_cutoff(CutoffRule::ZetaWindow { h: 2.5 }, 1e6).unwrap();
        assert!((c - 2.964_891_000_603_366).abs() < 1e-12);
        let c = recommend_cutoff(CutoffRule::ZetaR { h: 2.5 }, 1e6).unwrap();
        assert!((c - 2.407_848_699_781_733).abs() < 1e-12);
        let c = recommend_cutoff(CutoffRule::Elliptic { conductor: 11 }, 20.0).unwrap();
        assert!((c - 5.126_964_214_815_391).abs() < 1e-12);
        assert!(recommend_cutoff(CutoffRule::Elliptic { conductor: 11 }, 0.0).is_err());
    }

    #[test]
    fn zsum_tails() {
        let t = zeta_zero_sum_tails(0.0, 100.0, 2.5, None, 103.0).unwrap();
        let expect = (PI / 2.5 * -3.0).exp() * ((0.143 + 0.0825) * 103f64.ln() + 0.354 * 103f64.ln().ln() + 3.3);
        assert!((t.upper - expect).abs() < 1e-14);
        assert!(t.lower_neg <= 1e-4);
        assert_eq!(t.lower_pos, 0.0);
        let far = zeta_zero_sum_tails(0.0, 100.0, 2.5, None, 1e4).unwrap();
        assert!(far.upper < 1e-100);
        assert!(zeta_zero_sum_tails(10.0, 100.0, 2.5, Some(12.0), 103.0).is_err());
    }

    #[test]
    fn guard_deficits() {
        let z = ZeroList::new(vec![1000.5, 1010.0, 1019.5], 1e-9, "").unwrap();
        let g = guard_report(&z, 1000.0, 1020.0, 3.0, 3.0);
        assert_eq!(g.deficit_lo, 3.0);
        assert_eq!(g.deficit_hi, 3.0);
        let z = ZeroList::new(vec![998.0, 1010.0, 1022.0], 1e-9, "").unwrap();
        let g = guard_report(&z, 1000.0, 1020.0, 3.0, 3.0);
        assert_eq!(g.deficit_lo, 1.0);
        assert_eq!(g.deficit_hi, 1.0);
    }
}
