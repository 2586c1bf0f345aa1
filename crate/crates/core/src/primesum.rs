//! The finite-prime term
//!
//! ```text
//! w_f(f) = -2 sum_{p^m} m log p p^{-m sigma0/2} Re(c(p^m) f(m log p))
//! ```
//!
//! truncated at `p^m <= M` with the remainder bound
//! `(8C/pi) M^{sigma1 - (h + sigma0)/2} / (sigma0 + h - 2 sigma1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfunc::LFunctionDescriptor;
use crate::numerics::{ComplexInterval, EvalMode, Interval};
use crate::par::{try_map_collect, Parallelism};
use crate::testfn::{f_enclosure, f_eval, TestWindow};

/// Default remainder budget for the cutoff choice.
pub const DEFAULT_BUDGET: f64 = 0.05;

/// Cutoffs above this are refused; sensible `h` keeps `M` tiny.
pub const MAX_CUTOFF: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub m: u32,
    pub pm: u64,
}

/// All prime powers `p^m <= limit`, sorted by `p^m`.
#[derive(Clone, Debug)]
pub struct PrimePowerSieve {
    limit: u64,
    entries: Vec<PrimePower>,
}

impl PrimePowerSieve {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut entries = Vec::new();
        for p in 2..=n {
            if composite[p] {
                continue;
            }
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
            let mut pm = p as u64;
            let mut m = 1;
            loop {
                entries.push(PrimePower { p: p as u64, m, pm });
                match pm.checked_mul(p as u64) {
                    Some(next) if next <= limit => {
                        pm = next;
                        m += 1;
                    }
                    _ => break,
                }
            }
        }
        entries.sort_unstable_by_key(|e| e.pm);
        PrimePowerSieve { limit, entries }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[PrimePower] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_h(desc: &LFunctionDescriptor, h: f64) -> Result<()> {
    let need = 2.0 * desc.sigma1() - desc.sigma0();
    if h > need {
        Ok(())
    } else {
        Err(Error::hypothesis("h > 2 sigma1 - sigma0", format!("h = {h}, 2 sigma1 - sigma0 = {need}")))
    }
}

/// Upper bound on the truncation error of the prime sum at cutoff `m_cut`.
pub fn tail_bound(desc: &LFunctionDescriptor, h: f64, m_cut: u64) -> Result<f64> {
    check_h(desc, h)?;
    if m_cut == 0 {
        return Err(Error::domain("tail_bound", "cutoff must be positive"));
    }
    let s0 = Interval::point(desc.sigma0());
    let s1 = Interval::point(desc.sigma1());
    let hh = Interval::point(h);
    let two = Interval::point(2.0);
    let expo = s1 - (hh + s0) / two;
    let denom = s0 + hh - two * s1;
    let pow = (expo * Interval::point(m_cut as f64).ln()).exp();
    let v = Interval::point(8.0 * desc.coeff_bound_c()) / Interval::pi() * pow / denom;
    Ok(v.hi())
}

/// Smallest `M` whose remainder bound is at most `budget`.
pub fn choose_cutoff(desc: &LFunctionDescriptor, h: f64, budget: f64) -> Result<u64> {
    check_h(desc, h)?;
    if !(budget > 0.0 && budget.is_finite()) {
        return Err(Error::domain("choose_cutoff", format!("budget {budget} must be positive")));
    }
    let expo = 0.5 * (h + desc.sigma0()) - desc.sigma1();
    let k = 8.0 * desc.coeff_bound_c() / (std::f64::consts::PI * (desc.sigma0() + h - 2.0 * desc.sigma1()));
    let guess = (k / budget).powf(1.0 / expo).ceil().max(1.0);
    if !(guess <= MAX_CUTOFF as f64) {
        return Err(Error::Budget(format!("cutoff {guess:e} for budget {budget} exceeds {MAX_CUTOFF}")));
    }
    let mut m = guess as u64;
    while m > 1 && tail_bound(desc, h, m - 1)? <= budget {
        m -= 1;
    }
    while tail_bound(desc, h, m)? > budget {
        m += 1;
        if m > MAX_CUTOFF {
            return Err(Error::Budget(format!("no cutoff below {MAX_CUTOFF} meets budget {budget}")));
        }
    }
    Ok(m)
}

/// One summand of the prime sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeTerm {
    pub p: u64,
    pub m: u32,
    pub pm: u64,
    pub c: Complex64,
    pub term: f64,
}

/// Truncated prime sum with its remainder bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeSum {
    pub value: Interval,
    pub tail_bound: f64,
    pub cutoff: u64,
    pub terms: usize,
}

fn term_fast(desc: &LFunctionDescriptor, w: &TestWindow, e: &PrimePower, c: Complex64) -> f64 {
    let lp = (e.p as f64).ln();
    let t = e.m as f64 * lp;
    let weight = t * (-0.5 * desc.sigma0() * t).exp();
    -2.0 * weight * (c * f_eval(w, t)).re
}

fn term_enclosure(desc: &LFunctionDescriptor, w: &TestWindow, e: &PrimePower, c: Complex64) -> Interval {
    let t = Interval::point(e.m as f64) * Interval::point(e.p as f64).ln();
    let weight = t * (-(Interval::point(0.5 * desc.sigma0()) * t)).exp();
    // provider values are rounded once (c = t_m/m)
    let c = ComplexInterval::new(Interval::around(c.re, 1), Interval::around(c.im, 1));
    let prod = c * f_enclosure(w, t);
    Interval::point(-2.0) * weight * prod.re
}

/// Neumaier-compensated sum with a bound on its rounding error.
fn compensated(values: &[f64]) -> Interval {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs = 0.0f64;
    for &v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
        abs += v.abs();
    }
    let total = sum + comp;
    // each term carries a few ulps from libm; the sum itself is compensated
    let err = 16.0 * f64::EPSILON * abs + f64::MIN_POSITIVE;
    Interval::ball(total, err)
}

/// The individual summands for `p^m <= m_cut`, ascending in `p^m`.
pub fn w_f_terms(
    desc: &LFunctionDescriptor,
    w: &TestWindow,
    m_cut: u64,
    par: Parallelism,
) -> Result<Vec<PrimeTerm>> {
    let sieve = PrimePowerSieve::new(m_cut);
    try_map_collect(sieve.entries(), par, |e| {
        let c = desc.coefficient(e.p, e.m)?;
        Ok(PrimeTerm { p: e.p, m: e.m, pm: e.pm, c, term: term_fast(desc, w, e, c) })
    })
}

/// `w_f` truncated at `p^m <= m_cut`, with the remainder bound.
pub fn w_f_eval(
    desc: &LFunctionDescriptor,
    w: &TestWindow,
    m_cut: u64,
    mode: EvalMode,
    par: Parallelism,
) -> Result<PrimeSum> {
    if m_cut < 2 {
        return Err(Error::domain("w_f_eval", format!("cutoff {m_cut} must be at least 2")));
    }
    let tail = tail_bound(desc, w.h, m_cut)?;
    let sieve = PrimePowerSieve::new(m_cut);
    let value = match mode {
        EvalMode::Fast => {
            let terms = try_map_collect(sieve.entries(), par, |e| {
                Ok(term_fast(desc, w, e, desc.coefficient(e.p, e.m)?))
            })?;
            compensated(&terms)
        }
        EvalMode::Enclosure => {
            let terms = try_map_collect(sieve.entries(), par, |e| {
                Ok(term_enclosure(desc, w, e, desc.coefficient(e.p, e.m)?))
            })?;
            terms.into_iter().sum()
        }
    };
    Ok(PrimeSum { value, tail_bound: tail, cutoff: m_cut, terms: sieve.len() })
}

/// The cutoff actually usable: the budget-driven choice, capped by the
/// provider's data limit. The flag reports whether capping happened.
pub fn usable_cutoff(desc: &LFunctionDescriptor, h: f64, budget: f64) -> Result<(u64, bool)> {
    let m = choose_cutoff(desc, h, budget)?;
    match desc.provider().limit() {
        Some(limit) if limit < m => Ok((limit.max(2), true)),
        _ => Ok((m, false)),
    }
}
