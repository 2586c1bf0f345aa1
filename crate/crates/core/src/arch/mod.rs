//! The archimedean term
//!
//! ```text
//! w_inf(f) = ((b-a)/pi) log Q
//!          + (1/pi) sum_k Im[ lgamma(lambda_k (sigma0/2 + ib) + mu_k) - lgamma(lambda_k (sigma0/2 + ia) + mu_k) ]
//!          - (1/pi) sum_k [ I_k(lambda_k b + v_k) - I_k(lambda_k a + v_k) ]
//! ```
//!
//! with `I_k` the oscillatory integrals of [`osc`], enclosed either by the
//! contour bound or by quadrature.

mod osc;
mod quad;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use osc::{default_contour_height, max_contour_height, osc_bound, osc_constant, OscIntegralBound};
pub use quad::{head_bound, osc_integrand, osc_quadrature, tail_bound as quadrature_tail_bound, QuadratureReport};

use crate::error::{Error, Result};
use crate::lfunc::LFunctionDescriptor;
use crate::numerics::{log_gamma_branch, log_gamma_enclosure, ComplexInterval, EvalMode, Interval};
use crate::testfn::TestWindow;

/// Default radius allowed for each oscillatory term.
pub const DEFAULT_OSC_BUDGET: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchOptions {
    pub mode: EvalMode,
    /// Radius allowed per oscillatory term before falling back to quadrature.
    pub osc_budget: f64,
    /// Contour height per gamma factor; `None` uses the family defaults.
    pub contour_heights: Option<Vec<f64>>,
}

impl Default for ArchOptions {
    fn default() -> Self {
        ArchOptions { mode: EvalMode::Enclosure, osc_budget: DEFAULT_OSC_BUDGET, contour_heights: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OscMethod {
    /// `lambda z + v = 0`, the integral vanishes identically.
    Exempt,
    ContourBound,
    Quadrature,
}

/// One oscillatory integral `I_k(R)` at an endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscTerm {
    pub factor: usize,
    pub endpoint: f64,
    pub r: f64,
    pub method: OscMethod,
    pub value: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WInf {
    pub total: Interval,
    /// Conductor and log-gamma part.
    pub main: Interval,
    /// `-(1/pi) sum_k [I_k(R_b) - I_k(R_a)]`.
    pub oscillatory: Interval,
    pub terms: Vec<OscTerm>,
}

/// Encloses `I_k(R)`, preferring the contour bound and falling back to
/// quadrature when the bound is wider than the budget.
pub fn osc_term(
    lambda: f64,
    mu: Complex64,
    sigma0: f64,
    h: f64,
    r: f64,
    b_k: f64,
    budget: f64,
) -> Result<(OscMethod, Interval)> {
    if r == 0.0 {
        return Ok((OscMethod::Exempt, Interval::ZERO));
    }
    let bound = osc_bound(lambda, mu.re, sigma0, h, r, b_k)?;
    if bound.bound <= budget {
        return Ok((OscMethod::ContourBound, Interval::ball(0.0, bound.bound)));
    }
    match osc_quadrature(lambda, mu.re, sigma0, h, r, budget) {
        Ok(q) => Ok((OscMethod::Quadrature, q.value)),
        Err(e) => Err(Error::Budget(format!(
            "oscillatory integral at R = {r}: contour bound {:.3e} exceeds budget {budget:.1e} and quadrature failed ({e})",
            bound.bound
        ))),
    }
}

fn gamma_arg(lambda: f64, mu: Complex64, sigma0: f64, z: f64) -> ComplexInterval {
    let l = Interval::point(lambda);
    let re = l * Interval::point(sigma0) / Interval::point(2.0) + Interval::point(mu.re);
    let im = l * Interval::point(z) + Interval::point(mu.im);
    ComplexInterval::new(re, im)
}

fn im_log_gamma(arg: ComplexInterval, mode: EvalMode) -> Result<Interval> {
    match mode {
        EvalMode::Enclosure => Ok(log_gamma_enclosure(arg)?.im),
        EvalMode::Fast => Ok(log_gamma_branch(arg.mid(), EvalMode::Fast)?.im),
    }
}

/// `log Q` enclosed, treating `Q` as accurate to a few ulps.
pub fn log_q(desc: &LFunctionDescriptor) -> Interval {
    Interval::around(desc.q(), 4).ln()
}

/// The conductor and log-gamma part of `w_inf`:
/// `((b-a)/pi) log Q + (1/pi) sum_k Im[lgamma(lambda_k (sigma0/2 + ib) + mu_k) - lgamma(lambda_k (sigma0/2 + ia) + mu_k)]`.
pub fn w_inf_main(desc: &LFunctionDescriptor, a: f64, b: f64, mode: EvalMode) -> Result<Interval> {
    let inv_pi = Interval::pi().recip();
    let width = Interval::point(b) - Interval::point(a);
    let mut main = width * log_q(desc) * inv_pi;
    if a != b {
        for g in desc.gamma_factors() {
            let hi = im_log_gamma(gamma_arg(g.lambda, g.mu, desc.sigma0(), b), mode)?;
            let lo = im_log_gamma(gamma_arg(g.lambda, g.mu, desc.sigma0(), a), mode)?;
            main += (hi - lo) * inv_pi;
        }
    }
    Ok(main)
}

/// Encloses `w_inf(f_{a,b,h})`.
pub fn w_inf_eval(desc: &LFunctionDescriptor, w: &TestWindow, opts: &ArchOptions) -> Result<WInf> {
    let need = desc.sigma1() - 0.5 * desc.sigma0();
    if !(w.h > need) {
        return Err(Error::hypothesis("h > sigma1 - sigma0/2", format!("h = {}, sigma1 - sigma0/2 = {need}", w.h)));
    }
    let factors = desc.gamma_factors();
    if let Some(bs) = &opts.contour_heights {
        if bs.len() != factors.len() {
            return Err(Error::Descriptor(format!(
                "{} contour heights given for {} gamma factors",
                bs.len(),
                factors.len()
            )));
        }
    }
    let inv_pi = Interval::pi().recip();
    let main = w_inf_main(desc, w.a, w.b, opts.mode)?;
    let mut osc_sum = Interval::ZERO;
    let mut terms = Vec::new();
    for (k, g) in factors.iter().enumerate() {
        let b_k = match &opts.contour_heights {
            Some(bs) => bs[k],
            None => default_contour_height(desc.family(), g.lambda, w.h),
        };
        for (sign, z) in [(1.0, w.b), (-1.0, w.a)] {
            let r = g.lambda * z + g.mu.im;
            let (method, value) = osc_term(g.lambda, g.mu, desc.sigma0(), w.h, r, b_k, opts.osc_budget)?;
            terms.push(OscTerm { factor: k, endpoint: z, r, method, value });
            osc_sum += value * sign;
        }
    }
    if w.a == w.b {
        // the two endpoint integrals coincide exactly
        osc_sum = Interval::ZERO;
    }
    let oscillatory = -(osc_sum * inv_pi);
    Ok(WInf { total: main + oscillatory, main, oscillatory, terms })
}
