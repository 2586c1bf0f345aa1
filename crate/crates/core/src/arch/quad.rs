//! Quadrature for the oscillatory integrals `I(R)`.
//!
//! The integral is split as `[0, eta) + [eta, T] + (T, inf)`. Head and tail
//! are bounded analytically; the middle uses adaptive Gauss-Legendre on
//! panels no wider than half an oscillation, with the 20-point vs 10-point
//! difference, inflated tenfold, taken as the panel error.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Interval;

const ERROR_INFLATION: f64 = 10.0;
const MAX_DEPTH: u32 = 24;
const ETA_MAX: f64 = 1e-3;
const TAIL_DECAYS: f64 = 60.0;

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(10), gauss_legendre(20)))
}

fn apply(rule: &Rule, f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    r * rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * f(c + r * x)).sum::<f64>()
}

/// Result of an adaptive integration: value, summed error estimate, and
/// the sum of absolute panel values (for a rounding term).
#[derive(Clone, Copy, Debug, Default)]
struct Adaptive {
    value: f64,
    err: f64,
    abs: f64,
    panels: usize,
}

fn adapt(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32, acc: &mut Adaptive) {
    let (g10, g20) = rules();
    let coarse = apply(g10, f, lo, hi);
    let fine = apply(g20, f, lo, hi);
    let est = (fine - coarse).abs();
    if est <= tol || depth >= MAX_DEPTH {
        acc.value += fine;
        acc.err += est;
        acc.abs += fine.abs();
        acc.panels += 1;
        return;
    }
    let mid = 0.5 * (lo + hi);
    adapt(f, lo, mid, 0.5 * tol, depth + 1, acc);
    adapt(f, mid, hi, 0.5 * tol, depth + 1, acc);
}

/// Breakdown of a quadrature enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub value: Interval,
    pub eta: f64,
    pub t_max: f64,
    pub head_bound: f64,
    pub tail_bound: f64,
    pub panel_error: f64,
    pub panels: usize,
}

/// `1 - 1/cosh(x)` without cancellation near 0.
fn one_minus_sech(x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        let s = (0.5 * x).sinh();
        2.0 * s * s / x.cosh()
    } else {
        1.0 - 1.0 / x.cosh()
    }
}

/// The integrand of `I(R)`.
pub fn osc_integrand(lambda: f64, a: f64, h: f64, r: f64, t: f64) -> f64 {
    let decay = (-a * t).exp() / -(-t).exp_m1();
    -decay * (r * t).sin() / t * one_minus_sech(0.5 * lambda * h * t)
}

/// `int_0^eta |integrand| <= |R| (lambda h)^2 (eta^2/2 + eta^3/3) / 8`, from
/// `|sin(Rt)/t| <= |R|`, `1 - sech x <= x^2/2` and `t/(1 - e^{-t}) <= 1 + t`.
pub fn head_bound(lambda: f64, h: f64, r: f64, eta: f64) -> f64 {
    let lh = Interval::point(lambda) * Interval::point(h);
    let e = Interval::point(eta);
    let poly = e.sqr() / Interval::point(2.0) + e.powi(3) / Interval::point(3.0);
    (Interval::point(r.abs()) * lh.sqr() * poly / Interval::point(8.0)).hi()
}

/// `int_T^inf |integrand| <= e^{-AT} / (A T (1 - e^{-T}))`.
pub fn tail_bound(a: f64, t: f64) -> f64 {
    let ai = Interval::point(a);
    let ti = Interval::point(t);
    let denom = ai * ti * (Interval::ONE - (-ti).exp());
    ((-(ai * ti)).exp() / denom).hi()
}

/// Encloses `I(R)` for the factor `Gamma(lambda s + mu)` with total radius
/// at most `budget`.
pub fn osc_quadrature(lambda: f64, u: f64, sigma0: f64, h: f64, r: f64, budget: f64) -> Result<QuadratureReport> {
    if !(budget > 0.0 && budget.is_finite()) {
        return Err(Error::domain("osc_quadrature", format!("budget {budget} must be positive")));
    }
    let a = lambda * sigma0 / 2.0 + u;
    if !(a > 0.0) {
        return Err(Error::domain("osc_quadrature", format!("lambda sigma0/2 + u = {a} must be positive")));
    }
    if r == 0.0 {
        return Ok(QuadratureReport {
            value: Interval::ZERO,
            eta: 0.0,
            t_max: 0.0,
            head_bound: 0.0,
            tail_bound: 0.0,
            panel_error: 0.0,
            panels: 0,
        });
    }
    let quarter = 0.25 * budget;
    let mut eta = ETA_MAX;
    while head_bound(lambda, h, r, eta) > quarter {
        eta *= 0.5;
        if eta < 1e-12 {
            return Err(Error::Budget(format!("head of I({r}) cannot be bounded by {quarter}")));
        }
    }
    let t_cap = TAIL_DECAYS / a;
    let mut t_max = 1.0f64.max(2.0 * eta);
    while t_max < t_cap && tail_bound(a, t_max) > quarter {
        t_max *= 1.25;
    }
    let t_max = t_max.min(t_cap).max(2.0 * eta);
    let tail = tail_bound(a, t_max);

    let f = |t: f64| osc_integrand(lambda, a, h, r, t);
    let width = (PI / r.abs()).min(1.0);
    let n = ((t_max - eta) / width).ceil().max(1.0) as usize;
    let step = (t_max - eta) / n as f64;
    let panel_tol = quarter / ERROR_INFLATION / n as f64;
    let mut acc = Adaptive::default();
    for i in 0..n {
        let lo = eta + step * i as f64;
        let hi = if i + 1 == n { t_max } else { lo + step };
        adapt(&f, lo, hi, panel_tol, 0, &mut acc);
    }
    let head = head_bound(lambda, h, r, eta);
    let rounding = 64.0 * f64::EPSILON * acc.abs;
    let radius = ERROR_INFLATION * acc.err + rounding + head + tail;
    if radius > budget {
        return Err(Error::Budget(format!("I({r}) enclosure radius {radius:e} exceeds budget {budget:e}")));
    }
    Ok(QuadratureReport {
        value: Interval::ball(acc.value, radius),
        eta,
        t_max,
        head_bound: head,
        tail_bound: tail,
        panel_error: ERROR_INFLATION * acc.err,
        panels: acc.panels,
    })
}
