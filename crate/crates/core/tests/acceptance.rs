//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerocert_core::arch::{default_contour_height, osc_bound, osc_constant, osc_quadrature};
use zerocert_core::certify::{
    certify_elliptic, certify_zeta_r, certify_zeta_window, explicit_formula_check, recommend_cutoff,
    zeta_counting_bounds, zeta_theorem_cutoff, CertifyOptions, CutoffRule, Verdict,
};
use zerocert_core::lfunc::{
    elliptic_descriptor, gaussian_dedekind_coefficient, gaussian_dedekind_descriptor, zeta_descriptor,
    EllipticCurve, EllipticProvider, Family, LFunctionDescriptor, ZeroList, COEFFICIENT_AUDIT_LIMIT,
};
use zerocert_core::numerics::{digamma_eval, log_gamma_branch, EvalMode, Interval};
use zerocert_core::par::Parallelism;
use zerocert_core::primesum::{tail_bound, w_f_terms, PrimePowerSieve};
use zerocert_core::testfn::{fhat, fhat_complement, TestWindow};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn zeros(name: &str) -> ZeroList {
    ZeroList::from_file(fixtures().join(name)).expect("fixture loads")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn constants() -> Outcome {
    let start = Instant::now();
    let two = Interval::point(2.0);
    let budget = two / (Interval::point(15.0) * Interval::pi());
    ensure(budget.hi() < 0.043, format!("2/(15 pi) = {}", budget.hi()))?;
    let c_zeta = osc_constant(0.5, PI, 4.9 / PI).map_err(|e| e.to_string())?;
    ensure(c_zeta.hi() < 2.6, format!("C_1(pi) = {}", c_zeta.hi()))?;
    let c_real = osc_constant(0.5, PI, 1.6).map_err(|e| e.to_string())?;
    ensure(c_real.hi() < 2.58, format!("C(1.6) = {}", c_real.hi()))?;
    let c_complex = osc_constant(1.0, PI, 0.8).map_err(|e| e.to_string())?;
    ensure(c_complex.hi() < 17.46, format!("C(0.8) = {}", c_complex.hi()))?;
    let pi = Interval::pi();
    let ell = Interval::point(16.0) / pi * ((Interval::ONE - pi) / two * Interval::point(30.0).ln()).exp()
        / (pi - Interval::ONE);
    ensure(ell.hi() < 0.07, format!("elliptic tail constant = {}", ell.hi()))?;
    let alpha = (Interval::point(2.5) - Interval::ONE) / two;
    let x = ((Interval::point(30.0) / alpha).ln() / alpha).exp();
    ensure(x.hi() <= 140.0, format!("(30/alpha)^(1/alpha) = {}", x.hi()))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!(
        "2/(15pi) < {:.5}, C1 < {:.4}, C(1.6) < {:.4}, C(0.8) < {:.3}, tail < {:.4}, X < {:.3}",
        budget.hi(),
        c_zeta.hi(),
        c_real.hi(),
        c_complex.hi(),
        ell.hi(),
        x.hi()
    ))
}

fn zeta_r() -> Outcome {
    let list = zeros("zeta_0_103.txt");
    ensure(list.precision_delta() <= 1e-9, "fixture precision")?;
    let count = list.ordinates().iter().filter(|&&g| g <= 100.0).count() as f64;
    let (g, r1) = zeta_counting_bounds(100.0).map_err(|e| e.to_string())?;
    ensure((g - r1..=g + r1).contains(&count) && count == 29.0, format!("N(100) = {count}"))?;
    let start = Instant::now();
    let opts = CertifyOptions::default();
    let full = certify_zeta_r(&list, 100.0, 2.5, &opts).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(full.verdict == Verdict::CertifiedComplete, format!("verdict {}", full.verdict))?;
    ensure(full.lhs.hi() <= -0.56, format!("lhs.hi = {}", full.lhs.hi()))?;
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    let mut min_jump = f64::INFINITY;
    for (i, &g) in list.ordinates().iter().enumerate() {
        if g >= 98.0 {
            continue;
        }
        let r = certify_zeta_r(&list.without(i), 100.0, 2.5, &opts).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Inconclusive, format!("still certified without {g}"))?;
        min_jump = min_jump.min(r.lhs.lo() - full.lhs.hi());
    }
    ensure(min_jump >= 0.95, format!("smallest jump {min_jump}"))?;
    Ok(format!("lhs.hi = {:.6}, smallest removal jump {min_jump:.4}, {secs:.3} s", full.lhs.hi()))
}

fn zeta_window() -> Outcome {
    let opts = CertifyOptions::default();
    let r = certify_zeta_window(&zeros("zeta_990_1030.txt"), 1000.0, 1020.0, 2.5, &opts)
        .map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::CertifiedComplete, format!("verdict {}", r.verdict))?;
    let t = certify_zeta_window(&zeros("zeta_1000_1020.txt"), 1000.0, 1020.0, 2.5, &opts)
        .map_err(|e| e.to_string())?;
    let g = t.guard.as_ref().ok_or("no guard report")?;
    ensure(g.deficit_lo > 0.0 && g.deficit_hi > 0.0, "truncated list shows no deficit")?;
    let c = recommend_cutoff(CutoffRule::ZetaWindow { h: 2.5 }, 1000.0).map_err(|e| e.to_string())?;
    ensure((g.extension_lo - c).abs() < 1e-12, "guard extension differs from C(T)")?;
    println!("        truncated list:\n{}", indent(&t.to_string()));
    Ok(format!(
        "lhs.hi = {:.6}; truncated: deficit {:.4} / {:.4}, C(1000) = {c:.6}",
        r.lhs.hi(),
        g.deficit_lo,
        g.deficit_hi
    ))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("          {l}")).collect::<Vec<_>>().join("\n")
}

fn residual() -> Outcome {
    let list = zeros("zeta_0_103.txt").restricted(0.0, 80.0);
    let z = zeta_descriptor();
    let h = 3.0;
    let w = TestWindow::new(0.0, 50.0, h).unwrap();
    let opts = CertifyOptions { budget: 1e-3, ..CertifyOptions::default() };
    let r = explicit_formula_check(&z, &list, &w, &opts).map_err(|e| e.to_string())?;
    let size = r.residual.width() + r.residual.mid().abs();
    ensure(size <= 1e-2, format!("width + |mid| = {size}"))?;
    let mut shifted: Vec<f64> = list.ordinates().to_vec();
    shifted[3] += 1e-4;
    let moved = ZeroList::new(shifted, list.precision_delta(), "").unwrap();
    let r2 = explicit_formula_check(&z, &moved, &w, &opts).map_err(|e| e.to_string())?;
    let change = (r2.residual.mid() - r.residual.mid()).abs();
    let allowed = 2e-4 / h + r.residual.width();
    ensure(change <= allowed, format!("shift moved residual by {change} > {allowed}"))?;
    Ok(format!("width + |mid| = {size:.3e}, perturbation moved it {change:.3e}"))
}

fn envelopes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f4a7);
    let rel = 1e-12;
    let (mut wide, mut failures) = (0usize, Vec::new());
    for i in 0..10_000 {
        let a = rng.random_range(-500.0..500.0);
        let len = rng.random_range(0.0..80.0);
        let h = rng.random_range(0.2..PI);
        let w = TestWindow::new(a, a + len, h).unwrap();
        let x = rng.random_range(a - 20.0 * h..a + len + 20.0 * h);
        let y = rng.random_range(-0.95..0.95) * h / 2.0;
        let z = Complex64::new(x, y);
        let s = PI / h;
        let f = fhat(&w, z).map_err(|e| e.to_string())?.re;
        let mut ok = f > 0.0;
        if w.a <= x && x <= w.b {
            let c = fhat_complement(&w, z).map_err(|e| e.to_string())?.re;
            ok &= c > 0.0 && c < 4.0 / PI * (-s * (x - w.a).min(w.b - x)).exp() * (1.0 + rel);
            if w.is_wide() {
                wide += 1;
                ok &= f > 0.49;
            }
        } else {
            ok &= f < 2.0 / PI * (-s * (x - w.b).max(w.a - x)).exp() * (1.0 + rel);
        }
        if !ok {
            failures.push(i);
        }
    }
    if let Some(first) = failures.first() {
        return Err(format!("{} failures, first sample {first}", failures.len()));
    }
    Ok(format!("10000 samples, {wide} inside wide windows, 0 failures"))
}

fn soundness() -> Outcome {
    let zeta = zeta_descriptor();
    let ell = elliptic_descriptor(&EllipticCurve::curve_11a1(), 1).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for m in [50u64, 137, 500] {
        for (a, b, h) in [(0.0, 100.0, 2.5), (1000.0, 1020.0, 2.5), (0.0, 20.0, PI)] {
            let w = TestWindow::new(a, b, h).unwrap();
            for desc in [&zeta, &ell] {
                let terms = w_f_terms(desc, &w, 10 * m, Parallelism::default()).map_err(|e| e.to_string())?;
                let measured: f64 = terms.iter().filter(|t| t.pm > m).map(|t| t.term).sum::<f64>().abs();
                let bound = tail_bound(desc, h, m).map_err(|e| e.to_string())?;
                ensure(measured <= bound, format!("{:?} M = {m}: {measured} > {bound}", desc.family()))?;
                worst = worst.max(measured / bound);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x05c1_11a7);
    for _ in 0..100 {
        let lambda = if rng.random_bool(0.5) { 0.5 } else { 1.0 };
        let u = rng.random_range(0.0..1.0);
        let sigma0 = if rng.random_bool(0.5) { 1.0 } else { 2.0 };
        let h = rng.random_range(1.0..PI);
        let r = rng.random_range(0.5..100.0);
        let b = default_contour_height(Family::Generic, lambda, h);
        let bound = osc_bound(lambda, u, sigma0, h, r, b).map_err(|e| e.to_string())?.bound;
        let q = osc_quadrature(lambda, u, sigma0, h, r, 1e-6).map_err(|e| e.to_string())?;
        ensure(
            -bound <= q.value.lo() && q.value.hi() <= bound,
            format!("quadrature {:?} outside +-{bound} (lambda {lambda}, R {r})", q.value),
        )?;
    }
    Ok(format!("tail ratio at most {worst:.3}; 100 quadratures inside their contour bounds"))
}

fn ideal_log_coefficients(limit: usize) -> Vec<f64> {
    let mut a = vec![0.0; limit + 1];
    for x in 1..=limit {
        for y in 0..=limit {
            let n = x * x + y * y;
            if n > limit {
                break;
            }
            a[n] += 1.0;
        }
        if x * x > limit {
            break;
        }
    }
    let mut lam = vec![0.0; limit + 1];
    for n in 2..=limit {
        let mut v = a[n] * (n as f64).ln();
        for d in 2..n {
            if n % d == 0 {
                v -= lam[d] * a[n / d];
            }
        }
        lam[n] = v;
    }
    (0..=limit).map(|n| if n < 2 { 0.0 } else { lam[n] / (n as f64).ln() }).collect()
}

fn providers() -> Outcome {
    let b = ideal_log_coefficients(500);
    for e in PrimePowerSieve::new(500).entries() {
        let got = gaussian_dedekind_coefficient(e.p, e.m);
        ensure((got - b[e.pm as usize]).abs() < 1e-12, format!("Gaussian c({}) = {got}", e.pm))?;
    }
    let curve = EllipticCurve::curve_11a1();
    let provider = EllipticProvider::new(curve.clone());
    let [a1, a2, a3, a4, a6] = curve.a;
    for e in PrimePowerSieve::new(100).entries().iter().filter(|e| e.m == 1) {
        let p = e.p as i64;
        let mut count = 1;
        for x in 0..p {
            for y in 0..p {
                let l = (y * y + a1 * x * y + a3 * y).rem_euclid(p);
                let r = (x * x * x + a2 * x * x + a4 * x + a6).rem_euclid(p);
                count += (l == r) as i64;
            }
        }
        let a_p = p + 1 - count;
        ensure((a_p * a_p) as f64 <= 4.0 * p as f64, format!("Hasse fails at {p}"))?;
        if p != 11 {
            let got = provider.a_p(e.p).map_err(|e| e.to_string())?;
            ensure(got == a_p, format!("a_{p} = {got}, count gives {a_p}"))?;
        }
    }
    let descs: Vec<LFunctionDescriptor> = vec![
        zeta_descriptor(),
        gaussian_dedekind_descriptor(),
        elliptic_descriptor(&curve, 1).map_err(|e| e.to_string())?,
    ];
    for d in &descs {
        d.audit_coefficients(COEFFICIENT_AUDIT_LIMIT).map_err(|e| e.to_string())?;
    }
    Ok("Gaussian to 500, 11a1 a_p to 100 with Hasse, audit to 10^4".into())
}

fn elliptic() -> Outcome {
    let desc = elliptic_descriptor(&EllipticCurve::curve_11a1(), 1).map_err(|e| e.to_string())?;
    let r = certify_elliptic(&desc, &zeros("ell11a1_m25_25.txt"), 0.0, 20.0, &CertifyOptions::default())
        .map_err(|e| e.to_string())?;
    let t = &r.terms;
    let finite = r.lhs.is_finite() && t.w_f.is_finite() && t.w_inf.is_finite() && t.zero_sum.is_finite();
    ensure(finite, "non-finite report")?;
    let attribution = format!(
        "w_f {:+.4}, w_inf {:+.4} + {:.4}, zeros -{:.4}",
        t.w_f.mid(),
        t.w_inf.mid(),
        t.w_inf_remainder,
        t.zero_sum.mid()
    );
    Ok(format!("{} lhs = {:.6} ({attribution})", r.verdict, r.lhs.hi()))
}

fn special_functions() -> Outcome {
    let text = std::fs::read_to_string(fixtures().join("oracle/special_values.txt")).map_err(|e| e.to_string())?;
    let (mut n, mut worst, mut widest) = (0, 0.0f64, 0.0f64);
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let v: Vec<f64> = line.split_whitespace().map(|x| x.parse().unwrap()).collect();
        let z = Complex64::new(v[0], v[1]);
        let lg = Complex64::new(v[2], v[3]);
        let dg = Complex64::new(v[4], v[5]);
        let f = log_gamma_branch(z, EvalMode::Fast).map_err(|e| e.to_string())?.mid();
        let d = digamma_eval(z, EvalMode::Fast).map_err(|e| e.to_string())?.mid();
        worst = worst.max((f - lg).norm()).max((d - dg).norm());
        let e1 = log_gamma_branch(z, EvalMode::Enclosure).map_err(|e| e.to_string())?;
        let e2 = digamma_eval(z, EvalMode::Enclosure).map_err(|e| e.to_string())?;
        widest = widest.max(e1.re.width()).max(e1.im.width()).max(e2.re.width()).max(e2.im.width());
        n += 1;
    }
    ensure(n >= 200, format!("only {n} oracle points"))?;
    ensure(worst <= 1e-12, format!("max error {worst:.3e}"))?;
    ensure(widest <= 1e-10, format!("max width {widest:.3e}"))?;
    Ok(format!("{n} points, max error {worst:.2e}, max width {widest:.2e}"))
}

fn main() -> ExitCode {
    // the family theorem cutoff is part of criterion 1 as well
    assert_eq!(zeta_theorem_cutoff(2.5).ok(), Some(136));
    let criteria: [Criterion; 9] = [
        ("constants", constants),
        ("zeta (0, R] end-to-end", zeta_r),
        ("zeta [a, b] end-to-end", zeta_window),
        ("explicit-formula residual", residual),
        ("test-function envelopes", envelopes),
        ("tail and oscillatory bounds", soundness),
        ("coefficient providers", providers),
        ("elliptic end-to-end", elliptic),
        ("special functions", special_functions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
