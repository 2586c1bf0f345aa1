use std::f64::consts::PI;
use std::path::PathBuf;

use zerocert_core::certify::{
    certify_auto, certify_elliptic, certify_general, certify_hecke, certify_zeta_r, certify_zeta_window,
    explicit_formula_check, CertificateReport, CertifyOptions, TheoremChoice, TheoremUsed, Verdict,
};
use zerocert_core::lfunc::{
    elliptic_descriptor, gaussian_dedekind_descriptor, zeta_descriptor, EllipticCurve, ZeroList,
};
use zerocert_core::testfn::TestWindow;

fn fixture(name: &str) -> ZeroList {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    ZeroList::from_file(path).unwrap()
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

#[test]
fn zeta_r_certifies_and_each_removal_breaks_it() {
    let zeros = fixture("zeta_0_103.txt");
    let full = certify_zeta_r(&zeros, 100.0, 2.5, &opts()).unwrap();
    assert_eq!(full.verdict, Verdict::CertifiedComplete, "{full}");
    assert!(full.lhs.hi() <= -0.56);
    assert_eq!(full.terms.cutoff, 136);
    for (i, &g) in zeros.ordinates().iter().enumerate().filter(|(_, &g)| g < 98.0) {
        let r = certify_zeta_r(&zeros.without(i), 100.0, 2.5, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive, "removing {g}");
        assert!(r.lhs.lo() - full.lhs.hi() >= 0.95, "removing {g}: jump {}", r.lhs.mid() - full.lhs.mid());
    }
}

#[test]
fn zeta_r_flags_duplicates_and_strict_rejects_them() {
    let zeros = fixture("zeta_0_103.txt");
    let full = certify_zeta_r(&zeros, 100.0, 2.5, &opts()).unwrap();
    let dup = zeros.with_extra(zeros.ordinates()[3]);
    let r = certify_zeta_r(&dup, 100.0, 2.5, &opts()).unwrap();
    assert!(r.lhs.hi() < full.lhs.lo());
    assert!(r.warnings.iter().any(|w| w.contains("duplicate")));
    let strict = CertifyOptions { strict: true, ..opts() };
    assert!(certify_zeta_r(&dup, 100.0, 2.5, &strict).is_err());
    let asserted = CertifyOptions { strict: true, assert_multiplicity: true, ..opts() };
    assert!(certify_zeta_r(&dup, 100.0, 2.5, &asserted).is_ok());
}

#[test]
fn zeta_window_certifies_and_reports_guard_deficit() {
    let zeros = fixture("zeta_990_1030.txt");
    let r = certify_zeta_window(&zeros, 1000.0, 1020.0, 2.5, &opts()).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedComplete, "{r}");
    let g = r.guard.as_ref().unwrap();
    assert_eq!(g.deficit_lo, 0.0);
    assert_eq!(g.deficit_hi, 0.0);
    let c = 2.5 / PI * (1000f64.ln().ln() + 1.1);
    assert!((g.extension_lo - c).abs() < 1e-12);

    let tight = fixture("zeta_1000_1020.txt");
    let r = certify_zeta_window(&tight, 1000.0, 1020.0, 2.5, &opts()).unwrap();
    let g = r.guard.as_ref().unwrap();
    assert!(g.deficit_lo > 0.0 && g.deficit_hi > 0.0);
    assert!(r.to_string().contains("guard"));
    assert!(certify_zeta_window(&zeros, 15.0, 40.0, 2.5, &opts()).is_err());
}

#[test]
fn general_window_and_removal_jump() {
    let zeros = fixture("zeta_990_1030.txt");
    let z = zeta_descriptor();
    let w = TestWindow::new(1000.0, 1020.0, 2.5).unwrap();
    let full = certify_general(&z, &zeros, &w, &opts()).unwrap();
    assert_eq!(full.verdict, Verdict::CertifiedComplete, "{full}");
    let inside = zeros.ordinates().iter().position(|&g| g > 1005.0).unwrap();
    let r = certify_general(&z, &zeros.without(inside), &w, &opts()).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.lhs.lo() - full.lhs.hi() > 0.49);
}

#[test]
fn theorem_mode_implies_general_mode() {
    let zeros = fixture("zeta_990_1030.txt");
    let z = zeta_descriptor();
    for (a, b, h) in [(1000.0, 1020.0, 2.5), (995.0, 1025.0, 2.0), (1001.0, 1015.0, 3.0)] {
        let t = certify_zeta_window(&zeros, a, b, h, &opts()).unwrap();
        let g = certify_general(&z, &zeros, &TestWindow::new(a, b, h).unwrap(), &opts()).unwrap();
        if t.verdict == Verdict::CertifiedComplete {
            assert_eq!(g.verdict, Verdict::CertifiedComplete, "[{a}, {b}] h = {h}");
        }
    }
}

#[test]
fn shortcut_agrees_away_from_threshold() {
    let zeros = fixture("zeta_990_1030.txt");
    let z = zeta_descriptor();
    let w = TestWindow::new(995.0, 1025.0, 2.5).unwrap();
    let off = certify_general(&z, &zeros, &w, &opts()).unwrap();
    let on = certify_general(&z, &zeros, &w, &CertifyOptions { shortcut: true, ..opts() }).unwrap();
    assert!(on.terms.precision_slack >= 0.01);
    if (off.decisive_value() - off.threshold).abs() >= 0.01 {
        assert_eq!(on.verdict, off.verdict);
    }
    assert!((on.lhs.mid() - off.lhs.mid()).abs() <= 0.01);
}

#[test]
fn explicit_formula_residual_is_small() {
    let zeros = fixture("zeta_0_103.txt").restricted(0.0, 80.0);
    let z = zeta_descriptor();
    let w = TestWindow::new(0.0, 50.0, 3.0).unwrap();
    let check_opts = CertifyOptions { budget: 1e-3, ..opts() };
    let r = explicit_formula_check(&z, &zeros, &w, &check_opts).unwrap();
    assert!(r.residual.mid().abs() + r.residual.width() <= 1e-2, "{:?}", r.residual);
}

#[test]
fn gaussian_window_falls_back_to_general() {
    let zeros = fixture("qi_m60_60.txt");
    let d = gaussian_dedekind_descriptor();
    assert!(certify_hecke(&d, &zeros, 20.0, 30.0, &opts()).is_err());
    let r = certify_auto(&d, &zeros, TheoremChoice::Auto, 20.0, 30.0, None, &opts()).unwrap();
    assert_eq!(r.theorem_used, TheoremUsed::General);
    assert!(r.lhs.is_finite());
    assert!(r.warnings[0].contains("not applicable"));
}

#[test]
fn gaussian_hecke_inequality() {
    let zeros = fixture("qi_m60_60.txt");
    let d = gaussian_dedekind_descriptor();
    let r = certify_hecke(&d, &zeros, 0.0, 50.0, &opts()).unwrap();
    assert!(r.lhs.is_finite());
    assert_eq!(r.terms.cutoff, 40);
    assert!(r.terms.pole_term.lo() > 0.0);
    assert_eq!(r.verdict, Verdict::CertifiedComplete, "{r}");
}

#[test]
fn gaussian_pole_sign_matches_explicit_formula() {
    let zeros = fixture("qi_m60_60.txt");
    let d = gaussian_dedekind_descriptor();
    let w = TestWindow::new(-20.0, 20.0, PI).unwrap();
    let r = explicit_formula_check(&d, &zeros, &w, &CertifyOptions { budget: 1e-3, ..opts() }).unwrap();
    assert!(r.residual.mid().abs() + r.residual.width() <= 1e-2, "{:?}", r.residual);
}

#[test]
fn elliptic_window() {
    let zeros = fixture("ell11a1_m25_25.txt");
    let d = elliptic_descriptor(&EllipticCurve::curve_11a1(), 1).unwrap();
    let r = certify_elliptic(&d, &zeros, 0.0, 20.0, &opts()).unwrap();
    assert!(r.lhs.is_finite());
    assert_eq!(r.terms.cutoff, 29);
    assert!(r.terms.w_inf_remainder >= 0.2785 && r.terms.w_inf_remainder - 0.2785 < 1e-15);
    assert_eq!(r.verdict, Verdict::CertifiedComplete, "{r}");
    assert!(certify_elliptic(&d, &zeros, 10.0, 20.0, &opts()).is_err());
}

#[test]
fn report_json_round_trip() {
    let zeros = fixture("zeta_0_103.txt");
    let r = certify_zeta_r(&zeros, 100.0, 2.5, &opts()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: CertificateReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["verdict", "theorem", "window", "lhs", "threshold", "terms", "warnings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verdict"], "CERTIFIED_COMPLETE");
}
