use std::f64::consts::PI;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zerocert_core::certify::{
    certify_auto, default_h, explicit_formula_check, recommend_cutoff, zeta_counting_bounds, CertifyOptions, CutoffRule,
    TheoremChoice, Verdict,
};
use zerocert_core::lfunc::{descriptor_from_file, zeta_descriptor, Family, LFunctionDescriptor, ZeroList};
use zerocert_core::numerics::EvalMode;
use zerocert_core::par::{configure_threads, threads_from_env, Parallelism};
use zerocert_core::primesum::{usable_cutoff, w_f_eval, w_f_terms, DEFAULT_BUDGET};
use zerocert_core::testfn::TestWindow;

/// Completeness certificates for lists of L-function zeros.
#[derive(Parser, Debug)]
#[command(name = "zerocert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a zero list is complete on a window.
    Certify(CertifyArgs),
    /// Recommend how far beyond the window the list should extend.
    Window(WindowArgs),
    /// Explicit-formula residual of a zero list (a diagnostic, not a certificate).
    Check(CheckArgs),
    /// Dump the prime-power terms of the prime sum.
    Primes(PrimesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Auto,
    General,
    ZetaR,
    ZetaAb,
    Hecke,
    Elliptic,
}

impl From<Theorem> for TheoremChoice {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::Auto => TheoremChoice::Auto,
            Theorem::General => TheoremChoice::General,
            Theorem::ZetaR => TheoremChoice::ZetaR,
            Theorem::ZetaAb => TheoremChoice::ZetaAb,
            Theorem::Hecke => TheoremChoice::Hecke,
            Theorem::Elliptic => TheoremChoice::Elliptic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct WindowSpec {
    /// JSON descriptor; the Riemann zeta function when omitted.
    #[arg(long)]
    descriptor: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Height for windows `(0, R]`; replaces `--a`/`--b`.
    #[arg(long = "R", conflicts_with_all = ["a", "b"])]
    r: Option<f64>,
    /// Strip width; family defaults when omitted.
    #[arg(long)]
    h: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
}

impl WindowSpec {
    fn descriptor(&self) -> Result<LFunctionDescriptor> {
        match &self.descriptor {
            Some(p) => descriptor_from_file(p).with_context(|| format!("loading descriptor {}", p.display())),
            None => Ok(zeta_descriptor()),
        }
    }

    fn bounds(&self) -> Result<(f64, f64)> {
        match (self.r, self.a, self.b) {
            (Some(r), _, _) => Ok((0.0, r)),
            (None, Some(a), Some(b)) => Ok((a, b)),
            _ => bail!("give either --R or both --a and --b"),
        }
    }

    fn h_or(&self, default: f64) -> f64 {
        self.h.unwrap_or(default)
    }
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    window: WindowSpec,
    #[arg(long)]
    zeros: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    theorem: Theorem,
    /// Remainder budget for the prime-sum cutoff in the general inequality.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: f64,
    /// Count zeros deep inside the window as exactly 1.
    #[arg(long)]
    shortcut: bool,
    /// Reject ordinates closer than the stated precision.
    #[arg(long)]
    strict: bool,
    /// Close ordinates are genuine multiple zeros.
    #[arg(long)]
    assert_multiplicity: bool,
    /// Plain floating point; the verdict is then not rigorous.
    #[arg(long)]
    fast: bool,
}

#[derive(Args, Debug)]
struct WindowArgs {
    #[command(flatten)]
    window: WindowSpec,
    #[arg(long, value_enum, default_value = "auto")]
    theorem: Theorem,
    /// Conductor for the elliptic rule when no descriptor is given.
    #[arg(long)]
    conductor: Option<u64>,
    /// Zero list whose length sets the precision requirement.
    #[arg(long)]
    zeros: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    window: WindowSpec,
    #[arg(long)]
    zeros: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    budget: f64,
    /// Exit 0 when `|mid| + width` of the residual is at most this.
    #[arg(long, default_value_t = 1e-2)]
    tol: f64,
}

#[derive(Args, Debug)]
struct PrimesArgs {
    #[command(flatten)]
    window: WindowSpec,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: f64,
    /// Explicit prime-power cutoff instead of the budget rule.
    #[arg(long)]
    cutoff: Option<u64>,
}

fn load_zeros(path: &PathBuf) -> Result<ZeroList> {
    ZeroList::from_file(path).with_context(|| format!("loading zeros {}", path.display()))
}

fn cmd_certify(args: &CertifyArgs) -> Result<u8> {
    let spec = &args.window;
    let desc = spec.descriptor()?;
    let zeros = load_zeros(&args.zeros)?;
    let (a, b) = spec.bounds()?;
    if spec.r.is_some() && !matches!(args.theorem, Theorem::Auto | Theorem::ZetaR | Theorem::General) {
        bail!("--R goes with --theorem zeta-r, general or auto");
    }
    if args.theorem == Theorem::ZetaR && spec.r.is_none() {
        bail!("--theorem zeta-r takes --R");
    }
    let opts = CertifyOptions {
        mode: if args.fast { EvalMode::Fast } else { EvalMode::Enclosure },
        budget: args.budget,
        shortcut: args.shortcut,
        strict: args.strict,
        assert_multiplicity: args.assert_multiplicity,
        ..CertifyOptions::default()
    };
    let report = certify_auto(&desc, &zeros, args.theorem.into(), a, b, spec.h, &opts)?;
    let mut out = io::stdout().lock();
    match spec.output {
        Output::Text => writeln!(out, "{report}")?,
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(match report.verdict {
        Verdict::CertifiedComplete => 0,
        Verdict::Inconclusive => 1,
    })
}

fn window_rule(args: &WindowArgs, desc: Option<&LFunctionDescriptor>, h: f64) -> Result<CutoffRule> {
    let family = desc.map(|d| d.family()).unwrap_or(Family::Zeta);
    let theorem = match args.theorem {
        Theorem::Auto => match family {
            Family::Zeta if args.window.r.is_some() => Theorem::ZetaR,
            Family::Zeta => Theorem::ZetaAb,
            Family::Hecke | Family::HeckeGaussian => Theorem::Hecke,
            Family::Elliptic => Theorem::Elliptic,
            Family::Generic => Theorem::General,
        },
        t => t,
    };
    Ok(match theorem {
        Theorem::ZetaR => CutoffRule::ZetaR { h },
        Theorem::ZetaAb => CutoffRule::ZetaWindow { h },
        Theorem::Hecke => {
            let d = desc.context("the Hecke rule needs --descriptor")?;
            let block = d.hecke().context("descriptor has no hecke block")?;
            let a_const = block
                .real_places
                .iter()
                .chain(&block.complex_places)
                .map(|&(phi, k)| phi.abs() + k.unsigned_abs() as f64 / 2.0)
                .fold(0.0, f64::max);
            CutoffRule::Hecke { a_const, q_prime: d.q() + std::f64::consts::E, degree: block.degree }
        }
        Theorem::Elliptic => {
            let conductor = match (args.conductor, desc.and_then(|d| d.elliptic())) {
                (Some(n), _) => n,
                (None, Some(block)) => block.conductor,
                (None, None) => bail!("the elliptic rule needs --conductor or an elliptic descriptor"),
            };
            CutoffRule::Elliptic { conductor }
        }
        Theorem::General | Theorem::Auto => {
            CutoffRule::General { h, q: desc.map(|d| d.q()).unwrap_or_else(|| zeta_descriptor().q()) }
        }
    })
}

/// `C(X)`; an endpoint at 0 on a self-dual family needs no extension.
fn extension(rule: CutoffRule, x: f64) -> Result<f64> {
    match recommend_cutoff(rule, x) {
        Err(_) if x == 0.0 && matches!(rule, CutoffRule::Elliptic { .. } | CutoffRule::Hecke { .. }) => Ok(0.0),
        other => Ok(other?),
    }
}

fn cmd_window(args: &WindowArgs) -> Result<u8> {
    let spec = &args.window;
    let desc = match &spec.descriptor {
        Some(_) => Some(spec.descriptor()?),
        None if args.conductor.is_some() => None,
        None => Some(zeta_descriptor()),
    };
    let (a, b) = spec.bounds()?;
    let h = spec.h_or(desc.as_ref().map_or(PI, default_h));
    let rule = window_rule(args, desc.as_ref(), h)?;
    let ext_lo = if matches!(rule, CutoffRule::ZetaR { .. }) { 0.0 } else { extension(rule, a)? };
    let ext_hi = extension(rule, b)?;
    let (lo, hi) = (a - ext_lo, b + ext_hi);
    let count = match &args.zeros {
        Some(p) => Some(load_zeros(p)?.len() as f64),
        None if matches!(rule, CutoffRule::ZetaR { .. } | CutoffRule::ZetaWindow { .. }) => {
            let (g_hi, r_hi) = zeta_counting_bounds(hi.max(std::f64::consts::E))?;
            let below = if lo > 14.0 { zeta_counting_bounds(lo).map(|(g, r)| g - r)?.max(0.0) } else { 0.0 };
            Some((g_hi + r_hi - below).ceil())
        }
        None => None,
    };
    // m (2/h) delta <= 0.01
    let max_delta = count.map(|m| 0.01 * h / (2.0 * m.max(1.0)));
    let mut out = io::stdout().lock();
    match spec.output {
        Output::Text => {
            writeln!(out, "rule         {rule:?}")?;
            writeln!(out, "window       [{a}, {b}], h = {h}")?;
            writeln!(out, "extension    {ext_lo:.6} below, {ext_hi:.6} above")?;
            writeln!(out, "recommended  [{lo:.6}, {hi:.6}]")?;
            match (count, max_delta) {
                (Some(m), Some(d)) => writeln!(out, "precision    delta <= {d:.3e} for {m} zeros")?,
                _ => writeln!(out, "precision    delta <= {:.3e} / m for m listed zeros", 0.01 * h / 2.0)?,
            }
        }
        Output::Json => {
            let v = json!({
                "rule": rule,
                "window": {"a": a, "b": b, "h": h},
                "extension_lo": ext_lo,
                "extension_hi": ext_hi,
                "recommended": [lo, hi],
                "zeros": count,
                "max_delta": max_delta,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(0)
}

fn cmd_check(args: &CheckArgs) -> Result<u8> {
    let spec = &args.window;
    let desc = spec.descriptor()?;
    let zeros = load_zeros(&args.zeros)?;
    let (a, b) = spec.bounds()?;
    let w = TestWindow::new(a, b, spec.h_or(default_h(&desc)))?;
    let opts = CertifyOptions { budget: args.budget, shortcut: false, ..CertifyOptions::default() };
    let r = explicit_formula_check(&desc, &zeros, &w, &opts)?;
    let size = r.residual.mid().abs() + r.residual.width();
    let mut out = io::stdout().lock();
    match spec.output {
        Output::Text => {
            writeln!(out, "window       [{}, {}], h = {}", w.a, w.b, w.h)?;
            writeln!(out, "zero side    [{:+.12}, {:+.12}]  {} zeros", r.w_s.lo(), r.w_s.hi(), r.zeros_used)?;
            writeln!(out, "prime sum    [{:+.12}, {:+.12}]  p^m <= {}, tail {:.3e}", r.w_f.lo(), r.w_f.hi(), r.cutoff, r.w_f_tail)?;
            writeln!(out, "archimedean  [{:+.12}, {:+.12}]", r.w_inf.total.lo(), r.w_inf.total.hi())?;
            writeln!(out, "residual     [{:+.12}, {:+.12}]", r.residual.lo(), r.residual.hi())?;
            writeln!(out, "|mid|+width  {size:.3e} (tolerance {:.1e})", args.tol)?;
        }
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
    }
    Ok(if size <= args.tol { 0 } else { 1 })
}

fn cmd_primes(args: &PrimesArgs) -> Result<u8> {
    let spec = &args.window;
    let desc = spec.descriptor()?;
    let (a, b) = spec.bounds()?;
    let w = TestWindow::new(a, b, spec.h_or(default_h(&desc)))?;
    let cutoff = match args.cutoff {
        Some(m) => m,
        None => usable_cutoff(&desc, w.h, args.budget)?.0,
    };
    let par = Parallelism::default();
    let sum = w_f_eval(&desc, &w, cutoff, EvalMode::Enclosure, par)?;
    // zero coefficients contribute nothing and are left out
    let rows: Vec<_> = w_f_terms(&desc, &w, cutoff, par)?.into_iter().filter(|t| t.c.norm() != 0.0).collect();
    let mut out = io::stdout().lock();
    match spec.output {
        Output::Text => {
            writeln!(out, "{:>10} {:>3} {:>8} {:>22} {:>22} {:>22}", "p^m", "m", "p", "Re c", "Im c", "term")?;
            for t in &rows {
                writeln!(out, "{:>10} {:>3} {:>8} {:>22.15e} {:>22.15e} {:>22.15e}", t.pm, t.m, t.p, t.c.re, t.c.im, t.term)?;
            }
            writeln!(out, "cutoff       {cutoff}")?;
            writeln!(out, "sum          [{:+.15}, {:+.15}]", sum.value.lo(), sum.value.hi())?;
            writeln!(out, "tail bound   {:.6e}", sum.tail_bound)?;
        }
        Output::Json => {
            let terms: Vec<_> = rows
                .iter()
                .map(|t| json!({"p": t.p, "m": t.m, "pm": t.pm, "c": [t.c.re, t.c.im], "term": t.term}))
                .collect();
            let v = json!({"cutoff": cutoff, "terms": terms, "sum": sum.value, "tail_bound": sum.tail_bound});
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(n) = threads_from_env()? {
        configure_threads(n)?;
    }
    match &cli.command {
        Command::Certify(a) => cmd_certify(a),
        Command::Window(a) => cmd_window(a),
        Command::Check(a) => cmd_check(a),
        Command::Primes(a) => cmd_primes(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::from(0)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
