use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numerics::Interval;
use crate::testfn::TestWindow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CertifiedComplete,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedComplete => "CERTIFIED_COMPLETE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Which inequality a report evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremUsed {
    /// `w_f + w_inf - sum f^(gamma_j) + poles <= 0.49`.
    General,
    /// Zeta zeros with ordinate in `(0, R]`.
    ZetaR,
    /// Zeta zeros with ordinate in `[a, b]`.
    ZetaAB,
    Hecke,
    Elliptic,
}

impl TheoremUsed {
    pub fn threshold(self) -> f64 {
        self.threshold_hundredths() as f64 / 100.0
    }

    fn threshold_hundredths(self) -> i32 {
        match self {
            TheoremUsed::General => 49,
            TheoremUsed::ZetaR => -56,
            TheoremUsed::ZetaAB => 44,
            TheoremUsed::Hecke => 44,
            TheoremUsed::Elliptic => 42,
        }
    }

    /// The decimal threshold enclosed; verdicts compare against its lower end.
    pub fn threshold_enclosure(self) -> Interval {
        Interval::ratio(self.threshold_hundredths() as f64, 100.0)
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremUsed::General => "general",
            TheoremUsed::ZetaR => "zeta-r",
            TheoremUsed::ZetaAB => "zeta-ab",
            TheoremUsed::Hecke => "hecke",
            TheoremUsed::Elliptic => "elliptic",
        }
    }
}

/// Term-by-term breakdown of the left side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Terms {
    /// Truncated prime sum.
    pub w_f: Interval,
    /// Remainder bound of the prime sum not absorbed by the threshold.
    pub w_f_tail: f64,
    /// Prime-power cutoff used.
    pub cutoff: u64,
    /// Archimedean term: the full enclosure in general mode, the conductor
    /// and log-gamma part in the family inequalities.
    pub w_inf: Interval,
    /// Explicit remainder added to the archimedean line by a family
    /// inequality (`1.6/R`, `3.2/a`, or the `E` penalties).
    pub w_inf_remainder: f64,
    /// `sum_j f^(gamma_j)`, subtracted.
    pub zero_sum: Interval,
    pub pole_term: Interval,
    /// Ordinate-precision slack plus the shortcut allowance when used.
    pub precision_slack: f64,
}

/// Coverage of the zero list against the recommended range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuardReport {
    pub extension_lo: f64,
    pub extension_hi: f64,
    pub recommended_lo: f64,
    pub recommended_hi: f64,
    pub listed_lo: Option<f64>,
    pub listed_hi: Option<f64>,
    /// How far the list falls short of the recommended range on each side.
    pub deficit_lo: f64,
    pub deficit_hi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    #[serde(rename = "theorem")]
    pub theorem_used: TheoremUsed,
    pub window: TestWindow,
    pub lhs: Interval,
    pub threshold: f64,
    pub terms: Terms,
    pub zeros_used: usize,
    #[serde(default)]
    pub guard: Option<GuardReport>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl CertificateReport {
    /// The number compared against the threshold.
    pub fn decisive_value(&self) -> f64 {
        decisive_upper(self.lhs, &self.terms)
    }

    /// How far below the threshold the decisive value lies (negative when
    /// inconclusive).
    pub fn margin(&self) -> f64 {
        self.threshold - self.decisive_value()
    }
}

/// Upper bound of `lhs.hi + w_f_tail + precision_slack`.
pub(crate) fn decisive_upper(lhs: Interval, terms: &Terms) -> f64 {
    (Interval::point(lhs.hi()) + Interval::point(terms.w_f_tail) + Interval::point(terms.precision_slack)).hi()
}

pub(crate) fn verdict_for(lhs: Interval, terms: &Terms, theorem: TheoremUsed) -> Verdict {
    if decisive_upper(lhs, terms) <= theorem.threshold_enclosure().lo() {
        Verdict::CertifiedComplete
    } else {
        Verdict::Inconclusive
    }
}

fn iv(x: &Interval) -> String {
    format!("[{:+.12}, {:+.12}]", x.lo(), x.hi())
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.terms;
        let w = &self.window;
        writeln!(f, "theorem      {} (threshold {})", self.theorem_used.name(), self.threshold)?;
        writeln!(f, "window       a = {}, b = {}, h = {}", w.a, w.b, w.h)?;
        writeln!(f, "prime sum    {}  p^m <= {}, tail {:.3e}", iv(&t.w_f), t.cutoff, t.w_f_tail)?;
        writeln!(f, "archimedean  {}  + remainder {:.6}", iv(&t.w_inf), t.w_inf_remainder)?;
        writeln!(f, "zero sum   - {}  {} zeros", iv(&t.zero_sum), self.zeros_used)?;
        writeln!(f, "pole term    {}", iv(&t.pole_term))?;
        writeln!(f, "slack        {:.3e}", t.precision_slack)?;
        writeln!(f, "lhs          {}", iv(&self.lhs))?;
        writeln!(
            f,
            "decisive     {:+.12} vs {} (margin {:+.6})",
            self.decisive_value(),
            self.threshold,
            self.margin()
        )?;
        if let Some(g) = &self.guard {
            let listed = match (g.listed_lo, g.listed_hi) {
                (Some(lo), Some(hi)) => format!("[{lo}, {hi}]"),
                _ => "empty".to_string(),
            };
            writeln!(
                f,
                "guard        recommended [{:.6}, {:.6}] (extension {:.6} / {:.6}), listed {listed}, deficit {:.6} / {:.6}",
                g.recommended_lo, g.recommended_hi, g.extension_lo, g.extension_hi, g.deficit_lo, g.deficit_hi
            )?;
        }
        for warn in &self.warnings {
            writeln!(f, "warning      {warn}")?;
        }
        write!(f, "verdict      {}", self.verdict)
    }
}
