use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinates `gamma_j` of listed zeros `sigma0/2 + i gamma_j`, each known to
/// within `precision_delta`. A zero of multiplicity `n` is listed `n` times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    precision_delta: f64,
    source_label: String,
}

impl ZeroList {
    pub fn new(ordinates: Vec<f64>, precision_delta: f64, source_label: impl Into<String>) -> Result<Self> {
        if !(precision_delta.is_finite() && precision_delta > 0.0) {
            return Err(Error::Descriptor(format!("precision delta {precision_delta} must be positive")));
        }
        if let Some(i) = ordinates.iter().position(|g| !g.is_finite()) {
            return Err(Error::Descriptor(format!("ordinate {i} is not finite")));
        }
        if let Some(i) = ordinates.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::Descriptor(format!("ordinates not sorted at index {}", i + 1)));
        }
        Ok(ZeroList { ordinates, precision_delta, source_label: source_label.into() })
    }

    /// Parses the text format: `# delta=<real>` (required), optional
    /// `# source=<text>`, then one ordinate per line in non-decreasing order.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { path: path.display().to_string(), line, msg };
        let mut delta = None;
        let mut source = String::new();
        let mut ordinates = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("delta=") {
                    let d: f64 = v.trim().parse().map_err(|e| err(line_no, format!("bad delta: {e}")))?;
                    if !(d.is_finite() && d > 0.0) {
                        return Err(err(line_no, format!("delta {d} must be positive")));
                    }
                    delta = Some(d);
                } else if let Some(v) = rest.strip_prefix("source=") {
                    source = v.trim().to_string();
                }
                continue;
            }
            let g: f64 = line.parse().map_err(|e| err(line_no, format!("bad ordinate `{line}`: {e}")))?;
            if !g.is_finite() {
                return Err(err(line_no, "ordinate is not finite".into()));
            }
            if ordinates.last().is_some_and(|&prev| g < prev) {
                return Err(err(line_no, format!("ordinate {g} is smaller than the previous one (line {last_line})")));
            }
            ordinates.push(g);
            last_line = line_no;
        }
        let delta = delta.ok_or_else(|| err(1, "missing `# delta=<real>` header".into()))?;
        Ok(ZeroList { ordinates, precision_delta: delta, source_label: source })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# delta={}\n", self.precision_delta);
        if !self.source_label.is_empty() {
            let _ = writeln!(out, "# source={}", self.source_label);
        }
        for g in &self.ordinates {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn precision_delta(&self) -> f64 {
        self.precision_delta
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Copy with the zero at `index` removed.
    pub fn without(&self, index: usize) -> ZeroList {
        let mut z = self.clone();
        z.ordinates.remove(index);
        z
    }

    /// Copy keeping only ordinates in `[lo, hi]`.
    pub fn restricted(&self, lo: f64, hi: f64) -> ZeroList {
        let ordinates = self.ordinates.iter().copied().filter(|g| (lo..=hi).contains(g)).collect();
        ZeroList { ordinates, ..self.clone() }
    }

    /// Copy with one ordinate inserted in order.
    pub fn with_extra(&self, gamma: f64) -> ZeroList {
        let mut z = self.clone();
        let pos = z.ordinates.partition_point(|&g| g <= gamma);
        z.ordinates.insert(pos, gamma);
        z
    }

    /// Index pairs of consecutive ordinates closer than `tol`.
    pub fn close_pairs(&self, tol: f64) -> Vec<(usize, usize)> {
        self.ordinates
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] - w[0] < tol)
            .map(|(i, _)| (i, i + 1))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let z = ZeroList::new(vec![14.134725141734694, 21.022039638771556], 1e-12, "test").unwrap();
        let back = ZeroList::parse(&z.to_text(), Path::new("z")).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let e = ZeroList::parse("# delta=1e-9\n14.13\nfoo\n", Path::new("z.txt")).unwrap_err();
        assert!(e.to_string().starts_with("z.txt:3:"), "{e}");
    }

    #[test]
    fn unsorted_and_missing_delta_rejected() {
        assert!(ZeroList::parse("# delta=1e-9\n21\n14\n", Path::new("z")).is_err());
        assert!(ZeroList::parse("14\n", Path::new("z")).is_err());
        assert!(ZeroList::new(vec![2.0, 1.0], 1e-9, "").is_err());
    }

    #[test]
    fn repeated_ordinates_are_kept() {
        let z = ZeroList::parse("# delta=1e-9\n5\n5\n", Path::new("z")).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.close_pairs(1e-6), vec![(0, 1)]);
    }
}
