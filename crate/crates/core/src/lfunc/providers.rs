//! Coefficient providers `p^m -> c(p^m)` for the logarithm of the Euler product.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::Mutex;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point counting is `O(p)` per prime; primes above this need an explicit
/// opt-in through [`EllipticProvider::with_limit`].
pub const DEFAULT_POINT_COUNT_LIMIT: u64 = 1_000_000;

/// Source of the coefficients `c(p^m)` with `L(s) = exp(sum c(p^m) p^{-ms})`.
///
/// Implementations must be safe for concurrent read-only queries.
pub trait CoefficientProvider: Send + Sync + fmt::Debug {
    /// `c(p^m)` for a prime `p` and `m >= 1`.
    fn coefficient(&self, p: u64, m: u32) -> Result<Complex64>;

    /// Largest prime power the provider can answer, if bounded.
    fn limit(&self) -> Option<u64> {
        None
    }
}

/// `c(p^m) = 1/m`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZetaProvider;

impl CoefficientProvider for ZetaProvider {
    fn coefficient(&self, _p: u64, m: u32) -> Result<Complex64> {
        Ok(Complex64::new(1.0 / m as f64, 0.0))
    }
}

/// `c(p^m)` for the Dedekind zeta function of `Q(i)`: a sum of `1/k` over
/// prime ideals `P` of `Z[i]` and `k >= 1` with `N(P)^k = p^m`.
pub fn gaussian_dedekind_coefficient(p: u64, m: u32) -> f64 {
    let m_f = m as f64;
    match p % 4 {
        // (1+i)^2 = (2) up to a unit: one prime of norm 2
        2 => 1.0 / m_f,
        // two conjugate primes of norm p
        1 => 2.0 / m_f,
        // (p) stays prime with norm p^2
        _ => {
            if m.is_multiple_of(2) {
                2.0 / m_f
            } else {
                0.0
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GaussianDedekindProvider;

impl CoefficientProvider for GaussianDedekindProvider {
    fn coefficient(&self, p: u64, m: u32) -> Result<Complex64> {
        Ok(Complex64::new(gaussian_dedekind_coefficient(p, m), 0.0))
    }
}

/// Reduction type at a bad prime, encoded by `eps` in `{1, -1, 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionType {
    SplitMultiplicative,
    NonSplitMultiplicative,
    Additive,
}

impl ReductionType {
    pub fn from_eps(eps: i64) -> Result<Self> {
        match eps {
            1 => Ok(ReductionType::SplitMultiplicative),
            -1 => Ok(ReductionType::NonSplitMultiplicative),
            0 => Ok(ReductionType::Additive),
            _ => Err(Error::Descriptor(format!("reduction sign must be 1, -1 or 0, got {eps}"))),
        }
    }

    pub fn eps(self) -> i64 {
        match self {
            ReductionType::SplitMultiplicative => 1,
            ReductionType::NonSplitMultiplicative => -1,
            ReductionType::Additive => 0,
        }
    }
}

/// A Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticCurve {
    pub a: [i64; 5],
    pub conductor: u64,
    pub bad_primes: Vec<(u64, ReductionType)>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl EllipticCurve {
    /// Curve 11a1, `y^2 + y = x^3 - x^2 - 10x - 20`, split multiplicative at 11.
    pub fn curve_11a1() -> Self {
        EllipticCurve {
            a: [0, -1, 1, -10, -20],
            conductor: 11,
            bad_primes: vec![(11, ReductionType::SplitMultiplicative)],
        }
    }

    fn b_invariants(&self) -> (i128, i128, i128, i128) {
        let [a1, a2, a3, a4, a6] = self.a.map(|v| v as i128);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    /// Number of projective points of the reduction mod `p` (singular
    /// reductions included, counting the singular point once).
    pub fn count_points(&self, p: u64) -> u64 {
        if p == 2 {
            let [a1, a2, a3, a4, a6] = self.a.map(|v| v.rem_euclid(2));
            let mut n = 1;
            for x in 0..2i64 {
                for y in 0..2i64 {
                    if (y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)).rem_euclid(2) == 0 {
                        n += 1;
                    }
                }
            }
            return n;
        }
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        let (b2, b4, b6, _) = self.b_invariants();
        let pi = p as i128;
        let (b2, b4, b6) = (b2.rem_euclid(pi) as u64, (2 * b4).rem_euclid(pi) as u64, b6.rem_euclid(pi) as u64);
        let mut is_square = vec![false; p as usize];
        for y in 0..p {
            is_square[((y * y) % p) as usize] = true;
        }
        let mut n = 1u64;
        for x in 0..p {
            let rhs = ((((4 * x % p) + b2) % p * x % p + b4) % p * x % p + b6) % p;
            n += if rhs == 0 {
                1
            } else if is_square[rhs as usize] {
                2
            } else {
                0
            };
        }
        n
    }

    /// `a_p = p + 1 - #E(F_p)`.
    pub fn trace_of_frobenius(&self, p: u64) -> i64 {
        p as i64 + 1 - self.count_points(p) as i64
    }

    pub fn reduction_at(&self, p: u64) -> Option<ReductionType> {
        self.bad_primes.iter().find(|(q, _)| *q == p).map(|(_, r)| *r)
    }

    /// Checks that the bad primes are exactly the prime divisors of the
    /// conductor, that the model has good reduction elsewhere among primes
    /// dividing the discriminant, and that each stated reduction sign agrees
    /// with a point count on the singular reduction.
    pub fn validate(&self) -> Result<()> {
        if self.conductor < 11 {
            return Err(Error::Descriptor(format!("conductor {} is too small", self.conductor)));
        }
        let disc = self.discriminant();
        if disc == 0 {
            return Err(Error::Descriptor("singular Weierstrass model".into()));
        }
        let mut listed: Vec<u64> = self.bad_primes.iter().map(|(p, _)| *p).collect();
        listed.sort_unstable();
        if listed.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Descriptor("bad prime listed twice".into()));
        }
        let expected = prime_factors(self.conductor);
        if listed != expected {
            return Err(Error::Descriptor(format!(
                "bad primes {listed:?} differ from the prime divisors {expected:?} of the conductor"
            )));
        }
        for &p in &expected {
            if disc % p as i128 != 0 {
                return Err(Error::Descriptor(format!("bad prime {p} does not divide the discriminant {disc}")));
            }
        }
        for q in prime_factors(disc.unsigned_abs().min(u64::MAX as u128) as u64) {
            if !expected.contains(&q) && disc % q as i128 == 0 {
                return Err(Error::Descriptor(format!(
                    "model is not minimal at {q}: it divides the discriminant but not the conductor"
                )));
            }
        }
        for &(p, red) in &self.bad_primes {
            let a = self.trace_of_frobenius(p);
            if a != red.eps() {
                return Err(Error::Descriptor(format!(
                    "reduction at {p} given as {red:?} but the singular reduction has a_p = {a}"
                )));
            }
        }
        Ok(())
    }
}

/// `c(p^m) = (alpha_p^m + conj(alpha_p)^m)/m` at good primes, `eps(p)^m/m`
/// at bad ones.
#[derive(Debug)]
pub struct EllipticProvider {
    curve: EllipticCurve,
    limit: u64,
    cache: Mutex<HashMap<u64, i64>>,
}

impl EllipticProvider {
    pub fn new(curve: EllipticCurve) -> Self {
        Self::with_limit(curve, DEFAULT_POINT_COUNT_LIMIT)
    }

    /// Largest prime for which point counting is attempted.
    pub fn with_limit(curve: EllipticCurve, limit: u64) -> Self {
        EllipticProvider { curve, limit, cache: Mutex::new(HashMap::new()) }
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    /// `a_p` by point counting, cached.
    pub fn a_p(&self, p: u64) -> Result<i64> {
        if p > self.limit {
            return Err(Error::MissingCoefficient(format!(
                "a_{p} exceeds the point-counting limit {}",
                self.limit
            )));
        }
        if let Some(&v) = self.cache.lock().expect("cache poisoned").get(&p) {
            return Ok(v);
        }
        // count outside the lock; a racing thread computes the same value
        let v = self.curve.trace_of_frobenius(p);
        self.cache.lock().expect("cache poisoned").insert(p, v);
        Ok(v)
    }

    /// `alpha^m + conj(alpha)^m` via `t_m = a_p t_{m-1} - p t_{m-2}`.
    pub fn power_sum(&self, p: u64, m: u32) -> Result<i128> {
        if let Some(red) = self.curve.reduction_at(p) {
            return Ok((red.eps() as i128).pow(m));
        }
        let a = self.a_p(p)? as i128;
        let p = p as i128;
        let (mut t0, mut t1) = (2i128, a);
        for _ in 1..m {
            let t2 = a * t1 - p * t0;
            t0 = t1;
            t1 = t2;
        }
        Ok(t1)
    }
}

impl CoefficientProvider for EllipticProvider {
    fn coefficient(&self, p: u64, m: u32) -> Result<Complex64> {
        let t = self.power_sum(p, m)?;
        Ok(Complex64::new(t as f64 / m as f64, 0.0))
    }

    fn limit(&self) -> Option<u64> {
        Some(self.limit)
    }
}

/// Coefficients read from a table; unlisted prime powers up to the limit
/// are zero.
#[derive(Clone, Debug, Default)]
pub struct TableProvider {
    entries: HashMap<(u64, u32), Complex64>,
    limit: u64,
}

impl TableProvider {
    pub fn new(entries: HashMap<(u64, u32), Complex64>, limit: u64) -> Self {
        TableProvider { entries, limit }
    }

    pub fn entries(&self) -> &HashMap<(u64, u32), Complex64> {
        &self.entries
    }
}

impl CoefficientProvider for TableProvider {
    fn coefficient(&self, p: u64, m: u32) -> Result<Complex64> {
        let pm = (p as u128).pow(m);
        if pm > self.limit as u128 {
            return Err(Error::MissingCoefficient(format!(
                "c({p}^{m}) is beyond the table limit {}",
                self.limit
            )));
        }
        Ok(self.entries.get(&(p, m)).copied().unwrap_or_default())
    }

    fn limit(&self) -> Option<u64> {
        Some(self.limit)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Parses a coefficient table: lines `p m re im`, `#` comments, and an
/// optional `# limit=<n>` header (default: the largest listed `p^m`).
pub fn parse_coefficient_table(text: &str, path: &Path) -> Result<TableProvider> {
    let err = |line: usize, msg: String| Error::Parse { path: path.display().to_string(), line, msg };
    let mut entries = HashMap::new();
    let mut limit: Option<u64> = None;
    let mut max_pm = 0u64;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("limit=") {
                limit = Some(v.trim().parse().map_err(|e| err(line_no, format!("bad limit: {e}")))?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(err(line_no, format!("expected `p m re im`, found {} fields", fields.len())));
        }
        let p: u64 = fields[0].parse().map_err(|e| err(line_no, format!("bad p: {e}")))?;
        let m: u32 = fields[1].parse().map_err(|e| err(line_no, format!("bad m: {e}")))?;
        let re: f64 = fields[2].parse().map_err(|e| err(line_no, format!("bad real part: {e}")))?;
        let im: f64 = fields[3].parse().map_err(|e| err(line_no, format!("bad imaginary part: {e}")))?;
        if !is_prime(p) || m == 0 {
            return Err(err(line_no, format!("{p}^{m} is not a prime power")));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(err(line_no, "non-finite coefficient".into()));
        }
        let pm = (p as u128).checked_pow(m).filter(|v| *v <= u64::MAX as u128);
        let pm = pm.ok_or_else(|| err(line_no, "prime power overflows".into()))? as u64;
        max_pm = max_pm.max(pm);
        if entries.insert((p, m), Complex64::new(re, im)).is_some() {
            return Err(err(line_no, format!("duplicate entry for {p}^{m}")));
        }
    }
    let limit = limit.unwrap_or(max_pm);
    if max_pm > limit {
        return Err(err(0, format!("entry {max_pm} exceeds declared limit {limit}")));
    }
    Ok(TableProvider::new(entries, limit))
}
