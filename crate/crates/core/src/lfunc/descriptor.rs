use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::providers::{
    parse_coefficient_table, CoefficientProvider, EllipticCurve, EllipticProvider, GaussianDedekindProvider,
    ReductionType, ZetaProvider, DEFAULT_POINT_COUNT_LIMIT,
};
use crate::error::{Error, Result};
use crate::primesum::PrimePowerSieve;

/// Prime powers up to this bound are checked against `|c(p^m)| <= C p^{(sigma1-1)m}`
/// when a descriptor is built.
pub const COEFFICIENT_AUDIT_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zeta,
    /// Dedekind zeta function of `Q(i)` with the built-in provider.
    HeckeGaussian,
    /// Hecke L-series with coefficients from a table.
    Hecke,
    Elliptic,
    Generic,
}

/// `Gamma(lambda s + mu)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaFactor {
    pub lambda: f64,
    pub mu: Complex64,
}

/// A pole of the completed L-function with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole {
    pub location: Complex64,
    pub multiplicity: u32,
}

/// Archimedean data of a Hecke character: `(phi_j, n_j)` per place.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeBlock {
    /// Degree `N` of the number field.
    pub degree: u32,
    #[serde(default)]
    pub real_places: Vec<(f64, i64)>,
    #[serde(default)]
    pub complex_places: Vec<(f64, i64)>,
    /// Whether the character is principal (adds the pole term).
    pub principal: bool,
}

impl HeckeBlock {
    /// Gamma factors `Gamma((s + i phi + n)/2)` at real places and
    /// `Gamma(s + i phi + |n|/2)` at complex places.
    pub fn gamma_factors(&self) -> Vec<GammaFactor> {
        let real = self
            .real_places
            .iter()
            .map(|&(phi, n)| GammaFactor { lambda: 0.5, mu: Complex64::new(n as f64 / 2.0, phi / 2.0) });
        let complex = self
            .complex_places
            .iter()
            .map(|&(phi, n)| GammaFactor { lambda: 1.0, mu: Complex64::new(n.unsigned_abs() as f64 / 2.0, phi) });
        real.chain(complex).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticBlock {
    pub a_invariants: [i64; 5],
    pub conductor: u64,
    pub bad_primes: Vec<(u64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_count_limit: Option<u64>,
}

/// On-disk JSON form of a descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub sigma0: f64,
    pub sigma1: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    /// `[lambda, mu_re, mu_im]` per factor.
    pub gamma_factors: Vec<[f64; 3]>,
    pub root_number: [f64; 2],
    /// `[re, im, multiplicity]` per pole.
    #[serde(default)]
    pub poles: Vec<(f64, f64, u32)>,
    #[serde(rename = "coeff_bound_C")]
    pub coeff_bound_c: f64,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elliptic: Option<EllipticBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hecke: Option<HeckeBlock>,
    /// Path of the coefficient table, relative to the descriptor file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_table: Option<PathBuf>,
}

/// Validated L-function data. Immutable once built.
#[derive(Clone)]
pub struct LFunctionDescriptor {
    file: DescriptorFile,
    gamma_factors: Vec<GammaFactor>,
    poles: Vec<Pole>,
    root_number: Complex64,
    provider: Arc<dyn CoefficientProvider>,
}

impl fmt::Debug for LFunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LFunctionDescriptor")
            .field("family", &self.file.family)
            .field("sigma0", &self.file.sigma0)
            .field("sigma1", &self.file.sigma1)
            .field("q", &self.file.q)
            .field("gamma_factors", &self.gamma_factors)
            .field("poles", &self.poles)
            .finish_non_exhaustive()
    }
}

impl LFunctionDescriptor {
    /// Builds a descriptor whose coefficients come from the family's
    /// built-in provider. Generic and table-based Hecke families need
    /// [`LFunctionDescriptor::with_provider`] or a descriptor file.
    pub fn from_data(file: DescriptorFile) -> Result<Self> {
        let provider: Arc<dyn CoefficientProvider> = match file.family {
            Family::Zeta => Arc::new(ZetaProvider),
            Family::HeckeGaussian => Arc::new(GaussianDedekindProvider),
            Family::Elliptic => {
                let block = file
                    .elliptic
                    .as_ref()
                    .ok_or_else(|| Error::Descriptor("elliptic family needs an `elliptic` block".into()))?;
                let curve = elliptic_curve(block)?;
                Arc::new(EllipticProvider::with_limit(curve, block.point_count_limit.unwrap_or(DEFAULT_POINT_COUNT_LIMIT)))
            }
            Family::Hecke | Family::Generic => {
                return Err(Error::Descriptor(format!("{:?} family needs a coefficient table", file.family)))
            }
        };
        Self::with_provider(file, provider)
    }

    /// Builds a descriptor with an explicit coefficient provider.
    pub fn with_provider(file: DescriptorFile, provider: Arc<dyn CoefficientProvider>) -> Result<Self> {
        let gamma_factors: Vec<GammaFactor> = file
            .gamma_factors
            .iter()
            .map(|&[lambda, re, im]| GammaFactor { lambda, mu: Complex64::new(re, im) })
            .collect();
        let poles = file
            .poles
            .iter()
            .map(|&(re, im, multiplicity)| Pole { location: Complex64::new(re, im), multiplicity })
            .collect();
        let root_number = Complex64::new(file.root_number[0], file.root_number[1]);
        let desc = LFunctionDescriptor { file, gamma_factors, poles, root_number, provider };
        desc.validate()?;
        desc.audit_coefficients(COEFFICIENT_AUDIT_LIMIT)?;
        Ok(desc)
    }

    fn validate(&self) -> Result<()> {
        let f = &self.file;
        let finite = [f.sigma0, f.sigma1, f.q, f.coeff_bound_c, f.root_number[0], f.root_number[1]];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::Descriptor("non-finite numeric field".into()));
        }
        if f.sigma0 <= 0.0 {
            return Err(Error::axiom("L4", format!("sigma0 = {} must be positive", f.sigma0)));
        }
        if f.sigma0 >= 2.0 * f.sigma1 {
            return Err(Error::axiom("L4", format!("sigma0 = {} is not below 2 sigma1 = {}", f.sigma0, 2.0 * f.sigma1)));
        }
        if f.q <= 0.0 {
            return Err(Error::axiom("L4", format!("Q = {} must be positive", f.q)));
        }
        if (self.root_number.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::axiom("L4", format!("root number {} does not have modulus 1", self.root_number)));
        }
        if self.gamma_factors.is_empty() {
            return Err(Error::axiom("L4", "at least one gamma factor is required"));
        }
        for (k, g) in self.gamma_factors.iter().enumerate() {
            if !(g.lambda.is_finite() && g.mu.re.is_finite() && g.mu.im.is_finite()) {
                return Err(Error::Descriptor(format!("gamma factor {k} is not finite")));
            }
            if g.lambda <= 0.0 {
                return Err(Error::axiom("L4", format!("gamma factor {k}: lambda = {} must be positive", g.lambda)));
            }
            let bound = -g.lambda * f.sigma0 / 2.0;
            if g.mu.re <= bound {
                return Err(Error::axiom(
                    "L4",
                    format!("gamma factor {k}: Re(mu) = {} is not above -lambda sigma0/2 = {bound}", g.mu.re),
                ));
            }
        }
        for p in &self.poles {
            if !(p.location.re.is_finite() && p.location.im.is_finite()) {
                return Err(Error::Descriptor("non-finite pole location".into()));
            }
            if p.multiplicity == 0 {
                return Err(Error::axiom("L2", format!("pole at {} has multiplicity 0", p.location)));
            }
        }
        if f.coeff_bound_c <= 0.0 {
            return Err(Error::axiom("L3", format!("coefficient bound C = {} must be positive", f.coeff_bound_c)));
        }
        match f.family {
            Family::Elliptic if f.elliptic.is_none() => {
                return Err(Error::Descriptor("elliptic family needs an `elliptic` block".into()))
            }
            Family::HeckeGaussian | Family::Hecke if f.hecke.is_none() => {
                return Err(Error::Descriptor("Hecke family needs a `hecke` block".into()))
            }
            _ => {}
        }
        if let Some(h) = &f.hecke {
            let expected = h.gamma_factors();
            let same = expected.len() == self.gamma_factors.len()
                && expected.iter().zip(&self.gamma_factors).all(|(x, y)| {
                    (x.lambda - y.lambda).abs() < 1e-12 && (x.mu - y.mu).norm() < 1e-12
                });
            if !same {
                return Err(Error::Descriptor("gamma factors do not match the Hecke places".into()));
            }
            if h.real_places.len() + 2 * h.complex_places.len() != h.degree as usize {
                return Err(Error::Descriptor(format!(
                    "degree {} is not r1 + 2 r2 = {}",
                    h.degree,
                    h.real_places.len() + 2 * h.complex_places.len()
                )));
            }
        }
        Ok(())
    }

    /// Checks `|c(p^m)| <= C p^{(sigma1-1)m}` for all `p^m <= limit` the
    /// provider can answer.
    pub fn audit_coefficients(&self, limit: u64) -> Result<()> {
        let limit = self.provider.limit().map_or(limit, |l| l.min(limit));
        let sieve = PrimePowerSieve::new(limit);
        for e in sieve.entries() {
            let c = self.provider.coefficient(e.p, e.m)?;
            let bound = self.file.coeff_bound_c * (e.p as f64).powf((self.file.sigma1 - 1.0) * e.m as f64);
            if c.norm() > bound * (1.0 + 1e-12) {
                return Err(Error::axiom(
                    "L3",
                    format!("|c({}^{})| = {} exceeds C p^((sigma1-1)m) = {bound}", e.p, e.m, c.norm()),
                ));
            }
        }
        Ok(())
    }

    pub fn sigma0(&self) -> f64 {
        self.file.sigma0
    }

    pub fn sigma1(&self) -> f64 {
        self.file.sigma1
    }

    pub fn q(&self) -> f64 {
        self.file.q
    }

    pub fn coeff_bound_c(&self) -> f64 {
        self.file.coeff_bound_c
    }

    pub fn family(&self) -> Family {
        self.file.family
    }

    pub fn gamma_factors(&self) -> &[GammaFactor] {
        &self.gamma_factors
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn root_number(&self) -> Complex64 {
        self.root_number
    }

    pub fn hecke(&self) -> Option<&HeckeBlock> {
        self.file.hecke.as_ref()
    }

    pub fn elliptic(&self) -> Option<&EllipticBlock> {
        self.file.elliptic.as_ref()
    }

    pub fn provider(&self) -> &dyn CoefficientProvider {
        self.provider.as_ref()
    }

    pub fn coefficient(&self, p: u64, m: u32) -> Result<Complex64> {
        self.provider.coefficient(p, m)
    }

    /// The data in file form.
    pub fn to_file(&self) -> &DescriptorFile {
        &self.file
    }
}

fn elliptic_curve(block: &EllipticBlock) -> Result<EllipticCurve> {
    let bad_primes = block
        .bad_primes
        .iter()
        .map(|&(p, eps)| Ok((p, ReductionType::from_eps(eps)?)))
        .collect::<Result<Vec<_>>>()?;
    let curve = EllipticCurve { a: block.a_invariants, conductor: block.conductor, bad_primes };
    curve.validate()?;
    Ok(curve)
}

/// Reads and validates a JSON descriptor; table paths resolve relative to
/// the descriptor's directory.
pub fn descriptor_from_file(path: impl AsRef<Path>) -> Result<LFunctionDescriptor> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let file: DescriptorFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        msg: e.to_string(),
    })?;
    match (file.family, &file.coeff_table) {
        (Family::Hecke | Family::Generic, Some(table)) => {
            let table_path = path.parent().unwrap_or(Path::new(".")).join(table);
            let text = std::fs::read_to_string(&table_path)
                .map_err(|source| Error::Io { path: table_path.clone(), source })?;
            let provider = parse_coefficient_table(&text, &table_path)?;
            LFunctionDescriptor::with_provider(file, Arc::new(provider))
        }
        (Family::Hecke | Family::Generic, None) => {
            Err(Error::Descriptor(format!("{:?} family needs `coeff_table`", file.family)))
        }
        (_, Some(_)) => Err(Error::Descriptor("`coeff_table` is only used by hecke and generic families".into())),
        (_, None) => LFunctionDescriptor::from_data(file),
    }
}

/// `Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn zeta_descriptor() -> LFunctionDescriptor {
    LFunctionDescriptor::from_data(zeta_file()).expect("built-in zeta descriptor is valid")
}

pub(crate) fn zeta_file() -> DescriptorFile {
    DescriptorFile {
        sigma0: 1.0,
        sigma1: 1.0,
        q: 1.0 / PI.sqrt(),
        gamma_factors: vec![[0.5, 0.0, 0.0]],
        root_number: [1.0, 0.0],
        poles: vec![(0.0, 0.0, 1), (1.0, 0.0, 1)],
        coeff_bound_c: 1.0,
        family: Family::Zeta,
        elliptic: None,
        hecke: None,
        coeff_table: None,
    }
}

/// Dedekind zeta function of `Q(i)`: `Lambda(s) = pi^{-s} Gamma(s) zeta_{Q(i)}(s)`.
pub fn gaussian_dedekind_descriptor() -> LFunctionDescriptor {
    let file = DescriptorFile {
        sigma0: 1.0,
        sigma1: 1.0,
        q: 1.0 / PI,
        gamma_factors: vec![[1.0, 0.0, 0.0]],
        root_number: [1.0, 0.0],
        poles: vec![(0.0, 0.0, 1), (1.0, 0.0, 1)],
        coeff_bound_c: 2.0,
        family: Family::HeckeGaussian,
        elliptic: None,
        hecke: Some(HeckeBlock { degree: 2, real_places: vec![], complex_places: vec![(0.0, 0)], principal: true }),
        coeff_table: None,
    };
    LFunctionDescriptor::from_data(file).expect("built-in Q(i) descriptor is valid")
}

/// `Lambda(E, s) = (sqrt(N)/2pi)^s Gamma(s) L(E, s)` for a curve over `Q`.
pub fn elliptic_descriptor(curve: &EllipticCurve, root_number: i32) -> Result<LFunctionDescriptor> {
    let file = DescriptorFile {
        sigma0: 2.0,
        sigma1: 1.5,
        q: (curve.conductor as f64).sqrt() / (2.0 * PI),
        gamma_factors: vec![[1.0, 0.0, 0.0]],
        root_number: [root_number as f64, 0.0],
        poles: vec![],
        coeff_bound_c: 2.0,
        family: Family::Elliptic,
        elliptic: Some(EllipticBlock {
            a_invariants: curve.a,
            conductor: curve.conductor,
            bad_primes: curve.bad_primes.iter().map(|&(p, r)| (p, r.eps())).collect(),
            point_count_limit: None,
        }),
        hecke: None,
        coeff_table: None,
    };
    LFunctionDescriptor::from_data(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_round_trips_through_json() {
        let d = zeta_descriptor();
        let json = serde_json::to_string(d.to_file()).unwrap();
        let back: DescriptorFile = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, d.to_file());
        let rebuilt = LFunctionDescriptor::from_data(back).unwrap();
        assert_eq!(rebuilt.gamma_factors(), d.gamma_factors());
        assert_eq!(rebuilt.poles(), d.poles());
        assert_eq!(rebuilt.q(), d.q());
    }

    #[test]
    fn l4_boundary_rejected() {
        let mut f = zeta_file();
        f.gamma_factors = vec![[0.5, -0.25, 0.0]];
        match LFunctionDescriptor::from_data(f) {
            Err(Error::Axiom { axiom, .. }) => assert_eq!(axiom, "L4"),
            other => panic!("expected L4 violation, got {other:?}"),
        }
    }

    #[test]
    fn sigma_and_root_number_checked() {
        let mut f = zeta_file();
        f.sigma0 = 2.0;
        assert!(matches!(LFunctionDescriptor::from_data(f), Err(Error::Axiom { axiom: "L4", .. })));
        let mut f = zeta_file();
        f.root_number = [0.5, 0.0];
        assert!(matches!(LFunctionDescriptor::from_data(f), Err(Error::Axiom { axiom: "L4", .. })));
    }

    #[test]
    fn coefficient_bound_is_audited() {
        let mut f = zeta_file();
        f.coeff_bound_c = 0.9;
        assert!(matches!(LFunctionDescriptor::from_data(f), Err(Error::Axiom { axiom: "L3", .. })));
    }

    #[test]
    fn elliptic_11a1_accepted() {
        let d = elliptic_descriptor(&EllipticCurve::curve_11a1(), 1).unwrap();
        assert_eq!(d.sigma0(), 2.0);
        assert!((d.q() - 11f64.sqrt() / (2.0 * PI)).abs() < 1e-16);
        assert_eq!(d.coefficient(11, 1).unwrap().re, 1.0);
    }

    #[test]
    fn hecke_places_must_match_gamma_factors() {
        let d = gaussian_dedekind_descriptor();
        let mut f = d.to_file().clone();
        f.gamma_factors = vec![[0.5, 0.0, 0.0]];
        assert!(LFunctionDescriptor::from_data(f).is_err());
    }
}
