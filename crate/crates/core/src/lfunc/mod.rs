//! L-function descriptors, coefficient providers and zero lists.
//!
//! A descriptor carries the data of the completed L-function
//!
//! ```text
//! Lambda(s) = Q^s prod_k Gamma(lambda_k s + mu_k) L(s),   Lambda(s) = w conj(Lambda(sigma0 - conj s))
//! L(s) = exp( sum_{p^m} c(p^m) p^{-ms} ),   |c(p^m)| <= C p^{(sigma1 - 1) m}
//! ```
//!
//! together with the poles of `Lambda` and a provider for `c(p^m)`.

mod descriptor;
mod providers;
mod zeros;

pub use descriptor::{
    descriptor_from_file, elliptic_descriptor, COEFFICIENT_AUDIT_LIMIT, gaussian_dedekind_descriptor, zeta_descriptor, DescriptorFile,
    EllipticBlock, Family, GammaFactor, HeckeBlock, LFunctionDescriptor, Pole,
};
pub use providers::{
    gaussian_dedekind_coefficient, parse_coefficient_table, CoefficientProvider, EllipticCurve, EllipticProvider,
    GaussianDedekindProvider, ReductionType, TableProvider, ZetaProvider, DEFAULT_POINT_COUNT_LIMIT,
};
pub use zeros::ZeroList;
