//! Outward-rounded interval arithmetic and certified special functions.

mod complex;
pub(crate) mod dd;
mod interval;
pub mod special;

pub use complex::ComplexInterval;
pub use interval::Interval;
pub use special::{
    arctan_cut, arctan_cut_enclosure, digamma, digamma_enclosure, digamma_eval, log_gamma,
    log_gamma_branch, log_gamma_enclosure,
};

use serde::{Deserialize, Serialize};

/// Evaluation tier. Only `Enclosure` results may back a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// Plain floating point, no error tracking.
    Fast,
    /// Rigorous enclosures.
    Enclosure,
}
