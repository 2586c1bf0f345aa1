// NaN inputs are rejected with `!(x > 0.0)`-style guards throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arch;
pub mod certify;
pub mod error;
pub mod lfunc;
pub mod numerics;
pub mod par;
pub mod primesum;
pub mod testfn;

pub use error::{Error, Result};
