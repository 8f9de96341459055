//! Ekedahl–Oort strata and fine Deligne–Lusztig classification over small finite fields.

pub mod error;
pub mod gf;
pub mod matrix;
pub mod weyl;
pub mod bedard;
pub mod symplectic;
pub mod dlclassify;
pub mod dieudonne;
pub mod cli;

pub use error::{Error, Result};
