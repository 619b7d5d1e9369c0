//! Umbral treatment of Hermite numbers and polynomials, with numerical
//! companions: special integrals, truncated series, higher-order heat
//! equations and lacunary generating functions.

pub mod analysis;
pub mod error;
pub mod heat;
pub mod lacunary;
pub mod numbers;
pub mod polynomials;
pub mod series;
pub mod umbral;
pub mod verify;

pub use error::{Error, Result};
pub use series::SeriesResult;
