//! Special functions, quadrature and the integral identities built on them.

pub mod airy;
pub mod gabor;
pub mod gamma;
pub mod identities;
pub mod quadrature;
