//! Scalar numerical kernels: adaptive quadrature, bracketed root finding,
//! golden-section minimization and power-law fits.

pub mod fit;
pub mod golden;
pub mod quadrature;
pub mod roots;
