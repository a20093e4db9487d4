//! Localization lengths of matter lumps from the ground-state energy of a
//! massless scalar field coupled to their mass density.
//!
//! The crate is organized bottom-up:
//!
//! * [`units`]: CGS constants and mass/length conversions.
//! * [`profiles`]: spherically symmetric densities and their Fourier amplitudes.
//! * [`gravenergy`]: field ground-state energy, coherent displacement, two-source force.
//! * [`solver`]: total energy and its stationary localization length.
//! * [`regimes`]: asymptotic laws, classification, crossover and transition width.
//! * [`sweep`]: mass sweeps and their CSV/JSON tables.
//!
//! Per-point work in sweeps and scans runs through [`parallel`], which uses
//! rayon when the `parallel` feature is enabled.

pub mod error;
pub mod format;
pub mod gravenergy;
pub mod numeric;
pub mod parallel;
pub mod profiles;
pub mod regimes;
pub mod solver;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use parallel::Execution;
pub use solver::{LumpSpec, StationarityMode, StationaryResult};
pub use units::{constants, Constants};
