//! Physical constants and unit conversions.
//!
//! Everything downstream works in CGS: grams, centimetres, seconds, erg.
//! Masses enter the public API either in grams or as `mu`, the mass in
//! units of the proton mass.
//!
//! Constant values (CODATA 2018, rounded and converted to CGS):
//!
//! | symbol | value            | unit              |
//! |--------|------------------|-------------------|
//! | G      | 6.674e-8         | cm³ g⁻¹ s⁻²       |
//! | ħ      | 1.0546e-27       | erg s             |
//! | c      | 2.9979e10        | cm s⁻¹            |
//! | m_p    | 1.6726e-24       | g                 |
//!
//! The reference condensed-matter density is expressed as a number density
//! of proton masses per cm³ and defaults to 10²⁴.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

pub const GRAVITATIONAL_CONSTANT: f64 = 6.674e-8;
pub const REDUCED_PLANCK: f64 = 1.0546e-27;
pub const SPEED_OF_LIGHT: f64 = 2.9979e10;
pub const PROTON_MASS: f64 = 1.6726e-24;
/// Proton masses per cm³ for ordinary condensed matter.
pub const DEFAULT_DENSITY: f64 = 1e24;

/// The constant set used by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    #[serde(rename = "G")]
    pub g: f64,
    pub hbar: f64,
    pub c: f64,
    pub m_p: f64,
    pub rho_ref: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            g: GRAVITATIONAL_CONSTANT,
            hbar: REDUCED_PLANCK,
            c: SPEED_OF_LIGHT,
            m_p: PROTON_MASS,
            rho_ref: DEFAULT_DENSITY,
        }
    }
}

impl Constants {
    /// Returns a copy with a different reference density.
    pub fn with_density(self, rho_ref: f64) -> Result<Self> {
        ensure_positive("density", rho_ref)?;
        Ok(Constants { rho_ref, ..self })
    }

    /// Checks that every field is finite and strictly positive.
    pub fn validate(&self) -> Result<()> {
        ensure_positive("G", self.g)?;
        ensure_positive("hbar", self.hbar)?;
        ensure_positive("c", self.c)?;
        ensure_positive("m_p", self.m_p)?;
        ensure_positive("density", self.rho_ref)?;
        Ok(())
    }

    pub fn mass_from_mu(&self, mu: f64) -> Result<f64> {
        mass_from_mu_with(mu, self.m_p)
    }

    /// Inner dispersion of a lump of `mu` proton masses at this set's
    /// reference density.
    pub fn lambda0_from_mu(&self, mu: f64) -> Result<f64> {
        lambda0_from_mu(mu, self.rho_ref)
    }
}

/// The canonical constant set.
pub fn constants() -> Constants {
    Constants::default()
}

/// Mass in grams of `mu` proton masses.
pub fn mass_from_mu(mu: f64) -> Result<f64> {
    mass_from_mu_with(mu, PROTON_MASS)
}

fn mass_from_mu_with(mu: f64, m_p: f64) -> Result<f64> {
    ensure_positive("mu", mu)?;
    Ok(mu * m_p)
}

/// Length scale `(mu / rho_ref)^(1/3)` in cm, the Gaussian dispersion of a
/// lump of `mu` proton masses at number density `rho_ref` per cm³.
pub fn lambda0_from_mu(mu: f64, rho_ref: f64) -> Result<f64> {
    ensure_positive("mu", mu)?;
    ensure_positive("density", rho_ref)?;
    let ratio = mu / rho_ref;
    let lambda0 = if ratio.is_normal() {
        ratio.cbrt()
    } else {
        // ratio left the normal range; go through logarithms
        ((mu.ln() - rho_ref.ln()) / 3.0).exp()
    };
    if lambda0.is_normal() {
        Ok(lambda0)
    } else {
        Err(Error::domain(
            "mu",
            "inner dispersion out of floating-point range",
        ))
    }
}
