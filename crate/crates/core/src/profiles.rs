//! Spherically symmetric mass-density profiles and their Fourier amplitudes.
//!
//! The amplitude convention is the unitary one,
//!
//! ```text
//! ρ̃(k) = (2π)^{-3/2} ∫ d³x ρ(x) e^{-ik·x} = (2π)^{-3/2} 4π ∫₀^∞ r² ρ(r) sinc(kr) dr,
//! ```
//!
//! so that `ρ̃(0) = M / (2π)^{3/2}` for a profile of total mass `M`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::numeric::quadrature::{integrate_with_breakpoints, Tolerance, DEFAULT_MAX_INTERVALS};

/// `(2π)^{3/2}`
pub const TWO_PI_POW_3_2: f64 = 15.749_609_945_722_419;

const TABULATED_TOL: f64 = 1e-10;

/// `sin(x) / x`, with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// `3 j₁(x) / x`, the normalized transform of a uniform ball.
fn ball_form_factor(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0)))
    } else {
        3.0 * (x.sin() - x * x.cos()) / (x * x * x)
    }
}

/// Radial samples of a tabulated density, linearly interpolated.
///
/// Inside the first sample the density is held at `rho[0]`; beyond the last
/// sample it is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTable {
    r: Vec<f64>,
    rho: Vec<f64>,
}

impl RadialTable {
    pub fn new(r: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if r.len() != rho.len() {
            return Err(Error::domain(
                "table",
                format!("{} radii but {} densities", r.len(), rho.len()),
            ));
        }
        if r.len() < 4 {
            return Err(Error::domain("table", "need at least 4 samples"));
        }
        if r.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::domain("table", "radii must be finite and >= 0"));
        }
        if r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("table", "radii must be strictly increasing"));
        }
        if rho.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::domain("table", "densities must be finite and >= 0"));
        }
        if rho.iter().all(|x| *x == 0.0) {
            return Err(Error::domain("table", "density is identically zero"));
        }
        Ok(RadialTable { r, rho })
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn densities(&self) -> &[f64] {
        &self.rho
    }

    pub fn outer_radius(&self) -> f64 {
        *self.r.last().expect("validated non-empty")
    }

    /// Interpolated density at radius `r`.
    pub fn density_at(&self, r: f64) -> f64 {
        let n = self.r.len();
        if r <= self.r[0] {
            return self.rho[0];
        }
        if r > self.r[n - 1] {
            return 0.0;
        }
        let i = self.r.partition_point(|&x| x < r).clamp(1, n - 1);
        let (r0, r1) = (self.r[i - 1], self.r[i]);
        let t = (r - r0) / (r1 - r0);
        self.rho[i - 1] + t * (self.rho[i] - self.rho[i - 1])
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut bps = Vec::with_capacity(self.r.len() + 1);
        if self.r[0] > 0.0 {
            bps.push(0.0);
        }
        bps.extend_from_slice(&self.r);
        bps
    }

    /// `4π ∫ r² ρ(r) sinc(kr) dr` over the support.
    fn radial_transform(&self, k: f64) -> Result<f64> {
        let bps = self.breakpoints();
        let f = |r: f64| r * r * self.density_at(r) * sinc(k * r);
        // absolute floor relative to the k = 0 integral
        let scale = self.mass_scale();
        let tol = Tolerance {
            abs: TABULATED_TOL * scale / (4.0 * PI),
            rel: TABULATED_TOL,
        };
        let max = DEFAULT_MAX_INTERVALS.max(4 * bps.len());
        Ok(4.0 * PI * integrate_with_breakpoints(f, &bps, tol, max)?.value)
    }

    // trapezoid estimate of the total mass, used only to set tolerances
    fn mass_scale(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.r.len() {
            let (a, b) = (self.r[i - 1], self.r[i]);
            acc += 0.5 * (a * a * self.rho[i - 1] + b * b * self.rho[i]) * (b - a);
        }
        4.0 * PI * acc.max(f64::MIN_POSITIVE)
    }

    /// Total mass of the interpolated density.
    pub fn mass(&self) -> Result<f64> {
        self.radial_transform(0.0)
    }

    fn scaled(&self, s: f64) -> Self {
        let s3 = s * s * s;
        RadialTable {
            r: self.r.iter().map(|r| r * s).collect(),
            rho: self.rho.iter().map(|rho| rho / s3).collect(),
        }
    }
}

/// Radial shape of a profile. Lengths in cm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    /// `ρ ∝ exp(-r² / 2λ²)`
    Gaussian {
        dispersion: f64,
    },
    /// Constant density inside `radius`.
    UniformBall {
        radius: f64,
    },
    /// `ρ ∝ exp(-r / scale)`
    Exponential {
        scale: f64,
    },
    Tabulated(RadialTable),
}

/// A spherically symmetric mass distribution with its total mass in grams.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    shape: Shape,
    total_mass: f64,
}

/// Mass-weighted Fourier amplitude `ρ̃(k)` in grams at wavenumber `k` (cm⁻¹).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierAmplitude {
    pub k: f64,
    pub value: f64,
}

impl DensityProfile {
    pub fn gaussian(dispersion: f64, total_mass: f64) -> Result<Self> {
        ensure_positive("dispersion", dispersion)?;
        ensure_positive("mass", total_mass)?;
        Ok(DensityProfile {
            shape: Shape::Gaussian { dispersion },
            total_mass,
        })
    }

    pub fn uniform_ball(radius: f64, total_mass: f64) -> Result<Self> {
        ensure_positive("radius", radius)?;
        ensure_positive("mass", total_mass)?;
        Ok(DensityProfile {
            shape: Shape::UniformBall { radius },
            total_mass,
        })
    }

    pub fn exponential(scale: f64, total_mass: f64) -> Result<Self> {
        ensure_positive("scale", scale)?;
        ensure_positive("mass", total_mass)?;
        Ok(DensityProfile {
            shape: Shape::Exponential { scale },
            total_mass,
        })
    }

    /// The total mass is whatever the interpolated samples integrate to.
    pub fn tabulated(table: RadialTable) -> Result<Self> {
        let total_mass = ensure_positive("mass", table.mass()?)?;
        Ok(DensityProfile {
            shape: Shape::Tabulated(table),
            total_mass,
        })
    }

    /// Builds a tabulated profile by sampling `density` (g/cm³) at `radii`.
    pub fn sample<F: Fn(f64) -> f64>(radii: Vec<f64>, density: F) -> Result<Self> {
        let rho = radii.iter().map(|&r| density(r)).collect();
        Self::tabulated(RadialTable::new(radii, rho)?)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// A length over which the profile's amplitude varies appreciably.
    pub fn length_scale(&self) -> f64 {
        match &self.shape {
            Shape::Gaussian { dispersion } => *dispersion,
            Shape::UniformBall { radius } => *radius,
            Shape::Exponential { scale } => *scale,
            Shape::Tabulated(t) => t.outer_radius(),
        }
    }

    /// Density in g/cm³ at radius `r`.
    pub fn density_at(&self, r: f64) -> f64 {
        let m = self.total_mass;
        match &self.shape {
            Shape::Gaussian { dispersion: l } => {
                m * (-r * r / (2.0 * l * l)).exp() / (TWO_PI_POW_3_2 * l * l * l)
            }
            Shape::UniformBall { radius } => {
                if r <= *radius {
                    3.0 * m / (4.0 * PI * radius.powi(3))
                } else {
                    0.0
                }
            }
            Shape::Exponential { scale: a } => m * (-r / a).exp() / (8.0 * PI * a * a * a),
            Shape::Tabulated(t) => t.density_at(r),
        }
    }

    /// Same shape with every length multiplied by `s`, mass unchanged.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        ensure_positive("scale factor", s)?;
        let shape = match &self.shape {
            Shape::Gaussian { dispersion } => Shape::Gaussian {
                dispersion: dispersion * s,
            },
            Shape::UniformBall { radius } => Shape::UniformBall { radius: radius * s },
            Shape::Exponential { scale } => Shape::Exponential { scale: scale * s },
            Shape::Tabulated(t) => Shape::Tabulated(t.scaled(s)),
        };
        Ok(DensityProfile {
            shape,
            total_mass: self.total_mass,
        })
    }

    /// Same shape with the total mass replaced.
    pub fn with_mass(&self, total_mass: f64) -> Result<Self> {
        ensure_positive("mass", total_mass)?;
        let shape = match &self.shape {
            Shape::Tabulated(t) => {
                let f = total_mass / self.total_mass;
                Shape::Tabulated(RadialTable {
                    r: t.r.clone(),
                    rho: t.rho.iter().map(|x| x * f).collect(),
                })
            }
            other => other.clone(),
        };
        Ok(DensityProfile { shape, total_mass })
    }

    /// Mass-weighted Fourier amplitude at `k >= 0`.
    pub fn fourier_amplitude(&self, k: f64) -> Result<FourierAmplitude> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::domain("k", format!("must be finite and >= 0, got {k}")));
        }
        let value = self.amplitude_unchecked(k)?;
        Ok(FourierAmplitude { k, value })
    }

    pub(crate) fn amplitude_unchecked(&self, k: f64) -> Result<f64> {
        let peak = self.total_mass / TWO_PI_POW_3_2;
        Ok(match &self.shape {
            Shape::Gaussian { dispersion: l } => peak * (-0.5 * (l * k).powi(2)).exp(),
            Shape::UniformBall { radius } => peak * ball_form_factor(k * radius),
            Shape::Exponential { scale: a } => {
                let q = 1.0 + (a * k).powi(2);
                peak / (q * q)
            }
            Shape::Tabulated(t) => t.radial_transform(k)? / TWO_PI_POW_3_2,
        })
    }
}

/// Dispersion `√(λ₀² + λ′²)` of a Gaussian inner density smeared by a
/// Gaussian centre-of-mass spread.
pub fn effective_dispersion(lambda0: f64, lambda_prime: f64) -> Result<f64> {
    ensure_positive("lambda0", lambda0)?;
    ensure_positive("lambda_prime", lambda_prime)?;
    Ok(lambda0.hypot(lambda_prime))
}
