//! Ground-state energy of the massless scalar field dressing a mass
//! distribution.
//!
//! Two routes are provided. [`e0_closed_gaussian`] is the closed form
//! `−4πG M²/λ` used by everything downstream. [`e0_quadrature`] evaluates the
//! momentum-space integral `−4πG ∫ d³k |ρ̃(k)|² / k²` directly for any
//! profile. For a Gaussian the two differ by the constant factor
//! `1 / (4π^{3/2})`; [`GAUSSIAN_QUADRATURE_RATIO`] records it and
//! [`e0_discrepancy`] measures it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::numeric::quadrature::{integrate, integrate_to_infinity, integrate_with_breakpoints, Tolerance};
use crate::profiles::{sinc, DensityProfile, Shape, TWO_PI_POW_3_2};
use crate::units::Constants;

/// `1 / (4 π^{3/2})`: quadrature over closed form for Gaussian profiles.
pub const GAUSSIAN_QUADRATURE_RATIO: f64 = 0.044_896_780_531_291_64;

/// `√(-ln 1e-14)`: Gaussian tails beyond this many inverse widths are dropped.
const GAUSSIAN_CUTOFF: f64 = 5.677_692_427_555_11;

const ENERGY_TOL: f64 = 1e-10;
const PAIR_TOL: f64 = 1e-13;

/// Closed-form pion ground-state energy `−4πG M²/λ` in erg for a Gaussian
/// density of mass `mass` (g) and dispersion `lambda` (cm).
pub fn e0_closed_gaussian(consts: &Constants, mass: f64, lambda: f64) -> Result<f64> {
    ensure_positive("mass", mass)?;
    ensure_positive("lambda", lambda)?;
    Ok(-4.0 * PI * consts.g * mass * mass / lambda)
}

/// Momentum-space ground-state energy
/// `−4πG · 4π ∫₀^∞ |ρ̃(k)|² dk` in erg.
pub fn e0_quadrature(consts: &Constants, profile: &DensityProfile) -> Result<f64> {
    let integral = amplitude_norm(profile)?;
    Ok(-16.0 * PI * PI * consts.g * integral)
}

/// `∫₀^∞ |ρ̃(k)|² dk`.
fn amplitude_norm(profile: &DensityProfile) -> Result<f64> {
    let scale = profile.length_scale();
    let tol = Tolerance::relative(ENERGY_TOL);
    match profile.shape() {
        Shape::Gaussian { dispersion } => {
            let peak = profile.total_mass() / TWO_PI_POW_3_2;
            let f = |k: f64| peak * peak * (-(dispersion * k).powi(2)).exp();
            Ok(integrate(f, 0.0, GAUSSIAN_CUTOFF / dispersion, tol)?.value)
        }
        _ => {
            // evaluation errors inside the integrand surface as NaN, caught below
            let f = |k: f64| match profile.amplitude_unchecked(k) {
                Ok(a) => a * a,
                Err(_) => f64::NAN,
            };
            // split so the oscillating tail starts beyond the main lobe
            let split = 8.0 / scale;
            let head = integrate(f, 0.0, split, tol)?;
            let tail = integrate_to_infinity(f, split, 1.0 / scale, tol)?;
            let total = head.value + tail.value;
            if total.is_finite() {
                Ok(total)
            } else {
                Err(Error::NonConvergence {
                    what: "ground-state energy quadrature",
                    residual: head.error + tail.error,
                })
            }
        }
    }
}

/// Closed form versus quadrature for one Gaussian profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct E0Comparison {
    pub lambda_cm: f64,
    pub mass_g: f64,
    pub closed_form_erg: f64,
    pub quadrature_erg: f64,
    /// quadrature / closed form
    pub ratio: f64,
    pub expected_ratio: f64,
}

pub fn e0_discrepancy(consts: &Constants, mass: f64, lambda: f64) -> Result<E0Comparison> {
    let closed = e0_closed_gaussian(consts, mass, lambda)?;
    let quad = e0_quadrature(consts, &DensityProfile::gaussian(lambda, mass)?)?;
    Ok(E0Comparison {
        lambda_cm: lambda,
        mass_g: mass,
        closed_form_erg: closed,
        quadrature_erg: quad,
        ratio: quad / closed,
        expected_ratio: GAUSSIAN_QUADRATURE_RATIO,
    })
}

/// Magnitude of the coherent displacement of mode `k`:
/// `√(4πG/(cħ)) · ρ̃(k) / k^{3/2}`. Diverges as `k → 0`, so `k` must be > 0.
pub fn displacement_amplitude(consts: &Constants, profile: &DensityProfile, k: f64) -> Result<f64> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::domain("k", format!("must be finite and > 0, got {k}")));
    }
    let coupling = (4.0 * PI * consts.g / (consts.c * consts.hbar)).sqrt();
    let amp = profile.fourier_amplitude(k)?.value;
    Ok(coupling * amp / k.powf(1.5))
}

/// Two Gaussian-regularized point masses a distance `d` apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSourceSpec {
    pub m1: f64,
    pub m2: f64,
    /// width of the regularizing Gaussian, cm
    pub sigma: f64,
    /// separation, cm
    pub d: f64,
}

impl TwoSourceSpec {
    pub fn new(m1: f64, m2: f64, sigma: f64, d: f64) -> Result<Self> {
        let spec = TwoSourceSpec { m1, m2, sigma, d };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("m1", self.m1)?;
        ensure_positive("m2", self.m2)?;
        ensure_positive("sigma", self.sigma)?;
        if !(self.d.is_finite() && self.d >= 0.0) {
            return Err(Error::domain(
                "d",
                format!("must be finite and >= 0, got {}", self.d),
            ));
        }
        Ok(())
    }

    pub fn at(&self, d: f64) -> Self {
        TwoSourceSpec { d, ..*self }
    }

    fn kmax(&self) -> f64 {
        GAUSSIAN_CUTOFF / self.sigma
    }

    // one interval per half-period of sinc(kd), plus a few for the envelope
    fn breakpoints(&self) -> Vec<f64> {
        let kmax = self.kmax();
        let pieces = ((kmax * self.d / PI).ceil() as usize).clamp(8, 20_000);
        (0..=pieces).map(|i| kmax * i as f64 / pieces as f64).collect()
    }

    // ρ̃₁(k) ρ̃₂(k)
    fn amplitude_product(&self, k: f64) -> f64 {
        let norm = self.m1 * self.m2 / (TWO_PI_POW_3_2 * TWO_PI_POW_3_2);
        norm * (-(self.sigma * k).powi(2)).exp()
    }

    fn integrate_kernel<K: Fn(f64) -> f64>(&self, kernel: K) -> Result<f64> {
        let f = |k: f64| self.amplitude_product(k) * kernel(k);
        let bps = self.breakpoints();
        let max = 4 * bps.len() + 1000;
        Ok(integrate_with_breakpoints(f, &bps, Tolerance::relative(PAIR_TOL), max)?.value)
    }
}

/// Cross term of the ground-state energy for two sources,
/// `−8πG · 4π ∫₀^∞ ρ̃₁ ρ̃₂ sinc(kd) dk`, in erg.
pub fn two_source_interaction(consts: &Constants, spec: &TwoSourceSpec) -> Result<f64> {
    spec.validate()?;
    let d = spec.d;
    let integral = spec.integrate_kernel(|k| sinc(k * d))?;
    Ok(-32.0 * PI * PI * consts.g * integral)
}

/// `−dE_int/dd` in dyn by central difference with step `d·10⁻⁴`.
/// Negative values pull the sources together.
pub fn two_source_force(consts: &Constants, spec: &TwoSourceSpec) -> Result<f64> {
    spec.validate()?;
    ensure_positive("d", spec.d)?;
    let h = spec.d * 1e-4;
    let plus = two_source_interaction(consts, &spec.at(spec.d + h))?;
    let minus = two_source_interaction(consts, &spec.at(spec.d - h))?;
    Ok(-(plus - minus) / (2.0 * h))
}

/// `−dE_int/dd` with the derivative taken under the integral sign.
pub fn two_source_force_analytic(consts: &Constants, spec: &TwoSourceSpec) -> Result<f64> {
    spec.validate()?;
    ensure_positive("d", spec.d)?;
    let d = spec.d;
    // d/dd sinc(kd) = (cos(kd) − sinc(kd)) / d
    let integral = spec.integrate_kernel(|k| ((k * d).cos() - sinc(k * d)) / d)?;
    Ok(32.0 * PI * PI * consts.g * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::constants;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn closed_form_examples() {
        let c = constants();
        let e = e0_closed_gaussian(&c, 1.0, 1.0).unwrap();
        assert!(rel(e, -8.3866e-7) < 1e-4);
        assert_eq!(e, -4.0 * PI * c.g);
        assert!(rel(e0_closed_gaussian(&c, 1.0, 2.0).unwrap(), e / 2.0) < 1e-15);
        assert!(rel(e0_closed_gaussian(&c, 2.0, 1.0).unwrap(), 4.0 * e) < 1e-15);
        assert!(e0_closed_gaussian(&c, 0.0, 1.0).is_err());
        assert!(e0_closed_gaussian(&c, 1.0, -1.0).is_err());
    }

    #[test]
    fn ratio_constant_value() {
        assert!(rel(GAUSSIAN_QUADRATURE_RATIO, 1.0 / (4.0 * PI.powf(1.5))) < 1e-15);
        assert!(rel(GAUSSIAN_CUTOFF, (1e-14f64).ln().abs().sqrt()) < 1e-15);
    }

    #[test]
    fn gaussian_quadrature_against_erf_oracle() {
        // ∫₀^∞ e^{-λ²k²} dk = √π / (2λ)  ⇒  E₀ = −G M² / (√π λ)
        let c = constants();
        for (m, l) in [(1.0, 1.0), (3e-5, 2e-3), (0.7, 40.0)] {
            let q = e0_quadrature(&c, &DensityProfile::gaussian(l, m).unwrap()).unwrap();
            let oracle = -c.g * m * m / (PI.sqrt() * l);
            assert!(rel(q, oracle) < 1e-10, "{q} vs {oracle}");
        }
        let cmp = e0_discrepancy(&c, 1.0, 1.0).unwrap();
        assert!((cmp.ratio - 0.0449).abs() < 1e-4);
    }

    #[test]
    fn quadrature_scales_inversely_with_size() {
        let c = constants();
        for p in [
            DensityProfile::gaussian(0.4, 2.0).unwrap(),
            DensityProfile::uniform_ball(0.4, 2.0).unwrap(),
            DensityProfile::exponential(0.4, 2.0).unwrap(),
        ] {
            let e1 = e0_quadrature(&c, &p).unwrap();
            let e3 = e0_quadrature(&c, &p.scaled(3.0).unwrap()).unwrap();
            assert!(rel(e3, e1 / 3.0) < 1e-8, "{:?}", p.shape());
        }
    }

    #[test]
    fn uniform_ball_analytic() {
        // ∫₀^∞ j₁(x)²/x² dx = π/15  ⇒  E₀ = −6 G M² / (5R)
        let c = constants();
        let q = e0_quadrature(&c, &DensityProfile::uniform_ball(2.0, 3.0).unwrap()).unwrap();
        assert!(rel(q, -6.0 * c.g * 9.0 / 10.0) < 1e-8, "{q}");
    }

    #[test]
    fn exponential_analytic() {
        // ∫₀^∞ (1+a²k²)^{-4} dk = 5π/(32a)  ⇒  E₀ = −5 G M² / (16 a)
        let c = constants();
        let q = e0_quadrature(&c, &DensityProfile::exponential(0.5, 2.0).unwrap()).unwrap();
        assert!(rel(q, -5.0 * c.g * 4.0 / 8.0) < 1e-8, "{q}");
    }

    #[test]
    fn displacement_examples() {
        let c = constants();
        let p = DensityProfile::gaussian(1.0, 1.0).unwrap();
        let v = displacement_amplitude(&c, &p, 1.0).unwrap();
        // √(4πG/(cħ)) e^{-1/2} / (2π)^{3/2}, evaluated with the fixed constants
        assert!(rel(v, 6_272.324_738_975_009) < 1e-12, "{v}");
        let p2 = DensityProfile::gaussian(1.0, 2.0).unwrap();
        assert!(rel(displacement_amplitude(&c, &p2, 1.0).unwrap(), 2.0 * v) < 1e-15);
        // flat region: amplitude ≈ constant, k^{-3/2} dominates
        let small = DensityProfile::gaussian(1e-9, 1.0).unwrap();
        let a = displacement_amplitude(&c, &small, 1.0).unwrap();
        let b = displacement_amplitude(&c, &small, 2.0).unwrap();
        assert!(rel(b, a / 2f64.powf(1.5)) < 1e-12);
        assert!(displacement_amplitude(&c, &p, 0.0).is_err());
    }

    #[test]
    fn interaction_matches_erf_profile() {
        // independent closed form: −2 G m₁ m₂ erf(d/2σ) / d
        let c = constants();
        let s = TwoSourceSpec::new(2.0, 3.0, 0.1, 0.0).unwrap();
        for d in [0.05, 0.2, 1.0, 3.7, 10.0] {
            let e = two_source_interaction(&c, &s.at(d)).unwrap();
            let oracle = -2.0 * c.g * 6.0 * libm::erf(d / 0.2) / d;
            assert!(rel(e, oracle) < 1e-10, "d={d}: {e} vs {oracle}");
        }
    }

    #[test]
    fn interaction_at_contact_is_finite() {
        let c = constants();
        let s = TwoSourceSpec::new(1.0, 1.0, 0.5, 0.0).unwrap();
        let e0 = two_source_interaction(&c, &s).unwrap();
        // sinc ≡ 1 at d = 0
        let direct = integrate(
            |k: f64| (-(0.5 * k).powi(2)).exp() / (TWO_PI_POW_3_2 * TWO_PI_POW_3_2),
            0.0,
            60.0,
            Tolerance::relative(1e-13),
        )
        .unwrap()
        .value;
        assert!(rel(e0, -32.0 * PI * PI * c.g * direct) < 1e-10);
        assert!(e0.is_finite() && e0 < 0.0);
    }

    #[test]
    fn interaction_bilinear_and_decaying() {
        let c = constants();
        let s = TwoSourceSpec::new(1.0, 1.0, 1.0, 30.0).unwrap();
        let e = two_source_interaction(&c, &s).unwrap();
        let doubled = TwoSourceSpec { m1: 2.0, ..s };
        assert!(rel(two_source_interaction(&c, &doubled).unwrap(), 2.0 * e) < 1e-14);
        let far = two_source_interaction(&c, &s.at(3000.0)).unwrap();
        assert!(far.abs() < e.abs() / 90.0);
        let e2 = two_source_interaction(&c, &s.at(60.0)).unwrap();
        assert!((e2 / e - 0.5).abs() < 0.005);
    }

    #[test]
    fn force_attractive_and_symmetric() {
        let c = constants();
        let s = TwoSourceSpec::new(1.0, 5.0, 1.0, 12.0).unwrap();
        let f = two_source_force(&c, &s).unwrap();
        assert!(f < 0.0);
        let swapped = TwoSourceSpec {
            m1: 5.0,
            m2: 1.0,
            ..s
        };
        assert!(rel(two_source_force(&c, &swapped).unwrap(), f) < 1e-12);
        let fa = two_source_force_analytic(&c, &s).unwrap();
        assert!(rel(fa, f) < 1e-6, "{fa} vs {f}");
        assert!(two_source_force(&c, &s.at(0.0)).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(TwoSourceSpec::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(TwoSourceSpec::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(TwoSourceSpec::new(1.0, 1.0, 1.0, -1.0).is_err());
    }
}
