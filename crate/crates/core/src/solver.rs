//! Total energy of a lump dressed by its field, and the localization length
//! at which it is stationary.
//!
//! With `x = λ′/λ₀` the stationarity condition reduces to
//! `(1 + x²)³ = K x⁸`, where `K ∝ G² M⁶ λ₀² / ħ⁴` spans hundreds of decades.
//! `K` is therefore carried as its logarithm and the root is found in
//! `u = ln x`, where `3 ln(1 + e^{2u}) − 8u − ln K` is strictly decreasing.
//!
//! Two coefficients for `K` are supported, see [`StationarityMode`].

use std::f64::consts::{LN_10, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::gravenergy::e0_closed_gaussian;
use crate::numeric::golden::golden_section;
use crate::numeric::roots::newton_bisect;
use crate::profiles::effective_dispersion;
use crate::units::Constants;

/// Log-form residual accepted by the root finder.
pub const ROOT_TOL: f64 = 1e-12;
/// Relative width of the final golden-section bracket on λ′.
pub const MINIMIZE_TOL: f64 = 1e-10;
/// Relative offset used by the curvature check.
pub const CURVATURE_STEP: f64 = 1e-3;

/// Which coefficient multiplies `π² G² M⁶ λ′⁸ / ħ⁴` in the stationarity
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StationarityMode {
    /// `64/9`, the reference coefficient. Reproduces the published power laws.
    Paper,
    /// `256/9`, obtained by differentiating the total energy. Agrees with
    /// direct minimization of [`total_energy`].
    Derived,
}

impl StationarityMode {
    pub const ALL: [StationarityMode; 2] = [StationarityMode::Paper, StationarityMode::Derived];

    pub fn coefficient(self) -> f64 {
        match self {
            StationarityMode::Paper => 64.0 / 9.0,
            StationarityMode::Derived => 256.0 / 9.0,
        }
    }

    /// Coefficient `a` of the energy `−aG M²/λ + 3ħ²/(8Mλ′²)` whose
    /// stationary point is this mode's root.
    fn potential_coefficient(self) -> f64 {
        match self {
            StationarityMode::Paper => 2.0 * PI,
            StationarityMode::Derived => 4.0 * PI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StationarityMode::Paper => "paper",
            StationarityMode::Derived => "derived",
        }
    }
}

impl fmt::Display for StationarityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StationarityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(StationarityMode::Paper),
            "derived" => Ok(StationarityMode::Derived),
            other => Err(Error::domain(
                "mode",
                format!("expected paper or derived, got {other:?}"),
            )),
        }
    }
}

/// A lump of `mu` proton masses whose inner density is a Gaussian of
/// dispersion `lambda0` (cm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LumpSpec {
    pub mu: f64,
    pub lambda0: f64,
    pub mode: StationarityMode,
}

impl LumpSpec {
    pub fn new(mu: f64, lambda0: f64, mode: StationarityMode) -> Result<Self> {
        ensure_positive("mu", mu)?;
        ensure_positive("lambda0", lambda0)?;
        Ok(LumpSpec { mu, lambda0, mode })
    }

    /// Inner dispersion derived from the reference density in `consts`.
    pub fn condensed(consts: &Constants, mu: f64, mode: StationarityMode) -> Result<Self> {
        Self::new(mu, consts.lambda0_from_mu(mu)?, mode)
    }

    pub fn with_mode(self, mode: StationarityMode) -> Self {
        LumpSpec { mode, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("mu", self.mu)?;
        ensure_positive("lambda0", self.lambda0)?;
        Ok(())
    }
}

/// Energy terms in erg at one value of λ′.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub e0: f64,
    pub e_kin: f64,
    pub e_total: f64,
}

/// The dimensionless stationarity parameter, stored as `ln K`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct DimensionlessK {
    ln: f64,
}

impl DimensionlessK {
    pub fn from_ln(ln: f64) -> Result<Self> {
        if ln.is_finite() {
            Ok(DimensionlessK { ln })
        } else {
            Err(Error::domain("K", format!("ln K must be finite, got {ln}")))
        }
    }

    pub fn from_value(k: f64) -> Result<Self> {
        ensure_positive("K", k)?;
        Ok(DimensionlessK { ln: k.ln() })
    }

    pub fn from_log10(log10: f64) -> Result<Self> {
        Self::from_ln(log10 * LN_10)
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn log10(&self) -> f64 {
        self.ln / LN_10
    }

    /// `K` itself; saturates to 0 or ∞ outside the f64 range.
    pub fn value(&self) -> f64 {
        self.ln.exp()
    }
}

/// Solution of the stationarity condition for one lump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryResult {
    pub mu: f64,
    pub lambda0: f64,
    pub lambda_prime: f64,
    pub x: f64,
    pub k_log10: f64,
    /// `|3 ln(1+x²) − 8 ln x − ln K|` at the returned root.
    pub residual: f64,
    pub curvature_positive: bool,
    pub iterations: usize,
    pub mode: StationarityMode,
}

/// Root of `(1 + x²)³ = K x⁸`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XSolution {
    pub x: f64,
    pub ln_x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// `1 / (1 + e^{-z})`
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Log-form stationarity defect at `u = ln x` and its derivative in `u`.
pub fn log_residual(ln_k: f64, u: f64) -> (f64, f64) {
    let value = 3.0 * softplus(2.0 * u) - 8.0 * u - ln_k;
    let slope = 6.0 * logistic(2.0 * u) - 8.0;
    (value, slope)
}

/// Kinetic energy `3ħ²/(8Mλ′²)` of a Gaussian centre-of-mass
/// packet, in erg.
pub fn kinetic_energy(consts: &Constants, mass: f64, lambda_prime: f64) -> Result<f64> {
    ensure_positive("mass", mass)?;
    ensure_positive("lambda_prime", lambda_prime)?;
    let per_mass = 3.0 * consts.hbar * consts.hbar / (8.0 * mass);
    Ok(per_mass / lambda_prime / lambda_prime)
}

/// Ground-state plus kinetic energy at centre-of-mass spread `lambda_prime`.
pub fn total_energy(consts: &Constants, spec: &LumpSpec, lambda_prime: f64) -> Result<EnergyBreakdown> {
    spec.validate()?;
    ensure_positive("lambda_prime", lambda_prime)?;
    let mass = consts.mass_from_mu(spec.mu)?;
    let lambda = effective_dispersion(spec.lambda0, lambda_prime)?;
    let e0 = e0_closed_gaussian(consts, mass, lambda)?;
    let e_kin = kinetic_energy(consts, mass, lambda_prime)?;
    Ok(EnergyBreakdown {
        e0,
        e_kin,
        e_total: e0 + e_kin,
    })
}

pub fn dimensionless_k(consts: &Constants, spec: &LumpSpec) -> Result<DimensionlessK> {
    spec.validate()?;
    let ln_mass = spec.mu.ln() + consts.m_p.ln();
    let ln = spec.mode.coefficient().ln()
        + 2.0 * PI.ln()
        + 2.0 * consts.g.ln()
        + 6.0 * ln_mass
        + 2.0 * spec.lambda0.ln()
        - 4.0 * consts.hbar.ln();
    DimensionlessK::from_ln(ln)
}

/// Unique positive root of `(1 + x²)³ = K x⁸`.
pub fn solve_x(k: DimensionlessK) -> Result<XSolution> {
    let ln_k = k.ln();
    let f = |u: f64| log_residual(ln_k, u);

    // asymptotic roots for K → 0 and K → ∞
    let guesses = [-0.5 * ln_k, -0.125 * ln_k];
    let mut lo = guesses[0].min(guesses[1]) - 1.0;
    let mut hi = guesses[0].max(guesses[1]) + 1.0;
    let mut step = 1.0;
    let mut expansions = 0;
    while f(lo).0 <= 0.0 || f(hi).0 >= 0.0 {
        if expansions > 64 {
            return Err(Error::NonConvergence {
                what: "root bracket",
                residual: f(lo).0.abs().min(f(hi).0.abs()),
            });
        }
        step *= 2.0;
        if f(lo).0 <= 0.0 {
            lo -= step;
        }
        if f(hi).0 >= 0.0 {
            hi += step;
        }
        expansions += 1;
    }

    let root = newton_bisect(f, lo, hi, ROOT_TOL, 500)?;
    Ok(XSolution {
        x: root.x.exp(),
        ln_x: root.x,
        residual: root.residual,
        iterations: root.iterations,
    })
}

/// Dimensionless energy `P(x) + r x⁻²` (shifted so `P(0) = 0`), evaluated as
/// differences between two points so that nothing cancels.
///
/// `P(x) = 1 − 1/√(1+x²)` is the ground-state term in units of `aGM²/λ₀`;
/// `r = 3ħ²/(8aGM³λ₀)` weighs the kinetic term.
#[derive(Debug, Clone, Copy)]
struct ReducedEnergy {
    r: f64,
}

impl ReducedEnergy {
    fn new(consts: &Constants, spec: &LumpSpec, mode: StationarityMode) -> Result<Self> {
        let mass = consts.mass_from_mu(spec.mu)?;
        let a = mode.potential_coefficient();
        // assembled in logs: M³ alone underflows for small mu
        let ln_r = (3.0f64 / 8.0).ln() + 2.0 * consts.hbar.ln()
            - a.ln()
            - consts.g.ln()
            - 3.0 * mass.ln()
            - spec.lambda0.ln();
        Ok(ReducedEnergy { r: ln_r.exp() })
    }

    /// `E(v) − E(v_ref)` in reduced units, `v = ln x`.
    fn difference(&self, v: f64, v_ref: f64) -> f64 {
        let delta = v - v_ref;
        let (xa, xb) = (v.exp(), v_ref.exp());
        let sa = xa.hypot(1.0);
        let sb = xb.hypot(1.0);
        // 1/s_b − 1/s_a = (x_a² − x_b²) / (s_a s_b (s_a + s_b))
        let potential = (xb / sa) * (xb / sb) * (2.0 * delta).exp_m1() / (sa + sb);
        let kinetic = self.r * (-2.0 * v_ref).exp() * (-2.0 * delta).exp_m1();
        potential + kinetic
    }
}

/// `E_T(λ′_a) − E_T(λ′_b)` in erg, computed without cancelling the large
/// constant part of the ground-state energy.
pub fn energy_difference(consts: &Constants, spec: &LumpSpec, lp_a: f64, lp_b: f64) -> Result<f64> {
    spec.validate()?;
    ensure_positive("lambda_prime", lp_a)?;
    ensure_positive("lambda_prime", lp_b)?;
    let reduced = ReducedEnergy::new(consts, spec, StationarityMode::Derived)?;
    let mass = consts.mass_from_mu(spec.mu)?;
    let unit = 4.0 * PI * consts.g * mass * mass / spec.lambda0;
    let (va, vb) = ((lp_a / spec.lambda0).ln(), (lp_b / spec.lambda0).ln());
    Ok(unit * reduced.difference(va, vb))
}

/// Solves for the stationary localization length of `spec`.
pub fn solve_localization(consts: &Constants, spec: &LumpSpec) -> Result<StationaryResult> {
    let k = dimensionless_k(consts, spec)?;
    let sol = solve_x(k)?;

    // energy whose stationary point is this mode's root
    let reduced = ReducedEnergy::new(consts, spec, spec.mode)?;
    let up = reduced.difference(sol.ln_x + CURVATURE_STEP.ln_1p(), sol.ln_x);
    let down = reduced.difference(sol.ln_x + (-CURVATURE_STEP).ln_1p(), sol.ln_x);

    Ok(StationaryResult {
        mu: spec.mu,
        lambda0: spec.lambda0,
        lambda_prime: sol.x * spec.lambda0,
        x: sol.x,
        k_log10: k.log10(),
        residual: sol.residual,
        curvature_positive: up > 0.0 && down > 0.0,
        iterations: sol.iterations,
        mode: spec.mode,
    })
}

/// Localization length minimizing [`total_energy`], found by golden-section
/// search over `ln λ′` without reference to the stationarity condition.
pub fn minimize_energy(consts: &Constants, spec: &LumpSpec) -> Result<f64> {
    spec.validate()?;
    let reduced = ReducedEnergy::new(consts, spec, StationarityMode::Derived)?;

    // coarse scan over x ∈ [1e-60, 1e100]: the minimum sits where the
    // energy step between neighbouring grid points turns positive
    let (v_lo, v_hi, step) = (-60.0 * LN_10, 100.0 * LN_10, 0.25);
    let n = ((v_hi - v_lo) / step).ceil() as usize;
    let grid = |i: usize| v_lo + step * i as f64;
    let turn = (0..n).find(|&i| reduced.difference(grid(i + 1), grid(i)) > 0.0);
    let best = match turn {
        Some(i) if i > 0 => i,
        _ => {
            return Err(Error::NonConvergence {
                what: "energy minimum bracket",
                residual: reduced.difference(grid(n), grid(n - 1)),
            })
        }
    };

    // each stage re-centres the reference point, which lowers the
    // rounding floor of the differences
    let mut centre = grid(best);
    let mut half_width = step;
    for xtol in [1e-7, 1e-10, 1e-12] {
        let reference = centre;
        let found = golden_section(
            |v| reduced.difference(v, reference),
            centre - half_width,
            centre + half_width,
            xtol,
            500,
        )?;
        centre = found.x;
        half_width = 10.0 * xtol;
    }
    Ok(centre.exp() * spec.lambda0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::constants;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn paper(mu: f64) -> LumpSpec {
        LumpSpec::condensed(&constants(), mu, StationarityMode::Paper).unwrap()
    }

    #[test]
    fn kinetic_examples() {
        let c = constants();
        let e = kinetic_energy(&c, 1.0, 1.0).unwrap();
        assert!(rel(e, 4.170_679_35e-55) < 1e-9);
        assert!(rel(kinetic_energy(&c, 1.0, 2.0).unwrap(), e / 4.0) < 1e-15);
        assert!(kinetic_energy(&c, 0.0, 1.0).is_err());
        assert!(kinetic_energy(&c, 1.0, 0.0).is_err());
    }

    #[test]
    fn total_energy_regression() {
        let c = constants();
        let spec = LumpSpec::new(1e24, 1.0, StationarityMode::Paper).unwrap();
        let e = total_energy(&c, &spec, 1.0).unwrap();
        // −4πG (1.6726)² / √2 and 3ħ² / (8 · 1.6726)
        assert!(rel(e.e0, -1.659_072_074_751_281e-6) < 1e-12, "{}", e.e0);
        assert!(rel(e.e_kin, 2.493_530_640_918_331e-55) < 1e-12, "{}", e.e_kin);
        assert_eq!(e.e_total, e.e0 + e.e_kin);
    }

    #[test]
    fn total_energy_limits() {
        let c = constants();
        let spec = paper(1.0);
        let small = total_energy(&c, &spec, 1e-15).unwrap();
        assert!(small.e_total > 0.0);
        let smaller = total_energy(&c, &spec, 1e-16).unwrap();
        assert!(smaller.e_total > small.e_total);

        let spec = paper(1e12);
        let lp = solve_localization(&c, &spec.with_mode(StationarityMode::Derived))
            .unwrap()
            .lambda_prime;
        let mut prev = f64::INFINITY;
        for i in 1..60 {
            let e = total_energy(&c, &spec, lp * 10f64.powf(0.5 * i as f64)).unwrap();
            assert!(e.e0 <= 0.0 && e.e_kin >= 0.0);
            assert!(e.e_total.abs() < prev);
            prev = e.e_total.abs();
        }
        for lp in [1e-15, 1.0, 1e30] {
            let e = total_energy(&c, &spec, lp).unwrap();
            assert!(e.e_total.is_finite());
        }
    }

    #[test]
    fn k_examples() {
        let c = constants();
        let k = dimensionless_k(&c, &LumpSpec::new(1.0, 1e-8, StationarityMode::Paper).unwrap()).unwrap();
        // 64/9 π² G² m_p⁶ 10⁻¹⁶ / ħ⁴ at 40 digits: 5.533642539353810e-64
        assert!(rel(k.value(), 5.533_642_539_353_81e-64) < 1e-12, "{}", k.value());
        let d = dimensionless_k(&c, &LumpSpec::new(1.0, 1e-8, StationarityMode::Derived).unwrap()).unwrap();
        assert!(rel(d.value(), 4.0 * k.value()) < 1e-12);
        let k10 = dimensionless_k(&c, &LumpSpec::new(10.0, 1e-8, StationarityMode::Paper).unwrap()).unwrap();
        assert!((k10.log10() - k.log10() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn solve_x_examples() {
        let s = solve_x(DimensionlessK::from_value(8.0).unwrap()).unwrap();
        assert!((s.x - 1.0).abs() < 1e-12);
        let s = solve_x(DimensionlessK::from_log10(-64.0).unwrap()).unwrap();
        assert!(rel(s.x, 1e32) < 1e-6);
        let s = solve_x(DimensionlessK::from_log10(64.0).unwrap()).unwrap();
        assert!(rel(s.x, 1e-8) < 1e-6);
        for log10 in [-200.0, 200.0] {
            let s = solve_x(DimensionlessK::from_log10(log10).unwrap()).unwrap();
            assert!(s.residual < ROOT_TOL);
        }
    }

    #[test]
    fn paper_mode_reference_points() {
        let c = constants();
        let r = solve_localization(&c, &LumpSpec::new(1.0, 1e-8, StationarityMode::Paper).unwrap()).unwrap();
        assert!(rel(r.lambda_prime, 4.23e23) < 0.01);
        assert!(rel(r.lambda_prime, 4.251_032_736e23) < 1e-9);
        assert!(r.curvature_positive);
        assert!(r.residual < 1e-10);
        assert_eq!(r.lambda_prime, r.x * r.lambda0);

        let r = solve_localization(&c, &LumpSpec::new(1e12, 1e-4, StationarityMode::Paper).unwrap()).unwrap();
        assert!(rel(r.lambda_prime, 8.08e-7) < 0.01);
        assert!(r.curvature_positive);
    }

    #[test]
    fn minimizer_matches_derived_root() {
        let c = constants();
        for mu in [1e-3, 1.0, 1e9, 1e10, 1e12, 1e20, 1e30] {
            let spec = LumpSpec::condensed(&c, mu, StationarityMode::Derived).unwrap();
            let root = solve_localization(&c, &spec).unwrap().lambda_prime;
            let min = minimize_energy(&c, &spec).unwrap();
            assert!(rel(min, root) < 1e-8, "mu={mu}: {min} vs {root}");
        }
        let min = minimize_energy(&c, &paper(1.0)).unwrap();
        assert!(rel(min, 2.13e23) < 0.01);
        let spec = paper(1.0);
        let e = |lp| total_energy(&c, &spec, lp).unwrap().e_total;
        assert!(e(min) < e(0.9 * min) && e(min) < e(1.1 * min));
    }

    #[test]
    fn energy_difference_agrees_with_direct() {
        let c = constants();
        let spec = paper(1.0);
        let direct =
            total_energy(&c, &spec, 3e23).unwrap().e_total - total_energy(&c, &spec, 1e23).unwrap().e_total;
        let diff = energy_difference(&c, &spec, 3e23, 1e23).unwrap();
        assert!(rel(diff, direct) < 1e-10);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "Paper".parse::<StationarityMode>().unwrap(),
            StationarityMode::Paper
        );
        assert_eq!(
            "derived".parse::<StationarityMode>().unwrap(),
            StationarityMode::Derived
        );
        assert!("both".parse::<StationarityMode>().is_err());
        assert_eq!(
            serde_json::to_string(&StationarityMode::Paper).unwrap(),
            "\"paper\""
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(LumpSpec::new(0.0, 1.0, StationarityMode::Paper).is_err());
        assert!(LumpSpec::new(1.0, -1.0, StationarityMode::Paper).is_err());
        assert!(DimensionlessK::from_value(0.0).is_err());
        assert!(DimensionlessK::from_ln(f64::INFINITY).is_err());
    }

    proptest::proptest! {
        #[test]
        fn root_round_trips(log10_k in -200.0f64..200.0) {
            let k = DimensionlessK::from_log10(log10_k).unwrap();
            let s = solve_x(k).unwrap();
            let lhs = 3.0 * (s.x * s.x).ln_1p();
            let rhs = k.ln() + 8.0 * s.ln_x;
            proptest::prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
        }
    }
}
