//! Asymptotic power laws, regime classification and the location and width
//! of the quantum-to-classical transition.
//!
//! For a lump at fixed density the stationary length follows two laws:
//! `λ′ = 3ħ²/(8πG M³)` while `λ′ ≫ λ₀` and `λ′ = λ₀ K^{-1/8} ∝ μ^{-1/2}`
//! once `λ′ ≪ λ₀`. The crossover mass where they meet scales as
//! `ρ_ref^{1/10}`.

use std::f64::consts::{LN_10, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::numeric::roots::bisect;
use crate::solver::{dimensionless_k, solve_localization, LumpSpec, StationarityMode, StationaryResult};
use crate::units::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegimeLabel {
    Quantum,
    Transition,
    Classical,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::Quantum => "Quantum",
            RegimeLabel::Transition => "Transition",
            RegimeLabel::Classical => "Classical",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeClass {
    pub label: RegimeLabel,
    pub x_ratio: f64,
}

/// Bounds on `x = λ′/λ₀`: quantum strictly above `quantum_above`,
/// classical strictly below `classical_below`, transition in between
/// (boundaries included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub quantum_above: f64,
    pub classical_below: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            quantum_above: 10.0,
            classical_below: 0.5,
        }
    }
}

impl RegimeThresholds {
    pub fn classify_ratio(&self, x: f64) -> RegimeLabel {
        if x > self.quantum_above {
            RegimeLabel::Quantum
        } else if x < self.classical_below {
            RegimeLabel::Classical
        } else {
            RegimeLabel::Transition
        }
    }
}

pub fn classify(result: &StationaryResult) -> RegimeClass {
    classify_with(result, &RegimeThresholds::default())
}

pub fn classify_with(result: &StationaryResult, thresholds: &RegimeThresholds) -> RegimeClass {
    RegimeClass {
        label: thresholds.classify_ratio(result.x),
        x_ratio: result.x,
    }
}

fn mode_factor_small(mode: StationarityMode) -> f64 {
    // K^{-1/2}: derived K is 4× the printed one
    match mode {
        StationarityMode::Paper => 1.0,
        StationarityMode::Derived => 0.5,
    }
}

/// Small-mass law `λ′ = 3ħ²/(8πG M³)` (halved in derived mode). Independent
/// of the inner dispersion.
pub fn asymptote_small(consts: &Constants, mu: f64, mode: StationarityMode) -> Result<f64> {
    ensure_positive("mu", mu)?;
    let ln_mass = mu.ln() + consts.m_p.ln();
    let ln = 3.0f64.ln() + 2.0 * consts.hbar.ln() - (8.0 * PI).ln() - consts.g.ln() - 3.0 * ln_mass;
    Ok(mode_factor_small(mode) * ln.exp())
}

/// Large-mass law `λ′ = λ₀ K^{-1/8}` with `λ₀` from the reference density.
pub fn asymptote_large(consts: &Constants, mu: f64, mode: StationarityMode) -> Result<f64> {
    let spec = LumpSpec::condensed(consts, mu, mode)?;
    let k = dimensionless_k(consts, &spec)?;
    Ok((spec.lambda0.ln() - k.ln() / 8.0).exp())
}

/// Mass (in proton masses) where the two asymptotes intersect.
pub fn crossover_mu(consts: &Constants, mode: StationarityMode) -> Result<f64> {
    // both laws are exact powers of mu: a_s μ^{-3} = a_l μ^{-1/2}
    let a_small = asymptote_small(consts, 1.0, mode)?.ln();
    let a_large = asymptote_large(consts, 1.0, mode)?.ln();
    Ok(((a_small - a_large) / 2.5).exp())
}

/// Masses bounding the transition region and its width in decades.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionWidth {
    /// mass where `x = quantum_above`
    pub mu_quantum: f64,
    /// mass where `x = classical_below`
    pub mu_classical: f64,
    pub decades: f64,
}

/// log₁₀ μ search range for the boundary masses.
const BOUNDARY_RANGE: (f64, f64) = (-3.0, 30.0);

/// Mass at which the full solution has `x = target`, by bisection in log₁₀ μ.
pub fn mu_at_ratio(consts: &Constants, mode: StationarityMode, target: f64) -> Result<f64> {
    ensure_positive("target ratio", target)?;
    let ln_target = target.ln();
    let f = |log10_mu: f64| -> Result<f64> {
        let spec = LumpSpec::condensed(consts, 10f64.powf(log10_mu), mode)?;
        Ok(solve_localization(consts, &spec)?.x.ln() - ln_target)
    };
    let log10_mu = bisect(f, BOUNDARY_RANGE.0, BOUNDARY_RANGE.1, 1e-12, 200)?;
    Ok(10f64.powf(log10_mu))
}

pub fn transition_width(consts: &Constants, mode: StationarityMode) -> Result<TransitionWidth> {
    transition_width_with(consts, mode, &RegimeThresholds::default())
}

pub fn transition_width_with(
    consts: &Constants,
    mode: StationarityMode,
    thresholds: &RegimeThresholds,
) -> Result<TransitionWidth> {
    // also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(thresholds.classical_below < thresholds.quantum_above) {
        return Err(Error::domain(
            "thresholds",
            "classical bound must lie below quantum bound",
        ));
    }
    let mu_quantum = mu_at_ratio(consts, mode, thresholds.quantum_above)?;
    let mu_classical = mu_at_ratio(consts, mode, thresholds.classical_below)?;
    Ok(TransitionWidth {
        mu_quantum,
        mu_classical,
        decades: (mu_classical.ln() - mu_quantum.ln()) / LN_10,
    })
}

/// Full solution beside both asymptotes for one mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticComparison {
    pub mu: f64,
    pub mode: StationarityMode,
    pub lambda_prime_cm: f64,
    pub small_mass_law_cm: f64,
    pub large_mass_law_cm: f64,
    /// full / small-mass law − 1
    pub small_deviation: f64,
    /// full / large-mass law − 1
    pub large_deviation: f64,
    pub regime: RegimeLabel,
}

pub fn compare_asymptotes(
    consts: &Constants,
    mu: f64,
    mode: StationarityMode,
) -> Result<AsymptoticComparison> {
    let spec = LumpSpec::condensed(consts, mu, mode)?;
    let full = solve_localization(consts, &spec)?;
    let small = asymptote_small(consts, mu, mode)?;
    let large = asymptote_large(consts, mu, mode)?;
    Ok(AsymptoticComparison {
        mu,
        mode,
        lambda_prime_cm: full.lambda_prime,
        small_mass_law_cm: small,
        large_mass_law_cm: large,
        small_deviation: full.lambda_prime / small - 1.0,
        large_deviation: full.lambda_prime / large - 1.0,
        regime: classify(&full).label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::constants;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn full(mu: f64, mode: StationarityMode) -> StationaryResult {
        let c = constants();
        solve_localization(&c, &LumpSpec::condensed(&c, mu, mode).unwrap()).unwrap()
    }

    #[test]
    fn small_law_examples() {
        let c = constants();
        let a = asymptote_small(&c, 1.0, StationarityMode::Paper).unwrap();
        assert!(rel(a, 4.23e23) < 0.01);
        assert!(
            rel(
                asymptote_small(&c, 10.0, StationarityMode::Paper).unwrap(),
                a * 1e-3
            ) < 1e-12
        );
        for mu in [1e-3, 1.0, 1e7, 1e20] {
            let p = asymptote_small(&c, mu, StationarityMode::Paper).unwrap();
            let d = asymptote_small(&c, mu, StationarityMode::Derived).unwrap();
            assert!(rel(d / p, 0.5) < 1e-14);
        }
    }

    #[test]
    fn large_law_examples() {
        let c = constants();
        let a = asymptote_large(&c, 1e12, StationarityMode::Paper).unwrap();
        assert!(rel(a, 8.08e-7) < 0.01);
        assert!(rel(a, 0.807_464_824_586_754_5e-6) < 1e-10);
        assert!(
            rel(
                asymptote_large(&c, 1e14, StationarityMode::Paper).unwrap(),
                a / 10.0
            ) < 1e-12
        );
        for mu in [1.0, 1e12, 1e25] {
            let p = asymptote_large(&c, mu, StationarityMode::Paper).unwrap();
            let d = asymptote_large(&c, mu, StationarityMode::Derived).unwrap();
            assert!(rel(d / p, 4f64.powf(-0.125)) < 1e-12);
        }
    }

    #[test]
    fn crossover_examples() {
        let c = constants();
        let mu = crossover_mu(&c, StationarityMode::Paper).unwrap();
        // direct algebra on the two power laws: (4.2510e23 / 0.80746)^{2/5}
        assert!(rel(mu, 3.079_983_109e9) < 1e-8, "{mu}");
        assert!((1e9..=1e10).contains(&mu));
        // μ* ∝ ρ^{1/10}
        let dense = c.with_density(1e27).unwrap();
        let mu_dense = crossover_mu(&dense, StationarityMode::Paper).unwrap();
        assert!(rel(mu_dense / mu, 1000f64.powf(0.1)) < 1e-10);
        // both laws agree at the crossover
        let s = asymptote_small(&c, mu, StationarityMode::Paper).unwrap();
        let l = asymptote_large(&c, mu, StationarityMode::Paper).unwrap();
        assert!(rel(s, l) < 1e-10);
    }

    #[test]
    fn transition_width_examples() {
        let c = constants();
        let w = transition_width(&c, StationarityMode::Paper).unwrap();
        // bisection oracle values from a 40-digit solution of the full condition
        assert!(rel(w.mu_quantum, 1.550_58e9) < 1e-5, "{}", w.mu_quantum);
        assert!(rel(w.mu_classical, 7.823_37e9) < 1e-5, "{}", w.mu_classical);
        assert!((w.decades - 0.702_901).abs() < 1e-5);
        assert!(w.decades < 1.0);
        // doesn't depend on the mode: K shifts by a constant factor
        let d = transition_width(&c, StationarityMode::Derived).unwrap();
        assert!((d.decades - w.decades).abs() < 1e-9);
    }

    #[test]
    fn width_is_unit_free() {
        // rescaling the length unit by s rescales G by s³, ħ by s², ρ_ref by s⁻³
        let c = constants();
        let s: f64 = 10.0;
        let scaled = Constants {
            g: c.g * s.powi(3),
            hbar: c.hbar * s * s,
            c: c.c * s,
            rho_ref: c.rho_ref / s.powi(3),
            ..c
        };
        let a = transition_width(&c, StationarityMode::Paper).unwrap();
        let b = transition_width(&scaled, StationarityMode::Paper).unwrap();
        assert!((a.decades - b.decades).abs() < 1e-9);
        assert!(rel(a.mu_quantum, b.mu_quantum) < 1e-9);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&full(1.0, StationarityMode::Paper)).label,
            RegimeLabel::Quantum
        );
        assert_eq!(
            classify(&full(1e12, StationarityMode::Paper)).label,
            RegimeLabel::Classical
        );
        let t = RegimeThresholds::default();
        assert_eq!(t.classify_ratio(10.0), RegimeLabel::Transition);
        assert_eq!(t.classify_ratio(0.5), RegimeLabel::Transition);
        assert_eq!(t.classify_ratio(10.000_001), RegimeLabel::Quantum);
        assert_eq!(t.classify_ratio(0.499_999), RegimeLabel::Classical);
        // reference bracketing of the thresholds
        assert!(rel(full(1e9, StationarityMode::Paper).x, 42.5456) < 1e-5);
        assert!(rel(full(1e10, StationarityMode::Paper).x, 0.395_817) < 1e-5);
    }

    #[test]
    fn asymptote_validity_bands() {
        let c = constants();
        let m = StationarityMode::Paper;
        for mu in [1.0, 1e4, 1e8] {
            let r = compare_asymptotes(&c, mu, m).unwrap();
            assert!(r.small_deviation.abs() < 1e-2, "mu={mu}");
        }
        for mu in [1e12, 1e16] {
            let r = compare_asymptotes(&c, mu, m).unwrap();
            assert!(r.large_deviation.abs() < 1e-3, "mu={mu}");
        }
        assert!(compare_asymptotes(&c, 1e9, m).unwrap().small_deviation.abs() < 1e-2);
        assert!(compare_asymptotes(&c, 1e10, m).unwrap().large_deviation.abs() < 0.06);
    }
}
