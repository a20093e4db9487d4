//! Mass sweeps and their CSV / JSON serialization.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{ensure_positive, Error, Result};
use crate::format::{round_sig, sci};
use crate::parallel::{try_map, Execution};
use crate::regimes::{classify_with, RegimeLabel, RegimeThresholds};
use crate::solver::{solve_localization, total_energy, LumpSpec, StationarityMode};
use crate::units::Constants;

pub const CSV_HEADER: &str = "mu,lambda0_cm,lambda_prime_cm,x,K_log10,regime,e0_erg,ekin_erg,etotal_erg,mode";

/// Grid and modes for a mass sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub mu_min: f64,
    pub mu_max: f64,
    pub points_per_decade: usize,
    /// One row per mode at every mass, in this order.
    pub modes: Vec<StationarityMode>,
    /// Fixed inner dispersion in cm; `None` derives it from the density.
    pub lambda0: Option<f64>,
    pub thresholds: RegimeThresholds,
}

impl SweepRequest {
    pub fn new(mu_min: f64, mu_max: f64, points_per_decade: usize, mode: StationarityMode) -> Self {
        SweepRequest {
            mu_min,
            mu_max,
            points_per_decade,
            modes: vec![mode],
            lambda0: None,
            thresholds: RegimeThresholds::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("mu-min", self.mu_min)?;
        ensure_positive("mu-max", self.mu_max)?;
        if self.mu_min >= self.mu_max {
            return Err(Error::domain("mu-max", "must exceed mu-min"));
        }
        if self.points_per_decade == 0 {
            return Err(Error::domain("per-decade", "must be >= 1"));
        }
        if self.modes.is_empty() {
            return Err(Error::domain("mode", "at least one mode required"));
        }
        if let Some(l) = self.lambda0 {
            ensure_positive("lambda0", l)?;
        }
        Ok(())
    }

    /// Log-spaced masses including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = (self.mu_min.log10(), self.mu_max.log10());
        let steps = ((hi - lo) * self.points_per_decade as f64 - 1e-9).ceil().max(1.0) as usize;
        (0..=steps)
            .map(|i| {
                if i == 0 {
                    self.mu_min
                } else if i == steps {
                    self.mu_max
                } else {
                    10f64.powf(lo + (hi - lo) * i as f64 / steps as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mu: f64,
    pub lambda0_cm: f64,
    pub lambda_prime_cm: f64,
    pub x: f64,
    #[serde(rename = "K_log10")]
    pub k_log10: f64,
    pub regime: RegimeLabel,
    pub e0_erg: f64,
    pub ekin_erg: f64,
    pub etotal_erg: f64,
    pub mode: StationarityMode,
}

impl SweepRow {
    pub fn compute(
        consts: &Constants,
        mu: f64,
        lambda0: Option<f64>,
        mode: StationarityMode,
        thresholds: &RegimeThresholds,
    ) -> Result<Self> {
        let spec = match lambda0 {
            Some(l) => LumpSpec::new(mu, l, mode)?,
            None => LumpSpec::condensed(consts, mu, mode)?,
        };
        let sol = solve_localization(consts, &spec)?;
        let energy = total_energy(consts, &spec, sol.lambda_prime)?;
        Ok(SweepRow {
            mu,
            lambda0_cm: spec.lambda0,
            lambda_prime_cm: sol.lambda_prime,
            x: sol.x,
            k_log10: sol.k_log10,
            regime: classify_with(&sol, thresholds).label,
            e0_erg: energy.e0,
            ekin_erg: energy.e_kin,
            etotal_erg: energy.e_total,
            mode,
        })
    }

    pub fn csv_line(&self, digits: usize) -> String {
        format!(
            "{},{},{},{},{:.*},{},{},{},{},{}",
            sci(self.mu, digits),
            sci(self.lambda0_cm, digits),
            sci(self.lambda_prime_cm, digits),
            sci(self.x, digits),
            digits,
            self.k_log10,
            self.regime,
            sci(self.e0_erg, digits),
            sci(self.ekin_erg, digits),
            sci(self.etotal_erg, digits),
            self.mode,
        )
    }

    /// JSON object with numbers rounded to `digits` significant digits
    /// (`K_log10` to `digits` decimals).
    pub fn to_json(&self, digits: usize) -> Value {
        let k = format!("{:.*}", digits, self.k_log10)
            .parse::<f64>()
            .unwrap_or(self.k_log10);
        json!({
            "mu": round_sig(self.mu, digits),
            "lambda0_cm": round_sig(self.lambda0_cm, digits),
            "lambda_prime_cm": round_sig(self.lambda_prime_cm, digits),
            "x": round_sig(self.x, digits),
            "K_log10": k,
            "regime": self.regime,
            "e0_erg": round_sig(self.e0_erg, digits),
            "ekin_erg": round_sig(self.ekin_erg, digits),
            "etotal_erg": round_sig(self.etotal_erg, digits),
            "mode": self.mode,
        })
    }
}

/// Rows ordered by mass, then by the request's mode order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn rows_for(&self, mode: StationarityMode) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.mode == mode)
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line(digits));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(self.rows.iter().map(|r| r.to_json(digits)).collect())
    }
}

/// Runs `request`, evaluating masses concurrently under `exec`.
pub fn sweep(consts: &Constants, request: &SweepRequest, exec: Execution) -> Result<SweepTable> {
    request.validate()?;
    let points: Vec<(f64, StationarityMode)> = request
        .grid()
        .into_iter()
        .flat_map(|mu| request.modes.iter().map(move |&m| (mu, m)))
        .collect();
    let rows = try_map(&points, exec, |&(mu, mode)| {
        SweepRow::compute(consts, mu, request.lambda0, mode, &request.thresholds).map_err(|e| e.at_mass(mu))
    })?;
    Ok(SweepTable { rows })
}
