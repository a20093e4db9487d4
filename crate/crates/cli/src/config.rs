//! Resolved run configuration: flags, then config file, then
//! `GRAVLOC_DENSITY`, then defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use gravloc::units::DEFAULT_DENSITY;
use gravloc::StationarityMode;

pub const DENSITY_ENV: &str = "GRAVLOC_DENSITY";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSelection {
    Paper,
    Derived,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> Vec<StationarityMode> {
        match self {
            ModeSelection::Paper => vec![StationarityMode::Paper],
            ModeSelection::Derived => vec![StationarityMode::Derived],
            ModeSelection::Both => StationarityMode::ALL.to_vec(),
        }
    }
}

impl FromStr for ModeSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" => Ok(ModeSelection::Paper),
            "derived" => Ok(ModeSelection::Derived),
            "both" => Ok(ModeSelection::Both),
            other => Err(format!("invalid mode {other:?}: expected paper, derived or both")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(format!("invalid output {other:?}: expected json, csv or table")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub mode: ModeSelection,
    /// proton masses per cm³
    pub density: f64,
    pub output: OutputFormat,
    pub precision: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            mode: ModeSelection::Paper,
            density: DEFAULT_DENSITY,
            output: OutputFormat::Table,
            precision: 6,
        }
    }
}

/// Settings that may each come from a flag or the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub mode: Option<ModeSelection>,
    pub density: Option<f64>,
    pub output: Option<OutputFormat>,
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Overrides, ConfigError> {
    let mut out = Overrides::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("config line {}: expected key = value", n + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| ConfigError(format!("config line {}: {e}", n + 1));
        match key {
            "mode" => out.mode = Some(value.parse().map_err(bad)?),
            "density" => {
                out.density = Some(
                    value
                        .parse()
                        .map_err(|_| bad(format!("invalid density {value:?}")))?,
                )
            }
            "output" => out.output = Some(value.parse().map_err(bad)?),
            "precision" => {
                out.precision = Some(
                    value
                        .parse()
                        .map_err(|_| bad(format!("invalid precision {value:?}")))?,
                )
            }
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<Overrides, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Layers flags over the config file over the environment over defaults.
pub fn resolve(
    flags: &Overrides,
    file: &Overrides,
    env_density: Option<&str>,
) -> Result<CliConfig, ConfigError> {
    let defaults = CliConfig::default();
    let env_density = match env_density {
        Some(v) => Some(
            v.trim()
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("invalid {DENSITY_ENV} {v:?}")))?,
        ),
        None => None,
    };
    let config = CliConfig {
        mode: flags.mode.or(file.mode).unwrap_or(defaults.mode),
        density: flags
            .density
            .or(file.density)
            .or(env_density)
            .unwrap_or(defaults.density),
        output: flags.output.or(file.output).unwrap_or(defaults.output),
        precision: flags.precision.or(file.precision).unwrap_or(defaults.precision),
    };
    if !(config.density.is_finite() && config.density > 0.0) {
        return Err(ConfigError(format!(
            "invalid density: must be > 0, got {}",
            config.density
        )));
    }
    if !(3..=17).contains(&config.precision) {
        return Err(ConfigError(format!(
            "invalid precision: must be in [3, 17], got {}",
            config.precision
        )));
    }
    Ok(config)
}
