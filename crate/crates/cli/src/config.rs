//! Run settings: optional `key=value` config file, overridden by flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use xxz_teleport::{InputState, ModelParams};

use crate::error::{CliError, Result};

/// Values given on the command line; `None` falls back to the config file,
/// then to the defaults.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub coupling: Option<f64>,
    pub anisotropy: Option<f64>,
    pub field: Option<f64>,
    pub inhomogeneity: Option<f64>,
    pub temperature: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub coupling: f64,
    pub anisotropy: f64,
    pub field: f64,
    pub inhomogeneity: f64,
    pub temperature: f64,
    pub theta: f64,
    pub phi: f64,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// 0 lets the thread pool pick.
    pub jobs: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            coupling: 1.0,
            anisotropy: 1.0,
            field: 0.0,
            inhomogeneity: 0.0,
            temperature: 1.0,
            theta: std::f64::consts::FRAC_PI_4,
            phi: 0.0,
            out: None,
            seed: 42,
            jobs: 0,
        }
    }
}

impl Settings {
    pub fn resolve(overrides: &Overrides, config: Option<&Path>) -> Result<Settings> {
        let mut s = Settings::default();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Config {
                path: path.to_owned(),
                source,
            })?;
            s.apply_config(&parse_config(&text)?)?;
        }
        let o = overrides;
        s.coupling = o.coupling.unwrap_or(s.coupling);
        s.anisotropy = o.anisotropy.unwrap_or(s.anisotropy);
        s.field = o.field.unwrap_or(s.field);
        s.inhomogeneity = o.inhomogeneity.unwrap_or(s.inhomogeneity);
        s.temperature = o.temperature.unwrap_or(s.temperature);
        s.theta = o.theta.unwrap_or(s.theta);
        s.phi = o.phi.unwrap_or(s.phi);
        s.seed = o.seed.unwrap_or(s.seed);
        s.jobs = o.jobs.unwrap_or(s.jobs);
        if o.out.is_some() {
            s.out = o.out.clone();
        }
        Ok(s)
    }

    fn apply_config(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in pairs {
            let real = || {
                value
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("config: {key} = {value:?} is not a number")))
            };
            let int = || {
                value
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("config: {key} = {value:?} is not an integer")))
            };
            match key.as_str() {
                "J" => self.coupling = real()?,
                "lambda" => self.anisotropy = real()?,
                "B" => self.field = real()?,
                "b" => self.inhomogeneity = real()?,
                "T" => self.temperature = real()?,
                "theta" => self.theta = real()?,
                "phi" => self.phi = real()?,
                "seed" => self.seed = int()?,
                "jobs" => self.jobs = int()? as usize,
                "out" => self.out = Some(PathBuf::from(value)),
                other => return Err(CliError::Usage(format!("config: unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(
            self.coupling,
            self.anisotropy,
            self.field,
            self.inhomogeneity,
            self.temperature,
        )
    }

    pub fn input(&self) -> Result<InputState> {
        Ok(InputState::new(self.theta, self.phi)?)
    }
}

/// One `key=value` per line; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut pairs = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value", n + 1)));
        };
        pairs.insert(key.trim().to_owned(), value.trim().to_owned());
    }
    Ok(pairs)
}
