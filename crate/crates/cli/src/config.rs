//! Flat `key = value` run configuration.
//!
//! A config file holds one assignment per line; blank lines and lines
//! starting with `#` are ignored. Command-line `--set key=value`
//! overrides are applied after the file, later assignments winning.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use twoatom_core::rates::{self, Environment, RateSet};
use twoatom_core::DEFAULT_EPSILON;

use crate::error::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "scenario",
    "R",
    "separation_m",
    "omega0_hz",
    "g11_down",
    "g11_up",
    "g12_down",
    "g12_up",
    "v",
    "s",
    "theta",
    "n",
    "omega0_beta",
    "alpha",
    "tau_max",
    "num_points",
    "epsilon",
    "output",
    "sweep",
    "values",
];

// `s` is the common level shift and combines with any rate source.
const CUSTOM_KEYS: &[&str] = &["g11_down", "g11_up", "g12_down", "g12_up", "v"];

pub const DEFAULT_TAU_MAX: f64 = 20.0;
pub const DEFAULT_NUM_POINTS: usize = 2001;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(line, format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("--config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::config(key, "unknown key"));
        }
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::config(assignment, "expected key=value"))?;
        self.set(key.trim(), value.trim())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn remove(&mut self, key: &str) {
        self.entries.remove(key);
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key)
            .map(|v| {
                let x: f64 = v.parse().map_err(|_| CliError::config(key, format!("not a number: {v:?}")))?;
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(CliError::config(key, format!("value must be finite, got {v:?}")))
                }
            })
            .transpose()
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| CliError::config(key, format!("not a count: {v:?}"))))
            .transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    StaticFreeSpace,
    Thermal,
    Accelerated,
    CustomRates,
}

impl Scenario {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "static-free-space" => Ok(Self::StaticFreeSpace),
            "thermal" => Ok(Self::Thermal),
            "accelerated" => Ok(Self::Accelerated),
            "custom-rates" => Ok(Self::CustomRates),
            other => Err(CliError::config("scenario", format!("unknown scenario {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::StaticFreeSpace => "static-free-space",
            Self::Thermal => "thermal",
            Self::Accelerated => "accelerated",
            Self::CustomRates => "custom-rates",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    /// Reduced separation, absent for custom rates.
    pub separation: Option<f64>,
    /// Physical inputs the separation was derived from, if any.
    pub physical: Option<(f64, f64)>,
    pub base: RateSet,
    pub environment: Environment,
    pub rates: RateSet,
    pub theta: f64,
    pub tau_max: f64,
    pub num_points: usize,
    pub epsilon: f64,
}

impl RunConfig {
    pub fn resolve(raw: &RawConfig) -> Result<Self, CliError> {
        let has_custom = CUSTOM_KEYS.iter().any(|k| raw.has(k));
        let has_separation = raw.has("R") || raw.has("separation_m") || raw.has("omega0_hz");
        let scenario = match raw.get("scenario") {
            Some(s) => Scenario::parse(s)?,
            None if has_custom => Scenario::CustomRates,
            None if raw.has("n") || raw.has("omega0_beta") => Scenario::Thermal,
            None if raw.has("alpha") => Scenario::Accelerated,
            None => Scenario::StaticFreeSpace,
        };

        if has_custom && has_separation {
            return Err(CliError::config("R", "give either a separation or explicit rates, not both"));
        }
        for key in ["n", "omega0_beta"] {
            if raw.has(key) && scenario != Scenario::Thermal {
                return Err(CliError::config(key, format!("only valid with scenario=thermal, not {scenario}")));
            }
        }
        if raw.has("alpha") && scenario != Scenario::Accelerated {
            return Err(CliError::config("alpha", format!("only valid with scenario=accelerated, not {scenario}")));
        }

        let (separation, physical, base) = if scenario == Scenario::CustomRates {
            if has_separation {
                return Err(CliError::config("R", "custom-rates takes explicit rates, not a separation"));
            }
            let field = |k: &str| raw.f64(k).map(|v| v.unwrap_or(0.0));
            let g11_down = raw
                .f64("g11_down")?
                .ok_or_else(|| CliError::config("g11_down", "required for custom-rates"))?;
            let base = RateSet::new(g11_down, field("g11_up")?, field("g12_down")?, field("g12_up")?, field("v")?)
                .map_err(|e| CliError::config("g11_down", e.to_string()))?;
            (None, None, base)
        } else {
            if has_custom {
                return Err(CliError::config("g11_down", format!("explicit rates need scenario=custom-rates, not {scenario}")));
            }
            let (r, physical) = resolve_separation(raw)?;
            let base = rates::static_free_space_rates(r).map_err(|e| CliError::config("R", e.to_string()))?;
            (Some(r.value()), physical, base)
        };

        let base = base.with_shift(raw.f64("s")?.unwrap_or(0.0));

        let environment = match scenario {
            Scenario::Thermal => match (raw.f64("n")?, raw.f64("omega0_beta")?) {
                (Some(n), None) => Environment::thermal(n).map_err(|e| CliError::config("n", e.to_string()))?,
                (None, Some(x)) => Environment::thermal_from_beta(x)
                    .map_err(|e| CliError::config("omega0_beta", e.to_string()))?,
                (Some(_), Some(_)) => return Err(CliError::config("n", "give n or omega0_beta, not both")),
                (None, None) => return Err(CliError::config("n", "thermal scenario needs n or omega0_beta")),
            },
            Scenario::Accelerated => {
                let alpha = raw
                    .f64("alpha")?
                    .ok_or_else(|| CliError::config("alpha", "required for scenario=accelerated"))?;
                Environment::accelerated(alpha).map_err(|e| CliError::config("alpha", e.to_string()))?
            }
            _ => Environment::Vacuum,
        };
        let rates = rates::apply_environment(&base, &environment)
            .map_err(|e| CliError::config("scenario", e.to_string()))?;

        let theta = raw.f64("theta")?.unwrap_or(0.0);
        let tau_max = raw.f64("tau_max")?.unwrap_or(DEFAULT_TAU_MAX);
        if tau_max <= 0.0 {
            return Err(CliError::config("tau_max", "must be positive"));
        }
        let num_points = raw.usize("num_points")?.unwrap_or(DEFAULT_NUM_POINTS);
        if num_points < 2 {
            return Err(CliError::config("num_points", "need at least 2 points"));
        }
        let epsilon = raw.f64("epsilon")?.unwrap_or(DEFAULT_EPSILON);
        if epsilon <= 0.0 {
            return Err(CliError::config("epsilon", "must be positive"));
        }

        Ok(Self {
            scenario,
            separation,
            physical,
            base,
            environment,
            rates,
            theta,
            tau_max,
            num_points,
            epsilon,
        })
    }
}

fn resolve_separation(raw: &RawConfig) -> Result<(rates::ReducedSeparation, Option<(f64, f64)>), CliError> {
    match (raw.f64("R")?, raw.f64("separation_m")?, raw.f64("omega0_hz")?) {
        (Some(r), None, None) => {
            let r = rates::ReducedSeparation::new(r).map_err(|e| CliError::config("R", e.to_string()))?;
            Ok((r, None))
        }
        (None, Some(dist), Some(omega0)) => {
            let r = rates::physical_to_reduced(dist, omega0)
                .map_err(|e| CliError::config("separation_m", e.to_string()))?;
            Ok((r, Some((dist, omega0))))
        }
        (Some(_), _, _) => Err(CliError::config("R", "give R or separation_m/omega0_hz, not both")),
        (None, None, _) => Err(CliError::config("R", "a separation is required")),
        (None, Some(_), None) => Err(CliError::config("omega0_hz", "required together with separation_m")),
    }
}
