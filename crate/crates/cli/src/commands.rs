//! Subcommand implementations. Each returns the text it produces so the
//! caller decides where it goes.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use twoatom_core::analysis::{check_frozen, plateau_timescale, FrozenReport};
use twoatom_core::dynamics::{observables, trace, uniform_grid, InitialState};
use twoatom_core::rates::{collective, Environment};

use crate::config::{RawConfig, RunConfig};
use crate::error::CliError;
use crate::format::sig12;

pub const CSV_HEADER: &str = "tau,coherence,p1,p2,concurrence,subradiant_overlap";

/// Keys that `sweep` can scan.
pub const SWEEP_KEYS: &[&str] = &["R", "theta", "n", "alpha"];

fn core_err(key: &str) -> impl Fn(twoatom_core::Error) -> CliError + '_ {
    move |e| CliError::config(key, e.to_string())
}

fn initial_state(run: &RunConfig) -> Result<InitialState, CliError> {
    InitialState::new(run.theta).map_err(core_err("theta"))
}

/// Rate table: every rate field and its super-/sub-radiant combinations,
/// after the environment is applied.
pub fn rates(run: &RunConfig) -> String {
    let mut out = String::new();
    let mut row = |name: &str, value: String| {
        let _ = writeln!(out, "{name:<18} {value}");
    };
    row("scenario", run.scenario.to_string());
    if let Some((dist, omega0)) = run.physical {
        row("separation_m", sig12(dist));
        row("omega0_hz", sig12(omega0));
    }
    if let Some(r) = run.separation {
        row("R", sig12(r));
    }
    match run.environment {
        Environment::Vacuum => {}
        Environment::Thermal { n } => row("n", sig12(n)),
        Environment::Accelerated { alpha } => row("alpha", sig12(alpha)),
    }
    let r = &run.rates;
    for (name, value) in [
        ("g11_down", r.g11_down),
        ("g11_up", r.g11_up),
        ("g12_down", r.g12_down),
        ("g12_up", r.g12_up),
        ("v", r.v),
        ("s", r.s),
    ] {
        row(name, sig12(value));
    }
    let c = collective(r);
    for (name, value) in [
        ("gamma_plus_down", c.gamma_plus_down),
        ("gamma_minus_down", c.gamma_minus_down),
        ("gamma_plus_up", c.gamma_plus_up),
        ("gamma_minus_up", c.gamma_minus_up),
        ("gamma11_total", c.gamma11_total),
        ("gamma12_total", c.gamma12_total),
    ] {
        row(name, sig12(value));
    }
    out
}

/// CSV trace on the uniform grid [0, tau_max].
pub fn trace_csv(run: &RunConfig) -> Result<String, CliError> {
    let grid = uniform_grid(run.tau_max, run.num_points).map_err(core_err("tau_max"))?;
    let tr = trace(&initial_state(run)?, &run.rates, &grid).map_err(core_err("tau_max"))?;
    let mut out = String::with_capacity(grid.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..tr.len() {
        let fields = [
            tr.taus[i],
            tr.coherence[i],
            tr.p1[i],
            tr.p2[i],
            tr.concurrence[i],
            tr.subradiant_overlap[i],
        ];
        let line: Vec<String> = fields.iter().map(|&x| sig12(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn frozen_report(run: &RunConfig) -> Result<FrozenReport, CliError> {
    check_frozen(&run.rates, run.theta, run.epsilon).map_err(core_err("epsilon"))
}

pub fn frozen_json(run: &RunConfig) -> Result<String, CliError> {
    let report = frozen_report(run)?;
    Ok(serde_json::to_string(&report).expect("report serializes") + "\n")
}

/// One sweep point. Field order is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub key: String,
    pub value: f64,
    pub scenario: &'static str,
    #[serde(rename = "R")]
    pub separation: Option<f64>,
    pub theta: f64,
    pub tau: f64,
    pub frozen: FrozenReport,
    pub coherence: f64,
    pub p1: f64,
    pub p2: f64,
    pub concurrence: f64,
    pub subradiant_overlap: f64,
    /// null when the plateau never decays.
    pub plateau_timescale: f64,
}

fn sweep_point(raw: &RawConfig, key: &str, text: &str, value: f64) -> Result<SweepRecord, CliError> {
    let mut cfg = raw.clone();
    cfg.set(key, text)?;
    let run = RunConfig::resolve(&cfg)?;
    let obs = observables(&initial_state(&run)?, &run.rates, run.tau_max).map_err(core_err(key))?;
    Ok(SweepRecord {
        key: key.to_string(),
        value,
        scenario: run.scenario.name(),
        separation: run.separation,
        theta: run.theta,
        tau: run.tau_max,
        frozen: frozen_report(&run)?,
        coherence: obs.coherence,
        p1: obs.p1,
        p2: obs.p2,
        concurrence: obs.concurrence,
        subradiant_overlap: obs.subradiant_overlap,
        plateau_timescale: plateau_timescale(&run.rates),
    })
}

/// JSON lines, one per swept value, in input order.
pub fn sweep_jsonl(raw: &RawConfig, key: &str, values: &str) -> Result<String, CliError> {
    if !SWEEP_KEYS.contains(&key) {
        return Err(CliError::config("sweep", format!("cannot sweep {key:?}; expected one of {SWEEP_KEYS:?}")));
    }
    let items: Vec<(String, f64)> = values
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok((s.to_string(), x)),
            _ => Err(CliError::config("values", format!("not a finite number: {s:?}"))),
        })
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::config("values", "empty value list"));
    }
    let mut base = raw.clone();
    base.remove("sweep");
    base.remove("values");

    let records: Vec<SweepRecord> = items
        .par_iter()
        .map(|(text, value)| sweep_point(&base, key, text, *value))
        .collect::<Result<_, _>>()?;
    let mut out = String::new();
    for rec in &records {
        out.push_str(&serde_json::to_string(rec).expect("record serializes"));
        out.push('\n');
    }
    Ok(out)
}
