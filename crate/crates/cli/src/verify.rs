//! Seeded cross-check of the closed forms against the numerical oracle.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twoatom_core::dynamics::{amplitudes, InitialState};
use twoatom_core::oracle::{
    eigen_check, integrate_rk4, recommended_step, series_check_modulation, AmplitudeOde, SeriesCheck,
    SERIES_CHECK_MAX_R,
};
use twoatom_core::rates::RateSet;

pub const AMPLITUDE_THRESHOLD: f64 = 1e-7;
pub const EIGEN_THRESHOLD: f64 = 1e-12;
pub const ORDER_RANGE: (f64, f64) = (3.8, 4.2);
/// Base RK4 step, divided by the stiffest rate of each sample.
pub const BASE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
struct Sample {
    rates: RateSet,
    theta: f64,
    tau_end: f64,
    separation: f64,
}

fn draw(rng: &mut ChaCha8Rng) -> Sample {
    let g11 = rng.gen_range(0.2..=2.0);
    let g12 = rng.gen_range(0.0..=g11);
    let v = rng.gen_range(-10.0..=10.0) * g11;
    let s = rng.gen_range(-1.0..=1.0);
    let rates = RateSet::new(g11, 0.0, g12, 0.0, v).expect("sampled rates are valid").with_shift(s);
    Sample {
        rates,
        theta: rng.gen_range(-PI..=PI),
        tau_end: rng.gen_range(0.0..=20.0) / g11,
        separation: rng.gen_range(1e-4..=SERIES_CHECK_MAX_R),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub max_amplitude_residual: f64,
    pub convergence_order: f64,
    pub max_eigen_residual: f64,
    /// Largest abs_diff / remainder_bound over the series checks; ≤ 1
    /// means every check sits inside its truncation bound.
    pub max_series_excess: f64,
}

impl VerifyReport {
    pub fn amplitudes_pass(&self) -> bool {
        self.max_amplitude_residual <= AMPLITUDE_THRESHOLD
    }

    pub fn order_pass(&self) -> bool {
        (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&self.convergence_order)
    }

    pub fn eigen_pass(&self) -> bool {
        self.max_eigen_residual <= EIGEN_THRESHOLD
    }

    pub fn series_pass(&self) -> bool {
        self.max_series_excess <= 1.0
    }

    pub fn passed(&self) -> bool {
        self.amplitudes_pass() && self.order_pass() && self.eigen_pass() && self.series_pass()
    }

    pub fn render(&self) -> String {
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut out = String::new();
        let _ = writeln!(out, "verify seed={} samples={}", self.seed, self.samples);
        let _ = writeln!(
            out,
            "amplitude_equivalence max_residual={:.6e} threshold={:e} {}",
            self.max_amplitude_residual,
            AMPLITUDE_THRESHOLD,
            verdict(self.amplitudes_pass())
        );
        let _ = writeln!(
            out,
            "rk4_convergence order={:.6} range=[{}, {}] {}",
            self.convergence_order,
            ORDER_RANGE.0,
            ORDER_RANGE.1,
            verdict(self.order_pass())
        );
        let _ = writeln!(
            out,
            "eigen_structure max_residual={:.6e} threshold={:e} {}",
            self.max_eigen_residual,
            EIGEN_THRESHOLD,
            verdict(self.eigen_pass())
        );
        let _ = writeln!(
            out,
            "series_modulation max_excess={:.6e} threshold=1 {}",
            self.max_series_excess,
            verdict(self.series_pass())
        );
        let _ = writeln!(out, "overall {}", verdict(self.passed()));
        out
    }
}

/// Maximum that keeps NaN, so a broken sample cannot pass silently.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn amplitude_residual(rates: &RateSet, init: &InitialState, tau_end: f64, step: f64) -> f64 {
    let num = integrate_rk4(&AmplitudeOde::from_rates(rates), init, tau_end, step)
        .expect("oracle step count within limits");
    let exact = amplitudes(init, rates, tau_end).expect("tau_end >= 0");
    (num.b1 - exact.b1).norm().max((num.b2 - exact.b2).norm())
}

/// Empirical RK4 order on a fixed benchmark, from the error ratio of a
/// step and its half.
pub fn convergence_order() -> f64 {
    let rates = RateSet::new(1.0, 0.0, 0.5, 0.0, 2.0).expect("benchmark rates are valid");
    let init = InitialState::new(0.3).expect("finite angle");
    let coarse = amplitude_residual(&rates, &init, 5.0, 0.05);
    let fine = amplitude_residual(&rates, &init, 5.0, 0.025);
    (coarse / fine).log2()
}

pub fn run(seed: u64, samples: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Sample> = (0..samples).map(|_| draw(&mut rng)).collect();

    // max is order-independent, so the parallel reduction is deterministic
    let (amp, eig, series) = draws
        .par_iter()
        .map(|s| {
            let init = InitialState::new(s.theta).expect("finite angle");
            let step = recommended_step(&s.rates, BASE_STEP);
            let amp = amplitude_residual(&s.rates, &init, s.tau_end, step);
            let (_, eig) = eigen_check(&AmplitudeOde::from_rates(&s.rates));
            let check = series_check_modulation(s.separation).expect("separation in range");
            let excess = check.abs_diff / (SeriesCheck::remainder_bound(s.separation) + 4.0 * f64::EPSILON);
            (amp, eig, excess)
        })
        .reduce(|| (0.0, 0.0, 0.0), |a, b| (worst(a.0, b.0), worst(a.1, b.1), worst(a.2, b.2)));

    VerifyReport {
        seed,
        samples,
        max_amplitude_residual: amp,
        convergence_order: convergence_order(),
        max_eigen_residual: eig,
        max_series_excess: series,
    }
}
