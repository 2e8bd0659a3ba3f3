//! Closed-form evolution of the single-excitation two-atom state.
//!
//! The atoms start in cos(θ/2)|e₁g₂⟩ + sin(θ/2)|g₁e₂⟩ with the field in
//! its ground (or stationary) state. The symmetric and antisymmetric
//! combinations decay independently with exponents
//! (Γ¹¹ ± Γ¹²)/2 + i(s ± V), which gives the amplitudes b₁, b₂ in closed
//! form. The doubly excited intermediate state is dropped, so ρ₁₁ = ρ₁₄ = 0
//! and early-time coherence is underestimated.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::{self, DEFAULT_EPSILON};
use crate::error::{Error, Result};
use crate::rates::RateSet;

/// Normalization slack allowed on amplitudes and density matrices.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Initial single-excitation superposition, parameterized by θ ∈ [−π, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InitialState {
    theta: f64,
}

impl InitialState {
    /// Angles outside [−π, π] are wrapped by multiples of 2π.
    pub fn new(theta: f64) -> Result<Self> {
        crate::error::require_finite("theta", theta)?;
        let mut theta = theta;
        if !(-PI..=PI).contains(&theta) {
            theta = (theta + PI).rem_euclid(TAU) - PI;
        }
        Ok(Self { theta })
    }

    /// |e₁g₂⟩.
    pub fn separable() -> Self {
        Self { theta: 0.0 }
    }

    /// (|e₁g₂⟩ − |g₁e₂⟩)/√2.
    pub fn subradiant() -> Self {
        Self { theta: -FRAC_PI_2 }
    }

    /// (|e₁g₂⟩ + |g₁e₂⟩)/√2.
    pub fn superradiant() -> Self {
        Self { theta: FRAC_PI_2 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// (cos(θ/2), sin(θ/2)).
    pub fn amplitudes(&self) -> (f64, f64) {
        let (s, c) = (self.theta / 2.0).sin_cos();
        (c, s)
    }
}

/// Atomic amplitudes b₁ (on |e₁g₂⟩) and b₂ (on |g₁e₂⟩) at time `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicState {
    pub b1: Complex64,
    pub b2: Complex64,
    pub tau: f64,
}

impl AtomicState {
    /// Probability remaining in the single-excitation sector.
    pub fn norm_sqr(&self) -> f64 {
        self.b1.norm_sqr() + self.b2.norm_sqr()
    }
}

/// Reduced two-atom density matrix in the product basis
/// |1⟩ = |e₁e₂⟩, |2⟩ = |e₁g₂⟩, |3⟩ = |g₁e₂⟩, |4⟩ = |g₁g₂⟩.
/// Only the X-shaped entries can be nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateMatrix {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho23: Complex64,
    pub rho14: Complex64,
}

impl XStateMatrix {
    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33 + self.rho44
    }

    pub fn validate(&self) -> Result<()> {
        let diag = [self.rho11, self.rho22, self.rho33, self.rho44];
        if diag.iter().any(|p| !(-NORM_TOLERANCE..=1.0 + NORM_TOLERANCE).contains(p)) {
            return Err(Error::Internal(format!("diagonal entries out of [0, 1]: {diag:?}")));
        }
        if (self.trace() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Internal(format!("trace {} != 1", self.trace())));
        }
        if self.rho23.norm_sqr() > self.rho22 * self.rho33 + NORM_TOLERANCE {
            return Err(Error::Internal("|rho23|^2 exceeds rho22*rho33".into()));
        }
        if self.rho14.norm_sqr() > self.rho11 * self.rho44 + NORM_TOLERANCE {
            return Err(Error::Internal("|rho14|^2 exceeds rho11*rho44".into()));
        }
        Ok(())
    }

    /// l1-norm coherence, the sum of |ρᵢⱼ| over i ≠ j.
    pub fn l1_coherence(&self) -> f64 {
        2.0 * (self.rho23.norm() + self.rho14.norm())
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::Domain(format!("tau must be >= 0, got {tau}")));
    }
    Ok(())
}

/// C±(τ) = exp(−[(Γ¹¹ ± Γ¹²)/2]τ − i(s ± V)τ).
pub fn c_plus_minus(rates: &RateSet, tau: f64) -> Result<(Complex64, Complex64)> {
    check_tau(tau)?;
    let (g11, g12) = (rates.gamma11(), rates.gamma12());
    let plus = Complex64::new(-0.5 * (g11 + g12) * tau, -(rates.s + rates.v) * tau).exp();
    let minus = Complex64::new(-0.5 * (g11 - g12) * tau, -(rates.s - rates.v) * tau).exp();
    Ok((plus, minus))
}

pub fn amplitudes(init: &InitialState, rates: &RateSet, tau: f64) -> Result<AtomicState> {
    let (c_plus, c_minus) = c_plus_minus(rates, tau)?;
    let (c, s) = init.amplitudes();
    let sym = 0.5 * (c + s) * c_plus;
    let anti = 0.5 * (c - s) * c_minus;
    Ok(AtomicState { b1: sym + anti, b2: sym - anti, tau })
}

/// l1-norm coherence 2|b₁b₂*| from the closed form
/// e^{−Γ¹¹τ}·√(cos²θ sin²(2Vτ) + [sinθ cosh(Γ¹²τ) − sinh(Γ¹²τ)]²).
pub fn coherence_l1(init: &InitialState, rates: &RateSet, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let (sin_t, cos_t) = init.theta().sin_cos();
    let (g11, g12) = (rates.gamma11(), rates.gamma12());
    // e^{−Γ¹¹τ}cosh and e^{−Γ¹¹τ}sinh written as half-sums of decaying
    // exponentials so long times neither overflow nor lose the plateau.
    let slow = (-(g11 - g12) * tau).exp();
    let fast = (-(g11 + g12) * tau).exp();
    let damped_cosh = 0.5 * (slow + fast);
    let damped_sinh = 0.5 * (slow - fast);
    let damping = (-g11 * tau).exp();
    let oscillating = cos_t * (2.0 * rates.v * tau).sin() * damping;
    let population = sin_t * damped_cosh - damped_sinh;
    Ok(oscillating.hypot(population))
}

/// (p₁, p₂) = (|b₂|², |b₁|²): probabilities of |g₁e₂⟩|0⟩ and |e₁g₂⟩|0⟩.
pub fn populations(init: &InitialState, rates: &RateSet, tau: f64) -> Result<(f64, f64)> {
    let state = amplitudes(init, rates, tau)?;
    Ok((state.b2.norm_sqr(), state.b1.norm_sqr()))
}

pub fn reduced_density_matrix(state: &AtomicState) -> Result<XStateMatrix> {
    let rho22 = state.b1.norm_sqr();
    let rho33 = state.b2.norm_sqr();
    let rho = XStateMatrix {
        rho11: 0.0,
        rho22,
        rho33,
        rho44: 1.0 - rho22 - rho33,
        rho23: state.b1 * state.b2.conj(),
        rho14: Complex64::new(0.0, 0.0),
    };
    rho.validate()?;
    Ok(rho)
}

/// Wootters concurrence of an X-state:
/// max{0, 2(|ρ₂₃| − √(ρ₁₁ρ₄₄)), 2(|ρ₁₄| − √(ρ₂₂ρ₃₃))}.
pub fn concurrence(rho: &XStateMatrix) -> f64 {
    let a = 2.0 * (rho.rho23.norm() - (rho.rho11 * rho.rho44).max(0.0).sqrt());
    let b = 2.0 * (rho.rho14.norm() - (rho.rho22 * rho.rho33).max(0.0).sqrt());
    a.max(b).max(0.0)
}

/// Long-time limit of the coherence using the default frozen tolerance.
pub fn asymptotic_coherence(init: &InitialState, rates: &RateSet) -> f64 {
    asymptotic_coherence_with(init, rates, DEFAULT_EPSILON)
}

/// Long-time limit of the coherence, treating collective decay rates
/// within `epsilon` of zero as vanishing.
///
/// Only the channels whose decay vanishes survive: the antisymmetric one
/// carries weight (1 − sinθ)/2, the symmetric one (1 + sinθ)/2, and with
/// both alive the initial coherence |sinθ| is kept.
pub fn asymptotic_coherence_with(init: &InitialState, rates: &RateSet, epsilon: f64) -> f64 {
    let sin_t = init.theta().sin();
    let sub = rates.subradiant_decay() <= epsilon;
    let sup = rates.superradiant_decay() <= epsilon;
    match (sub, sup) {
        (true, true) => sin_t.abs(),
        (true, false) => 0.5 * (1.0 - sin_t),
        (false, true) => 0.5 * (1.0 + sin_t),
        (false, false) => 0.0,
    }
}

/// Observables sampled on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceTrace {
    pub taus: Vec<f64>,
    pub coherence: Vec<f64>,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub concurrence: Vec<f64>,
    pub subradiant_overlap: Vec<f64>,
}

impl CoherenceTrace {
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// Observables at a single time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub tau: f64,
    pub coherence: f64,
    pub p1: f64,
    pub p2: f64,
    pub concurrence: f64,
    pub subradiant_overlap: f64,
}

pub fn observables(init: &InitialState, rates: &RateSet, tau: f64) -> Result<Observables> {
    let state = amplitudes(init, rates, tau)?;
    let rho = reduced_density_matrix(&state)?;
    Ok(Observables {
        tau,
        coherence: coherence_l1(init, rates, tau)?,
        p1: rho.rho33,
        p2: rho.rho22,
        concurrence: concurrence(&rho),
        subradiant_overlap: analysis::subradiant_overlap(&state)?,
    })
}

/// `num_points` equally spaced times on [0, tau_max].
pub fn uniform_grid(tau_max: f64, num_points: usize) -> Result<Vec<f64>> {
    if !(tau_max.is_finite() && tau_max > 0.0) {
        return Err(Error::Domain(format!("tau_max must be positive, got {tau_max}")));
    }
    if num_points < 2 {
        return Err(Error::Domain(format!("need at least 2 grid points, got {num_points}")));
    }
    let last = (num_points - 1) as f64;
    Ok((0..num_points).map(|i| tau_max * i as f64 / last).collect())
}

pub fn trace(init: &InitialState, rates: &RateSet, grid: &[f64]) -> Result<CoherenceTrace> {
    if grid.is_empty() {
        return Err(Error::Domain("empty time grid".into()));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("time grid must be strictly increasing".into()));
    }
    let mut out = CoherenceTrace {
        taus: Vec::with_capacity(grid.len()),
        coherence: Vec::with_capacity(grid.len()),
        p1: Vec::with_capacity(grid.len()),
        p2: Vec::with_capacity(grid.len()),
        concurrence: Vec::with_capacity(grid.len()),
        subradiant_overlap: Vec::with_capacity(grid.len()),
    };
    for &tau in grid {
        let obs = observables(init, rates, tau)?;
        out.taus.push(tau);
        out.coherence.push(obs.coherence);
        out.p1.push(obs.p1);
        out.p2.push(obs.p2);
        out.concurrence.push(obs.concurrence);
        out.subradiant_overlap.push(obs.subradiant_overlap);
    }
    Ok(out)
}
