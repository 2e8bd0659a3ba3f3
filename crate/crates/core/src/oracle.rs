//! Independent numerical checks of the closed-form dynamics.
//!
//! The amplitudes obey db/dτ = −M b with the symmetric 2×2 generator
//! M = [[γ, κ], [κ, γ]], γ = Γ¹¹/2 + i·s, κ = Γ¹²/2 + i·V. The routines
//! here integrate that system directly and check its eigen-structure,
//! without going through [`crate::dynamics`].

use num_complex::Complex64;

use crate::dynamics::{AtomicState, InitialState};
use crate::error::{Error, Result};
use crate::rates::RateSet;

/// Hard cap on the number of RK4 steps per integration.
pub const MAX_STEPS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeOde {
    pub gamma_diag: Complex64,
    pub kappa_off: Complex64,
}

impl AmplitudeOde {
    pub fn from_rates(rates: &RateSet) -> Self {
        Self {
            gamma_diag: Complex64::new(0.5 * rates.gamma11(), rates.s),
            kappa_off: Complex64::new(0.5 * rates.gamma12(), rates.v),
        }
    }

    /// −M b.
    fn rhs(&self, b: [Complex64; 2]) -> [Complex64; 2] {
        [
            -(self.gamma_diag * b[0] + self.kappa_off * b[1]),
            -(self.kappa_off * b[0] + self.gamma_diag * b[1]),
        ]
    }

    /// The largest rate scale in the generator, used to size RK4 steps.
    pub fn stiffness(&self) -> f64 {
        [
            self.gamma_diag.re.abs(),
            self.gamma_diag.im.abs(),
            self.kappa_off.re.abs(),
            self.kappa_off.im.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Step size for the oracle: `base` scaled down by the stiffest of
/// Γ¹¹, |V|, |s| when any of them exceeds 1.
pub fn recommended_step(rates: &RateSet, base: f64) -> f64 {
    let scale = [rates.gamma11(), rates.v.abs(), rates.s.abs(), 1.0]
        .into_iter()
        .fold(0.0, f64::max);
    base / scale
}

/// Classical fourth-order Runge–Kutta from (cos(θ/2), sin(θ/2)) to
/// `tau_end`. The step is shrunk so an integer number of steps lands
/// exactly on `tau_end`.
pub fn integrate_rk4(ode: &AmplitudeOde, init: &InitialState, tau_end: f64, step: f64) -> Result<AtomicState> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if !(tau_end.is_finite() && tau_end >= 0.0) {
        return Err(Error::Domain(format!("tau_end must be >= 0, got {tau_end}")));
    }
    let (c, s) = init.amplitudes();
    let mut b = [Complex64::new(c, 0.0), Complex64::new(s, 0.0)];
    if tau_end == 0.0 {
        return Ok(AtomicState { b1: b[0], b2: b[1], tau: 0.0 });
    }
    let steps = (tau_end / step).ceil();
    if steps > MAX_STEPS {
        return Err(Error::Resource(format!(
            "{steps} RK4 steps requested, limit is {MAX_STEPS}"
        )));
    }
    let steps = steps as u64;
    let h = tau_end / steps as f64;

    let axpy = |b: [Complex64; 2], k: [Complex64; 2], a: f64| [b[0] + k[0] * a, b[1] + k[1] * a];
    for _ in 0..steps {
        let k1 = ode.rhs(b);
        let k2 = ode.rhs(axpy(b, k1, 0.5 * h));
        let k3 = ode.rhs(axpy(b, k2, 0.5 * h));
        let k4 = ode.rhs(axpy(b, k3, h));
        for i in 0..2 {
            b[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    Ok(AtomicState { b1: b[0], b2: b[1], tau: tau_end })
}

/// Eigenvalues γ ± κ of the generator, and the largest residual
/// ‖M v − λ v‖ over the analytic eigenvectors (1, ±1)/√2.
pub fn eigen_check(ode: &AmplitudeOde) -> ((Complex64, Complex64), f64) {
    let plus = ode.gamma_diag + ode.kappa_off;
    let minus = ode.gamma_diag - ode.kappa_off;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut worst = 0.0f64;
    for (lambda, sign) in [(plus, 1.0), (minus, -1.0)] {
        let v = [Complex64::new(h, 0.0), Complex64::new(sign * h, 0.0)];
        let mv = [
            ode.gamma_diag * v[0] + ode.kappa_off * v[1],
            ode.kappa_off * v[0] + ode.gamma_diag * v[1],
        ];
        let residual = ((mv[0] - lambda * v[0]).norm_sqr() + (mv[1] - lambda * v[1]).norm_sqr()).sqrt();
        worst = worst.max(residual);
    }
    ((plus, minus), worst)
}

/// Upper end of the range where the modulation series check applies.
pub const SERIES_CHECK_MAX_R: f64 = 0.3;

/// Result of comparing two evaluations of 3(sin R − R cos R)/R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCheck {
    /// Compensated sum of the full Taylor series of the numerator,
    /// divided by R³/3.
    pub direct: f64,
    /// 1 − R²/10 + R⁴/280.
    pub series: f64,
    pub abs_diff: f64,
}

impl SeriesCheck {
    /// Magnitude of the first omitted term R⁶/15120, an upper bound on
    /// the truncation error of the three-term series.
    pub fn remainder_bound(r: f64) -> f64 {
        r.powi(6) / 15_120.0
    }
}

pub fn series_check_modulation(r: f64) -> Result<SeriesCheck> {
    if !(r > 0.0 && r <= SERIES_CHECK_MAX_R) {
        return Err(Error::Domain(format!(
            "series check needs 0 < R <= {SERIES_CHECK_MAX_R}, got {r}"
        )));
    }
    // sin R − R cos R = Σ_k (−1)^k (2k+2) R^{2k+3}/(2k+3)!,
    // summed with Neumaier compensation.
    let r2 = r * r;
    let mut power_over_fact = r * r2 / 6.0; // R^{2k+3}/(2k+3)! at k = 0
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in 0..30u32 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * f64::from(2 * k + 2) * power_over_fact;
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        if term.abs() < 1e-34 * sum.abs() {
            break;
        }
        let next = f64::from(2 * k + 4) * f64::from(2 * k + 5);
        power_over_fact *= r2 / next;
    }
    let direct = 3.0 * (sum + comp) / (r * r2);
    let series = 1.0 - r2 / 10.0 + r2 * r2 / 280.0;
    Ok(SeriesCheck { direct, series, abs_diff: (direct - series).abs() })
}
