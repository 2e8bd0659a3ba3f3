//! Frozen-coherence classification and parameter-regime helpers.

use serde::Serialize;

use crate::dynamics::{asymptotic_coherence_with, AtomicState, InitialState};
use crate::error::{Error, Result};
use crate::rates::{free_space_modulation_ratio, RateSet, ReducedSeparation};

/// Collective decay rates at or below this value (in Γ₀) count as zero.
pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Upper end of the separation bracket. The free-space modulation ratio
/// decreases monotonically on (0, π].
pub const SEPARATION_BRACKET: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrozenClass {
    /// Both collective channels are undamped; every initial state keeps
    /// its coherence.
    FullyFrozen,
    /// Only the antisymmetric channel is undamped; coherence freezes at
    /// (1 − sinθ)/2.
    SubradiantFrozen,
    /// Only the symmetric channel is undamped; coherence freezes at
    /// (1 + sinθ)/2.
    SuperradiantFrozen,
    NotFrozen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrozenReport {
    pub subradiant_decay: f64,
    pub superradiant_decay: f64,
    pub classification: FrozenClass,
    pub epsilon: f64,
    pub theta: f64,
    pub asymptotic_value: f64,
}

pub fn check_frozen(rates: &RateSet, theta: f64, epsilon: f64) -> Result<FrozenReport> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let init = InitialState::new(theta)?;
    let sub = rates.subradiant_decay();
    let sup = rates.superradiant_decay();
    let classification = match (sub <= epsilon, sup <= epsilon) {
        (true, true) => FrozenClass::FullyFrozen,
        (true, false) => FrozenClass::SubradiantFrozen,
        (false, true) => FrozenClass::SuperradiantFrozen,
        (false, false) => FrozenClass::NotFrozen,
    };
    Ok(FrozenReport {
        subradiant_decay: sub,
        superradiant_decay: sup,
        classification,
        epsilon,
        theta: init.theta(),
        asymptotic_value: asymptotic_coherence_with(&init, rates, epsilon),
    })
}

/// Largest free-space separation whose sub-radiant emission rate
/// 1 − Γ¹²_↓/Γ¹¹_↓ stays within `epsilon`, found by bisection on (0, π].
pub fn separation_for_threshold(epsilon: f64) -> Result<ReducedSeparation> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let excess = |r: f64| 1.0 - free_space_modulation_ratio(ReducedSeparation::new(r).unwrap()) - epsilon;

    let (mut lo, mut hi) = (0.0, SEPARATION_BRACKET);
    if excess(hi) <= 0.0 {
        return Err(Error::Range(format!(
            "sub-radiant rate stays below {epsilon} on (0, pi]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ReducedSeparation::new(lo)
}

/// True iff the frozen value (1 − sinθ)/2 exceeds the initial coherence
/// |sinθ|, i.e. sinθ ∈ (−1, 1/3).
pub fn enhancement_region(theta: f64) -> bool {
    let s = theta.sin();
    s > -1.0 && s < 1.0 / 3.0
}

/// Fidelity of the normalized atomic state with (|e₁g₂⟩ − |g₁e₂⟩)/√2.
pub fn subradiant_overlap(state: &AtomicState) -> Result<f64> {
    let anti = (state.b1 - state.b2).norm_sqr();
    let sym = (state.b1 + state.b2).norm_sqr();
    let total = anti + sym;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
    if !(total > 0.0) {
        return Err(Error::Undefined(format!(
            "no population left in the single-excitation sector at tau = {}",
            state.tau
        )));
    }
    Ok(anti / total)
}

/// Lifetime 1/(Γ¹¹ − Γ¹²) of the quasi-frozen plateau; infinite when the
/// sub-radiant decay rate vanishes.
pub fn plateau_timescale(rates: &RateSet) -> f64 {
    let sub = rates.subradiant_decay();
    if sub > 0.0 {
        1.0 / sub
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::amplitudes;
    use crate::rates::static_free_space_rates;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn static_at(r: f64) -> RateSet {
        static_free_space_rates(ReducedSeparation::new(r).unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let rep = check_frozen(&static_at(0.14), 0.0, 0.01).unwrap();
        assert_eq!(rep.classification, FrozenClass::SubradiantFrozen);
        assert_relative_eq!(rep.subradiant_decay, 0.001_958_628_497_874_287, max_relative = 1e-12);
        assert_eq!(rep.asymptotic_value, 0.5);

        let rep = check_frozen(&RateSet::near_boundary(), 0.7, DEFAULT_EPSILON).unwrap();
        assert_eq!(rep.classification, FrozenClass::FullyFrozen);
        assert_eq!(rep.asymptotic_value, 0.7f64.sin());

        let rep = check_frozen(&static_at(1.0), 0.0, 0.01).unwrap();
        assert_eq!(rep.classification, FrozenClass::NotFrozen);
        assert_relative_eq!(rep.subradiant_decay, 0.096_493_963_180_729_63, max_relative = 1e-12);
        assert_eq!(rep.asymptotic_value, 0.0);

        let anti = RateSet::new(1.0, 0.0, -1.0, 0.0, 0.0).unwrap();
        let rep = check_frozen(&anti, 0.0, DEFAULT_EPSILON).unwrap();
        assert_eq!(rep.classification, FrozenClass::SuperradiantFrozen);
        assert_eq!(rep.asymptotic_value, 0.5);

        assert!(check_frozen(&anti, 0.0, 0.0).is_err());
        assert!(check_frozen(&anti, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn default_epsilon_leaves_r014_unfrozen() {
        let rep = check_frozen(&static_at(0.14), 0.0, DEFAULT_EPSILON).unwrap();
        assert_eq!(rep.classification, FrozenClass::NotFrozen);
    }

    /// Dense-scan reference for the separation threshold.
    fn scan_threshold(epsilon: f64, step: f64) -> f64 {
        let mut r = step;
        let mut last_ok = 0.0;
        while r <= PI {
            if 1.0 - free_space_modulation_ratio(ReducedSeparation::new(r).unwrap()) <= epsilon {
                last_ok = r;
            } else {
                break;
            }
            r += step;
        }
        last_ok
    }

    #[test]
    fn separation_threshold_examples() {
        let r = separation_for_threshold(0.001_96).unwrap().value();
        assert!((r - 0.14).abs() < 1e-3, "{r}");
        assert!((r - scan_threshold(0.001_96, 1e-6)).abs() < 2e-6);

        let r = separation_for_threshold(1e-5).unwrap().value();
        assert!((r - 0.01).abs() < 1e-4, "{r}");

        let r = separation_for_threshold(0.696).unwrap().value();
        assert!(r < PI && r > 3.0, "{r}");
        assert!((r - scan_threshold(0.696, 1e-6)).abs() < 2e-6);
    }

    #[test]
    fn separation_threshold_errors() {
        assert!(matches!(separation_for_threshold(0.7), Err(Error::Range(_))));
        assert!(matches!(separation_for_threshold(0.0), Err(Error::Domain(_))));
        assert!(matches!(separation_for_threshold(1.0), Err(Error::Domain(_))));
        assert!(matches!(separation_for_threshold(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn enhancement_examples() {
        assert!(enhancement_region(0.0));
        assert!(!enhancement_region((1.0f64 / 3.0).asin()));
        assert!(!enhancement_region(-FRAC_PI_2));
        assert!(!enhancement_region(FRAC_PI_2));
        assert!(enhancement_region(-1.2));
    }

    #[test]
    fn overlap_examples() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let a = AtomicState { b1: h, b2: -h, tau: 0.0 };
        assert_eq!(subradiant_overlap(&a).unwrap(), 1.0);
        let s = AtomicState { b1: h, b2: h, tau: 0.0 };
        assert_eq!(subradiant_overlap(&s).unwrap(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let dead = AtomicState { b1: zero, b2: zero, tau: 1.0 };
        assert!(matches!(subradiant_overlap(&dead), Err(Error::Undefined(_))));
    }

    #[test]
    fn overlap_approaches_one_for_slow_subradiant_decay() {
        let rates = RateSet::new(1.0, 0.0, 0.999, 0.0, -40.0).unwrap();
        let init = InitialState::separable();
        let mut previous = 0.0;
        for tau in [1.0, 2.0, 5.0, 10.0, 20.0] {
            let f = subradiant_overlap(&amplitudes(&init, &rates, tau).unwrap()).unwrap();
            assert!(f > previous);
            previous = f;
        }
        assert!(previous > 1.0 - 1e-15);
    }

    #[test]
    fn plateau_examples() {
        assert_relative_eq!(plateau_timescale(&static_at(0.14)), 510.561_344_882_557_8, max_relative = 1e-11);
        let slow = plateau_timescale(&static_at(0.014));
        assert_relative_eq!(slow, 51_020.765_307_326_15, max_relative = 1e-9);
        assert!(slow / plateau_timescale(&static_at(0.14)) > 99.0);
        let dicke = RateSet::new(1.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(plateau_timescale(&dicke), f64::INFINITY);
    }
}
