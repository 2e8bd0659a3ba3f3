use std::f64::consts::PI;

use proptest::prelude::*;
use twoatom_core::analysis::{
    check_frozen, enhancement_region, separation_for_threshold, subradiant_overlap, FrozenClass,
};
use twoatom_core::dynamics::{
    amplitudes, coherence_l1, concurrence, observables, populations, reduced_density_matrix,
    InitialState,
};
use twoatom_core::rates::{
    apply_environment, collective, free_space_modulation_ratio, kms_pair,
    static_free_space_rates, Environment, RateSet, ReducedSeparation, DICKE_SERIES_CUTOFF,
};

fn rate_set() -> impl Strategy<Value = RateSet> {
    (0.05..3.0f64, -1.0..=1.0f64, 0.0..1.0f64, -1.0..=1.0f64, -50.0..50.0f64, -10.0..10.0f64)
        .prop_map(|(g11d, f12d, g11u, f12u, v, s)| {
            RateSet::new(g11d, g11u, f12d * g11d, f12u * g11u, v).unwrap().with_shift(s)
        })
}

fn theta() -> impl Strategy<Value = f64> {
    -PI..=PI
}

fn sep(r: f64) -> ReducedSeparation {
    ReducedSeparation::new(r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closed_form_matches_amplitudes(rates in rate_set(), th in theta(), tau in 0.0..20.0f64) {
        let init = InitialState::new(th).unwrap();
        let st = amplitudes(&init, &rates, tau).unwrap();
        let from_amps = 2.0 * (st.b1 * st.b2.conj()).norm();
        let closed = coherence_l1(&init, &rates, tau).unwrap();
        prop_assert!((from_amps - closed).abs() <= 1e-12, "{} vs {}", from_amps, closed);
        prop_assert!(st.norm_sqr() <= 1.0 + 1e-12);
    }

    #[test]
    fn interference_identity(rates in rate_set(), th in theta(), tau in 0.0..20.0f64) {
        let init = InitialState::new(th).unwrap();
        let rho = reduced_density_matrix(&amplitudes(&init, &rates, tau).unwrap()).unwrap();
        let (p1, p2) = populations(&init, &rates, tau).unwrap();
        prop_assert!((rho.rho23.norm() - (p1 * p2).sqrt()).abs() <= 1e-12);
        prop_assert!(p1 + p2 <= 1.0 + 1e-12);
    }

    #[test]
    fn common_shift_cancels(rates in rate_set(), th in theta(), tau in 0.0..20.0f64, s2 in -10.0..10.0f64) {
        let init = InitialState::new(th).unwrap();
        let a = observables(&init, &rates, tau).unwrap();
        let b = observables(&init, &rates.with_shift(s2), tau).unwrap();
        prop_assert!((a.coherence - b.coherence).abs() <= 1e-12);
        prop_assert!((a.p1 - b.p1).abs() <= 1e-12);
        prop_assert!((a.p2 - b.p2).abs() <= 1e-12);
        prop_assert!((a.concurrence - b.concurrence).abs() <= 1e-12);
    }

    #[test]
    fn concurrence_never_exceeds_coherence(rates in rate_set(), th in theta(), tau in 0.0..20.0f64) {
        let init = InitialState::new(th).unwrap();
        let rho = reduced_density_matrix(&amplitudes(&init, &rates, tau).unwrap()).unwrap();
        let c = concurrence(&rho);
        prop_assert!(c >= 0.0);
        prop_assert!(c <= coherence_l1(&init, &rates, tau).unwrap() + 1e-12);
    }

    #[test]
    fn coherence_envelope(rates in rate_set(), th in theta(), tau in 0.0..20.0f64) {
        let init = InitialState::new(th).unwrap();
        let c = coherence_l1(&init, &rates, tau).unwrap();
        let envelope = (-(rates.gamma11() - rates.gamma12().abs()) * tau).exp();
        prop_assert!(c >= 0.0);
        prop_assert!(c <= envelope * (1.0 + 1e-12));
    }

    #[test]
    fn subradiant_overlap_in_unit_interval(rates in rate_set(), th in theta(), tau in 0.0..20.0f64) {
        let st = amplitudes(&InitialState::new(th).unwrap(), &rates, tau).unwrap();
        let f = subradiant_overlap(&st).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn independent_atoms(g11 in 0.05..3.0f64, th in theta(), tau in 0.0..20.0f64) {
        let rates = RateSet::new(g11, 0.0, 0.0, 0.0, 0.0).unwrap();
        let init = InitialState::new(th).unwrap();
        let c = coherence_l1(&init, &rates, tau).unwrap();
        let expected = th.sin().abs() * (-g11 * tau).exp();
        prop_assert!((c - expected).abs() <= 1e-15 + 1e-13 * expected);
    }

    #[test]
    fn separable_populations_match_cosh_cos(g11 in 0.05..3.0f64, f in -1.0..=1.0f64, v in -50.0..50.0f64, tau in 0.0..20.0f64) {
        let g12 = f * g11;
        let rates = RateSet::new(g11, 0.0, g12, 0.0, v).unwrap();
        let (p1, p2) = populations(&InitialState::separable(), &rates, tau).unwrap();
        let damp = (-g11 * tau).exp();
        let expect_p1 = damp * ((g12 * tau).cosh() - (2.0 * v * tau).cos()) / 2.0;
        let expect_p2 = damp * ((g12 * tau).cosh() + (2.0 * v * tau).cos()) / 2.0;
        prop_assert!((p1 - expect_p1).abs() <= 1e-12);
        prop_assert!((p2 - expect_p2).abs() <= 1e-12);
    }

    #[test]
    fn kms_ratio_and_difference(down in 0.0..10.0f64, x in 1e-3..40.0f64) {
        let (d, u) = kms_pair(down, x).unwrap();
        prop_assert!((d - u - down).abs() <= 4.0 * f64::EPSILON * d.max(down));
        if down > 0.0 {
            let ratio = d / u;
            prop_assert!((ratio / x.exp() - 1.0).abs() <= 8.0 * f64::EPSILON, "{} vs {}", ratio, x.exp());
        }
    }

    #[test]
    fn frozen_value_reached(g11 in 0.1..3.0f64, delta in 0.0..1e-3f64, v in -50.0..50.0f64, th in theta()) {
        let rates = RateSet::new(g11, 0.0, g11 - delta * g11, 0.0, v).unwrap();
        let rep = check_frozen(&rates, th, 1e-3 * g11).unwrap();
        prop_assume!(rep.classification == FrozenClass::SubradiantFrozen);
        let init = InitialState::new(th).unwrap();
        let c = coherence_l1(&init, &rates, 50.0 / g11).unwrap();
        let frozen = 0.5 * (1.0 - th.sin());
        let sub = rates.subradiant_decay();
        let bound = frozen * 50.0 * sub / g11 + 1e-12;
        prop_assert!((c - frozen).abs() <= bound, "{} vs {} (bound {})", c, frozen, bound);
    }
}

#[test]
fn table_two_scaling() {
    for base in [
        static_free_space_rates(sep(0.14)).unwrap(),
        static_free_space_rates(sep(1.0)).unwrap(),
        RateSet::new(2.5, 0.0, -1.1, 0.0, 0.3).unwrap(),
    ] {
        let vac = collective(&base);
        for n in [0.0, 0.5, 1.0, 5.0] {
            let hot = collective(&apply_environment(&base, &Environment::thermal(n).unwrap()).unwrap());
            let k = 1.0 + 2.0 * n;
            let close = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs());
            assert!(close(hot.gamma11_total, k * base.g11_down));
            assert!(close(hot.gamma12_total, k * base.g12_down));
            assert!(close(hot.gamma_plus_down, (1.0 + n) * vac.gamma_plus_down));
            assert!(close(hot.gamma_minus_down, (1.0 + n) * vac.gamma_minus_down));
            assert!(close(hot.gamma_plus_up, n * vac.gamma_plus_down));
            assert!(close(hot.gamma_minus_up, n * vac.gamma_minus_down));
            assert!(close(hot.gamma11_total + hot.gamma12_total, k * vac.gamma_plus_down));
            assert!(close(hot.gamma11_total - hot.gamma12_total, k * vac.gamma_minus_down));
        }
    }
}

#[test]
fn dicke_series_bound() {
    let mut r = 1e-4;
    while r <= 0.3 {
        let ratio = free_space_modulation_ratio(sep(r));
        assert!((ratio - (1.0 - r * r / 10.0)).abs() <= r.powi(4), "R = {r}");
        r += 1e-4;
    }
}

#[test]
fn collective_rates_stay_non_negative() {
    let mut r = 1e-3;
    while r <= 50.0 {
        let c = collective(&static_free_space_rates(sep(r)).unwrap());
        assert!(c.gamma_minus_down >= 0.0, "R = {r}");
        assert!(c.gamma_plus_down >= 0.0, "R = {r}");
        r += 1e-3;
    }
}

#[test]
fn series_branch_switchover() {
    let below = free_space_modulation_ratio(sep(DICKE_SERIES_CUTOFF * (1.0 - f64::EPSILON)));
    let above = free_space_modulation_ratio(sep(DICKE_SERIES_CUTOFF));
    let r2 = DICKE_SERIES_CUTOFF * DICKE_SERIES_CUTOFF;
    let series_at = 1.0 - r2 / 10.0 + r2 * r2 / 280.0;
    assert!(((below - above) / above).abs() <= 1e-12);
    assert!(((series_at - above) / above).abs() <= 1e-12);
}

#[test]
fn classification_crosses_once() {
    for eps in [1e-4, 1e-3, 2e-3, 0.01, 0.1] {
        let r_star = separation_for_threshold(eps).unwrap().value();
        let mut crossings = 0;
        let mut previous = None;
        for i in 1..=20_000 {
            let r = PI * i as f64 / 20_000.0;
            if (r - r_star).abs() < 1e-9 {
                continue;
            }
            let class = check_frozen(&static_free_space_rates(sep(r)).unwrap(), 0.0, eps)
                .unwrap()
                .classification;
            let expected = if r <= r_star { FrozenClass::SubradiantFrozen } else { FrozenClass::NotFrozen };
            assert_eq!(class, expected, "eps {eps}, R {r}, R* {r_star}");
            if previous.is_some_and(|p| p != class) {
                crossings += 1;
            }
            previous = Some(class);
        }
        assert_eq!(crossings, 1);
    }
}

#[test]
fn enhancement_matches_direct_comparison() {
    for i in 0..=100_000 {
        let th = -PI + 2.0 * PI * i as f64 / 100_000.0;
        let s = th.sin();
        let direct = s.abs() < 0.5 * (1.0 - s);
        assert_eq!(enhancement_region(th), direct, "theta = {th}");
    }
}
