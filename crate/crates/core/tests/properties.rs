//! Property tests over randomized admissible parameters. Each property is an
//! invariant of the underlying mathematics, not of the implementation path,
//! so shrinking a failure always yields an interpretable counterexample.

use proptest::prelude::*;

use hs2_core::coupling::{find_minimizers, g_eval, g_reflected, ExtendedT};
use hs2_core::deficit::{sigma_projection, TrialPair};
use hs2_core::params::{critical_exponent, make_params, HSParams};
use hs2_core::quad::weighted_integral;
use hs2_core::special::{log_gamma, mu_s};
use hs2_core::stability::fit_loglog;

/// Admissible tuples: exponents derived from (n, s) so alpha + beta = p holds
/// by construction.
fn admissible_params() -> impl Strategy<Value = HSParams> {
    (
        3u32..=6,
        0.1f64..1.9,
        0.05f64..0.95,
        0.2f64..5.0,
        0.2f64..5.0,
        0.05f64..3.0,
    )
        .prop_map(|(n, s, frac, lambda, mu, kappa)| {
            let p = critical_exponent(n, s);
            let alpha = 1.0 + frac * (p - 2.0);
            let beta = p - alpha;
            make_params(n, s, alpha, beta, lambda, mu, kappa).expect("admissible by construction")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_exponent_stays_in_range(params in admissible_params()) {
        let nf = f64::from(params.n);
        prop_assert!(params.p > 2.0);
        prop_assert!(params.p <= 2.0 * nf / (nf - 2.0) + 1e-12);
        prop_assert!((params.alpha + params.beta - params.p).abs() <= 1e-12);
    }

    #[test]
    fn reflection_identity(params in admissible_params(), t in 0.02f64..50.0) {
        let direct = g_eval(&params, ExtendedT::Finite(1.0 / t), 0).unwrap();
        let reflected = g_reflected(&params, t, 0).unwrap();
        prop_assert!((direct - reflected).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn derivatives_match_finite_differences(
        params in admissible_params(),
        t in 0.1f64..10.0,
        order in 1u8..=4,
    ) {
        let h = 1e-4 * t;
        let got = g_eval(&params, ExtendedT::Finite(t), order).unwrap();
        let lo = g_eval(&params, ExtendedT::Finite(t - h), order - 1).unwrap();
        let hi = g_eval(&params, ExtendedT::Finite(t + h), order - 1).unwrap();
        let fd = (hi - lo) / (2.0 * h);
        let scale = got.abs().max(fd.abs()).max(1.0);
        prop_assert!((got - fd).abs() <= 1e-5 * scale, "order {order} at t {t}: {got} vs {fd}");
    }

    #[test]
    fn trial_deficit_is_nonnegative(
        params in admissible_params(),
        a in 0.1f64..3.0,
        b in 0.0f64..3.0,
    ) {
        // the best constant is an infimum over exactly these pairs
        prop_assume!(params.kappa > 0.0);
        if let Ok(set) = find_minimizers(&params) {
            let pair = TrialPair::new(a, b, 1.0, set.points[0].t).unwrap();
            let deficit = pair.closed_form_deficit(&params, set.g_inf).unwrap();
            prop_assert!(deficit >= -1e-9 * (a * a + b * b) * mu_s(params.n, params.s).unwrap());
        }
    }

    #[test]
    fn projection_identity(a in 0.0f64..3.0, b in 0.0f64..3.0, t0 in 0.0f64..5.0) {
        // (a - sigma)^2 + (b - t0 sigma)^2 = a^2 + b^2 - (a + t0 b)^2/(1 + t0^2)
        let t = ExtendedT::Finite(t0);
        let sigma = sigma_projection(a, b, &t);
        let lhs = (a - sigma).powi(2) + (b - t0 * sigma).powi(2);
        let rhs = a * a + b * b - (a + t0 * b).powi(2) / (1.0 + t0 * t0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn loglog_fit_recovers_planted_slopes(
        slope in -3.0f64..5.0,
        amp in 0.1f64..10.0,
        wobble in 0.0f64..0.005,
    ) {
        let xs: Vec<f64> = (1..=10).map(|i| 0.03 * i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| amp * x.powf(slope) * (1.0 + if i % 2 == 0 { wobble } else { -wobble }))
            .collect();
        let (fit, intercept, _) = fit_loglog(&xs, &ys).unwrap();
        prop_assert!((fit - slope).abs() <= 0.02 + 10.0 * wobble);
        prop_assert!((intercept - amp.ln()).abs() <= 0.02 + 10.0 * wobble);
    }
}

proptest! {
    // quadrature-backed properties are slower; fewer cases
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_and_log_gamma_agree_on_gamma_integrals(c in -0.5f64..4.0) {
        // int_0^inf r^c e^{-r} dr = Gamma(c + 1), two independent routes
        let q = weighted_integral(|r| (-r).exp(), c, 1e-10).unwrap();
        let want = log_gamma(c + 1.0).unwrap().exp();
        prop_assert!(((q.value - want) / want).abs() <= 1e-8);
    }

    #[test]
    fn minimizers_are_global_minima(params in admissible_params(), probe in -5.0f64..5.0) {
        prop_assume!(params.kappa > 0.0);
        if let Ok(set) = find_minimizers(&params) {
            let t = probe.exp2();
            let g = g_eval(&params, ExtendedT::Finite(t), 0).unwrap();
            prop_assert!(g >= set.g_inf - 1e-10, "g({t}) = {g} < {}", set.g_inf);
        }
    }
}
