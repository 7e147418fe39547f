use dimtrunc::bounds::{bound_for, holder_moment_bound, BoundOptions, Target};
use dimtrunc::coefficients::{tail_bracket, CoefficientSequence};
use dimtrunc::estimators::{fit_log_log, sample_paths, McConfig};
use dimtrunc::kernels::{Kernel, KernelSpec, WeightFunction};
use dimtrunc::measures::MeasureSpec;
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = MeasureSpec> {
    prop_oneof![
        Just(MeasureSpec::Uniform01),
        Just(MeasureSpec::UniformSym),
        (0.2f64..4.0).prop_map(|s| MeasureSpec::Exponential { scale: s }),
        (0.2f64..4.0).prop_map(|s| MeasureSpec::Logistic { scale: s }),
        (0.2f64..4.0).prop_map(|v| MeasureSpec::Gaussian { variance: v }),
    ]
}

fn kernel() -> impl Strategy<Value = KernelSpec> {
    prop_oneof![
        (0.05f64..0.95).prop_map(|beta| KernelSpec::FractionalWiener { beta }),
        (2u32..6).prop_map(|r| KernelSpec::TwoSidedRFolded { r }),
        (0.1f64..0.8).prop_map(|q| KernelSpec::korobov(WeightFunction::GeometricDecay { q })),
        (0.1f64..0.6).prop_map(|q| KernelSpec::hermite(WeightFunction::GeometricDecay { q })),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tails_lie_in_bracket_and_decrease(a in 1.2f64..4.0, k in 0usize..500) {
        let s = CoefficientSequence::power_law(a).unwrap();
        let (lo, hi) = tail_bracket(a, k).unwrap();
        let t = s.tail_abs_sum(k);
        prop_assert!(lo <= t && t <= hi);
        prop_assert!(s.tail_abs_sum(k + 1) < t);
    }

    #[test]
    fn enumerated_constants_fit_closed_forms(m in measure(), order in 1u32..=12) {
        let e = m.c_constant_enum(order).unwrap();
        let closed = m.c_constant_closed(order).unwrap();
        prop_assert!(closed.admits(e, 1e-12), "{m:?} M={order}: {e} vs {closed:?}");
        prop_assert!(e >= m.moment_abs(order).unwrap() * (1.0 - 1e-12));
    }

    #[test]
    fn kernels_are_symmetric_with_nonnegative_distance(spec in kernel(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let k = Kernel::new(spec).unwrap();
        prop_assert_eq!(k.eval(x, y).unwrap(), k.eval(y, x).unwrap());
        prop_assert!(k.sq_distance(x, y).unwrap() >= 0.0);
        prop_assert_eq!(k.sq_distance(x, x).unwrap(), 0.0);
    }

    #[test]
    fn fractional_distance_is_a_power_of_the_gap(beta in 0.05f64..0.95, x in -5.0f64..5.0, y in -5.0f64..5.0) {
        let k = Kernel::new(KernelSpec::FractionalWiener { beta }).unwrap();
        let d = k.sq_distance(x, y).unwrap();
        prop_assert!((d - (x - y).abs().powf(2.0 * beta)).abs() <= 1e-12);
    }

    #[test]
    fn bounds_decrease_in_k(spec in kernel(), a in 1.6f64..3.5, k in 0usize..200) {
        let s = CoefficientSequence::power_law(a).unwrap();
        let m = MeasureSpec::UniformSym;
        let t = Target::Kernel(spec);
        let o = BoundOptions::default();
        let b0 = bound_for(&t, &m, &s, k, &o, None).unwrap();
        let b1 = bound_for(&t, &m, &s, k + 1, &o, None).unwrap();
        prop_assert!(b1.value <= b0.value);
        prop_assert!(b0.value.is_finite() && b0.value >= 0.0);
    }

    #[test]
    fn moment_bound_is_the_smaller_candidate(m in measure(), a in 1.2f64..3.0, k in 0usize..100, beta in 0.05f64..1.0) {
        let s = CoefficientSequence::power_law(a).unwrap();
        let b = holder_moment_bound(&m, &s, k, beta).unwrap();
        let mean = m.mean();
        let second = (mean * s.tail_signed_sum(k)).powi(2) + m.variance() * s.tail_sq_sum(k);
        prop_assert!(b.value <= second.powf(beta) * (1.0 + 1e-12));
        if beta <= 0.5 {
            let first = (m.moment_abs(1).unwrap() * s.tail_abs_sum(k)).powf(2.0 * beta);
            prop_assert!(b.value <= first * (1.0 + 1e-12));
        }
    }

    #[test]
    fn log_log_fit_recovers_exact_power_laws(slope in -4.0f64..-0.1, scale in 0.01f64..100.0) {
        let pts: Vec<(f64, f64)> = (1..=12).map(|k| (k as f64, scale * (k as f64).powf(slope))).collect();
        let f = fit_log_log(&pts).unwrap();
        prop_assert!((f.slope - slope).abs() < 1e-10);
        prop_assert!(f.residual < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampling_is_independent_of_workers(seed in any::<u64>(), m in measure(), workers in 2usize..6) {
        let s = CoefficientSequence::power_law(2.0).unwrap();
        let c = McConfig::new(200, 64, seed, vec![1, 7, 30]).unwrap();
        let one = sample_paths(&m, &s, &c).unwrap();
        let many = sample_paths(&m, &s, &c.clone().with_workers(workers)).unwrap();
        prop_assert_eq!(&one, &many);
        for p in &one.paths {
            prop_assert!(p.abs >= p.full.abs());
        }
    }
}
