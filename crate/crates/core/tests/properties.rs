use ccpt_core::npm::Family;
use ccpt_core::number_theory::{divisor_set, gcd, lcm, totient};
use ccpt_core::period::candidates::min_data_length;
use ccpt_core::scalar::max_abs_diff;
use ccpt_core::transform::{analyze, occpt_analysis, parseval_energy, shift_coefficients, synthesize};
use proptest::prelude::*;

fn signal() -> impl Strategy<Value = Vec<f64>> {
    (1usize..=48).prop_flat_map(|n| prop::collection::vec(-10.0f64..10.0, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn totient_sums_over_divisors(n in 1usize..2000) {
        prop_assert_eq!(divisor_set(n).iter().map(totient).sum::<usize>(), n);
    }

    #[test]
    fn gcd_lcm_product(a in 1usize..5000, b in 1usize..5000) {
        prop_assert_eq!(gcd(a, b) * lcm(a, b).unwrap(), a * b);
    }

    #[test]
    fn nmin_is_order_free(mut v in prop::collection::vec(1usize..40, 2..6)) {
        let a = min_data_length(&v).unwrap();
        v.reverse();
        prop_assert_eq!(a, min_data_length(&v).unwrap());
        let max = *v.iter().max().unwrap();
        prop_assert!(a >= max);
    }

    #[test]
    fn round_trip(x in signal(), fam in prop::sample::select(vec![Family::Occpt, Family::Ccpt1, Family::Ccpt2, Family::Rpt])) {
        let c = analyze(fam, &x).unwrap();
        let back = synthesize(&c).unwrap();
        let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!(max_abs_diff(&x, &back) <= 1e-8 * scale);
    }

    #[test]
    fn energy_preserved(x in signal()) {
        let e: f64 = x.iter().map(|v| v * v).sum();
        let got = parseval_energy(&occpt_analysis(&x).unwrap()).unwrap();
        prop_assert!((got - e).abs() <= 1e-9 * e.max(1.0));
    }

    #[test]
    fn shifts_compose(x in signal(), a in -60i64..60, b in -60i64..60) {
        let c = occpt_analysis(&x).unwrap();
        let ab = shift_coefficients(&shift_coefficients(&c, a).unwrap(), b).unwrap();
        let direct = shift_coefficients(&c, a + b).unwrap();
        prop_assert!(max_abs_diff(ab.flat(), direct.flat()) <= 1e-9);
        let full = shift_coefficients(&c, x.len() as i64).unwrap();
        prop_assert!(max_abs_diff(full.flat(), c.flat()) <= 1e-12);
    }
}
