mod common;

use common::*;
use netextreme::{peak_indicator, trough_indicator, PriceSeries, Scale};
use proptest::prelude::*;

fn walk(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.05f64..0.05, 5..max_len).prop_map(|steps| {
        steps
            .iter()
            .scan(0.0, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trough_is_peak_of_mirror(y in walk(120), scope in 2usize..40) {
        prop_assume!(y.len() > scope);
        let s = series(y);
        let trough = trough_indicator(&s, scope).unwrap();
        let mirrored = peak_indicator(&s.negated_log(), scope).unwrap();
        prop_assert_eq!(trough.degrees(), mirrored.degrees());
    }

    #[test]
    fn values_are_degrees_over_scope(y in walk(120), scope in 2usize..40) {
        prop_assume!(y.len() > scope);
        let s = series(y);
        for ind in [peak_indicator(&s, scope).unwrap(), trough_indicator(&s, scope).unwrap()] {
            prop_assert_eq!(ind.len(), s.len() - scope);
            for (day, v) in ind.iter() {
                prop_assert!((0.0..=1.0).contains(&v));
                let d = ind.degree(day).unwrap();
                prop_assert!(d <= scope);
                prop_assert_eq!(v, d as f64 / scope as f64);
            }
        }
    }

    #[test]
    fn truncation_does_not_change_past_values(y in walk(150), scope in 2usize..30, cut in any::<prop::sample::Index>()) {
        prop_assume!(y.len() > scope + 1);
        let full = series(y.clone());
        let end = scope + 1 + cut.index(y.len() - scope);
        let head = series(y[..end].to_vec());
        let a = peak_indicator(&full, scope).unwrap();
        let b = peak_indicator(&head, scope).unwrap();
        for (day, v) in b.iter() {
            prop_assert_eq!(a.value(day).unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn raw_scale_is_homogeneous(prices in prop::collection::vec(1.0f64..500.0, 20..80), power in -8i32..8) {
        // powers of two scale every float exactly
        let factor = 2f64.powi(power);
        let scaled: Vec<f64> = prices.iter().map(|p| p * factor).collect();
        let a = PriceSeries::from_prices(prices).unwrap().with_scale(Scale::Raw);
        let b = PriceSeries::from_prices(scaled).unwrap().with_scale(Scale::Raw);
        prop_assert_eq!(peak_indicator(&a, 10).unwrap().degrees().to_vec(), peak_indicator(&b, 10).unwrap().degrees().to_vec());
        prop_assert_eq!(trough_indicator(&a, 10).unwrap().degrees().to_vec(), trough_indicator(&b, 10).unwrap().degrees().to_vec());
    }
}

#[test]
fn raw_and_log_can_disagree() {
    // quadratic growth: convex in raw price, concave in log price
    let prices: Vec<f64> = (1..=30).map(|t| 100.0 + (t * t) as f64).collect();
    let raw = PriceSeries::from_prices(prices.clone()).unwrap().with_scale(Scale::Raw);
    let log = PriceSeries::from_prices(prices).unwrap();
    let r = peak_indicator(&raw, 10).unwrap();
    let l = peak_indicator(&log, 10).unwrap();
    assert!(r.values().iter().all(|&v| v == 1.0));
    assert!(l.values().iter().any(|&v| v < 1.0));
}

#[test]
fn perturbing_outside_window_keeps_value() {
    let mut r = rng(5);
    for _ in 0..20 {
        let y = random_walk(&mut r, 400, 0.02);
        let scope = 50;
        let i = 300;
        let mut moved = y.clone();
        for v in &mut moved[..i - scope - 1] {
            *v += 3.0;
        }
        for v in &mut moved[i..] {
            *v -= 7.0;
        }
        let a = peak_indicator(&series(y), scope).unwrap();
        let b = peak_indicator(&series(moved), scope).unwrap();
        assert_eq!(a.value(i), b.value(i));
    }
}
