mod common;

use common::*;
use netextreme::evaluation::{error_diagram, error_diagram_from_scores, p_value};
use netextreme::{detect_extremes, peak_indicator, trough_indicator, ExtremeKind, PriceSeries};
use proptest::prelude::*;
use rand::Rng;

fn walk(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.05f64..0.05, len).prop_map(|steps| {
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
    fn peaks_are_separated(y in walk(50..400), b in 1usize..40, a in 1usize..40) {
        prop_assume!(y.len() > a + b);
        let set = detect_extremes(&series(y), ExtremeKind::Peak, b, a).unwrap();
        for pair in set.days.windows(2) {
            prop_assert!(pair[1] - pair[0] > a.min(b));
        }
    }

    #[test]
    fn trough_set_is_peak_set_of_mirror(y in walk(50..300), b in 1usize..30, a in 1usize..30) {
        prop_assume!(y.len() > a + b);
        let s = series(y);
        let troughs = detect_extremes(&s, ExtremeKind::Trough, b, a).unwrap();
        let peaks = detect_extremes(&s.negated_log(), ExtremeKind::Peak, b, a).unwrap();
        prop_assert_eq!(&troughs.days, &peaks.days);
        prop_assert!(troughs.days.windows(2).all(|w| w[0] < w[1]));
        for &d in &troughs.days {
            prop_assert!(d > b && d + a <= s.len());
        }
    }

    #[test]
    fn diagram_geometry(y in walk(120..500), scope in 2usize..60, b in 1usize..30, a in 1usize..30, horizon in 0usize..3) {
        let s = series(y);
        prop_assume!(s.len() > scope + a && s.len() > a + b);
        for kind in [ExtremeKind::Peak, ExtremeKind::Trough] {
            let ind = if kind == ExtremeKind::Peak { peak_indicator(&s, scope) } else { trough_indicator(&s, scope) }.unwrap();
            let ext = detect_extremes(&s, kind, b, a).unwrap();
            let Ok(dia) = error_diagram(&ind, &ext, horizon) else { continue };
            let pts = &dia.points;
            prop_assert!(!pts.is_empty());
            prop_assert_eq!(pts.last().unwrap().unpredicted_fraction, 0.0);
            let mut prev = (0.0, 1.0);
            for p in pts {
                prop_assert!(p.alarm_fraction > prev.0 || (prev.0 == 0.0 && p.alarm_fraction > 0.0));
                prop_assert!(p.unpredicted_fraction < prev.1);
                prop_assert!((0.0..=1.0).contains(&p.alarm_fraction));
                prev = (p.alarm_fraction, p.unpredicted_fraction);
            }
            let area = p_value(&dia);
            prop_assert!(area > 0.0 && area <= 1.0);
        }
    }
}

#[test]
fn log_scale_absorbs_price_factor() {
    let mut r = rng(99);
    for _ in 0..20 {
        let y = random_walk(&mut r, 800, 0.015);
        let prices: Vec<f64> = y.iter().map(|v| v.exp()).collect();
        let factor = r.random_range(0.1..50.0);
        let a = PriceSeries::from_prices(prices.clone()).unwrap();
        let b = PriceSeries::from_prices(prices.iter().map(|p| p * factor).collect()).unwrap();
        for kind in [ExtremeKind::Peak, ExtremeKind::Trough] {
            let da = {
                let ind = if kind == ExtremeKind::Peak { peak_indicator(&a, 100) } else { trough_indicator(&a, 100) }.unwrap();
                error_diagram(&ind, &detect_extremes(&a, kind, 60, 20).unwrap(), 0).unwrap()
            };
            let db = {
                let ind = if kind == ExtremeKind::Peak { peak_indicator(&b, 100) } else { trough_indicator(&b, 100) }.unwrap();
                error_diagram(&ind, &detect_extremes(&b, kind, 60, 20).unwrap(), 0).unwrap()
            };
            assert_eq!(da.points, db.points);
        }
    }
}

#[test]
fn uniform_scores_sit_on_the_anti_diagonal() {
    let mut r = rng(3);
    let mut areas = Vec::new();
    for _ in 0..100 {
        let s = series(random_walk(&mut r, 1200, 0.01));
        let ext = detect_extremes(&s, ExtremeKind::Peak, 60, 20).unwrap();
        let scores: Vec<f64> = (0..s.len()).map(|_| r.random::<f64>()).collect();
        if let Ok(d) = error_diagram_from_scores(ExtremeKind::Peak, 100, &scores, &ext, 0) {
            areas.push(p_value(&d));
        }
    }
    let mean = areas.iter().sum::<f64>() / areas.len() as f64;
    assert!((mean - 0.5).abs() <= 0.05, "mean null area {mean}");
}
