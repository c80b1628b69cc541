use netextreme::series::{load_csv, read_csv, write_series_csv};
use netextreme::synthetic::{gen_synthetic, Regime, Segment, SyntheticSpec};
use netextreme::PriceSeries;
use proptest::prelude::*;

proptest! {
    #[test]
    fn csv_round_trip(prices in prop::collection::vec(1e-6f64..1e7, 2..200)) {
        let dates: Vec<_> = (0..prices.len())
            .map(|n| chrono::NaiveDate::from_ymd_opt(2000, 1, 3).unwrap() + chrono::Days::new(n as u64))
            .collect();
        let s = PriceSeries::from_dated_prices(dates, prices).unwrap();
        let mut buf = Vec::new();
        write_series_csv(&s, &mut buf).unwrap();
        let back = read_csv(buf.as_slice(), "price", "date").unwrap();
        prop_assert_eq!(back.prices(), s.prices());
        prop_assert_eq!(back.dates(), s.dates());
        let days: Vec<usize> = back.points().map(|p| p.day_index).collect();
        prop_assert_eq!(days, (1..=s.len()).collect::<Vec<_>>());
    }
}

#[test]
fn long_file_keeps_every_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("index.csv");
    let spec = SyntheticSpec {
        length: 5479,
        segments: vec![],
        noise_scale: 0.01,
        seed: 5,
    };
    let s = gen_synthetic(&spec).unwrap();
    write_series_csv(&s, std::fs::File::create(&path).unwrap()).unwrap();
    let back = load_csv(&path, "price", "date").unwrap();
    assert_eq!(back.len(), 5479);
    assert_eq!(back.point(5479).unwrap().day_index, 5479);
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_csv("/nonexistent/file.csv", "close", "date").unwrap_err();
    assert!(err.to_string().contains("/nonexistent/file.csv"));
}

#[test]
fn curvature_sign_follows_regime() {
    let spec = SyntheticSpec {
        length: 400,
        segments: vec![
            Segment::new(20, 150, Regime::bubble(0.7)),
            Segment::new(151, 200, Regime::Exponential { rate: -0.004 }),
            Segment::new(201, 330, Regime::SuperExponentialDown { fall: 0.6, exponent: 0.3 }),
        ],
        noise_scale: 0.0,
        seed: 0,
    };
    let y = gen_synthetic(&spec).unwrap().log_values().to_vec();
    let second = |d: usize| y[d] - 2.0 * y[d - 1] + y[d - 2];
    // day d is y[d - 1]; second(d) is centred on day d
    assert!((21..150).all(|d| second(d) > 0.0));
    assert!((202..330).all(|d| second(d) < 0.0));
    let top = (20..=150).max_by(|&a, &b| y[a - 1].total_cmp(&y[b - 1])).unwrap();
    assert!(150 - top <= 5);
}
