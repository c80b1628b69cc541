//! Synthetic price fixtures with planted super-exponential regimes.
//!
//! A super-exponential rise is drawn as `-B (tc - t)^m` in log-price with
//! `0 < m < 1` and `tc` one day past the segment end, so log-price is convex
//! and increasing across the segment. Gaussian log-return noise is layered on
//! top of every day.

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::PriceSeries;

const BASE_PRICE: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Convex, increasing log-price gaining `rise` over the segment.
    SuperExponentialUp { rise: f64, exponent: f64 },
    /// Concave, decreasing log-price losing `fall` over the segment.
    SuperExponentialDown { fall: f64, exponent: f64 },
    /// Constant log drift per day (negative for a decline).
    Exponential { rate: f64 },
    FlatNoise,
}

impl Regime {
    pub fn bubble(rise: f64) -> Self {
        Regime::SuperExponentialUp { rise, exponent: 0.5 }
    }

    pub fn negative_bubble(fall: f64) -> Self {
        Regime::SuperExponentialDown { fall, exponent: 0.5 }
    }

    /// Cumulative drift after `u` days of a segment that is `n` days long.
    fn drift(&self, u: usize, n: usize) -> f64 {
        let u = u as f64;
        match *self {
            Regime::SuperExponentialUp { rise, exponent } => power_curve(u, n, rise, exponent),
            Regime::SuperExponentialDown { fall, exponent } => -power_curve(u, n, fall, exponent),
            Regime::Exponential { rate } => rate * u,
            Regime::FlatNoise => 0.0,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match *self {
            Regime::SuperExponentialUp { rise: size, exponent }
            | Regime::SuperExponentialDown { fall: size, exponent } => {
                if !(size > 0.0 && size.is_finite()) {
                    return Err(format!("magnitude must be positive, got {size}"));
                }
                if !(exponent > 0.0 && exponent < 1.0) {
                    return Err(format!("exponent must lie in (0, 1), got {exponent}"));
                }
                Ok(())
            }
            Regime::Exponential { rate } if !rate.is_finite() => Err("rate must be finite".into()),
            _ => Ok(()),
        }
    }
}

// g(u) = B (tc^m - (tc - u)^m), tc = n + 1, scaled so g(n) = total.
fn power_curve(u: f64, n: usize, total: f64, m: f64) -> f64 {
    let tc = n as f64 + 1.0;
    let scale = total / (tc.powf(m) - 1.0);
    scale * (tc.powf(m) - (tc - u).powf(m))
}

/// Inclusive 1-based day range carrying one regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub regime: Regime,
}

impl Segment {
    pub fn new(start: usize, end: usize, regime: Regime) -> Self {
        Segment { start, end, regime }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub length: usize,
    /// Days not covered by any segment are flat noise.
    pub segments: Vec<Segment>,
    /// Standard deviation of daily log-return noise.
    pub noise_scale: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// `count` bubbles, each followed by a crash and a slow decline.
    pub fn planted_bubbles(length: usize, count: usize, noise_scale: f64, seed: u64) -> Result<Self> {
        let segments = cycle_layout(length, count, Regime::bubble(0.5), Regime::Exponential { rate: -0.01 }, -0.0008)?;
        Ok(SyntheticSpec {
            length,
            segments,
            noise_scale,
            seed,
        })
    }

    /// Mirror image: `count` super-exponential declines, each followed by a
    /// rebound and a slow recovery.
    pub fn planted_negative_bubbles(length: usize, count: usize, noise_scale: f64, seed: u64) -> Result<Self> {
        let segments = cycle_layout(
            length,
            count,
            Regime::negative_bubble(0.5),
            Regime::Exponential { rate: 0.01 },
            0.0008,
        )?;
        Ok(SyntheticSpec {
            length,
            segments,
            noise_scale,
            seed,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(Error::SeriesTooShort {
                len: self.length,
                needed: 2,
            });
        }
        if !(self.noise_scale >= 0.0 && self.noise_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "noise scale must be nonnegative, got {}",
                self.noise_scale
            )));
        }
        for (idx, seg) in self.segments.iter().enumerate() {
            if seg.start == 0 || seg.start > seg.end || seg.end > self.length {
                return Err(Error::BadSegment(
                    idx,
                    format!("range {}..={} not inside 1..={}", seg.start, seg.end, self.length),
                ));
            }
            seg.regime.validate().map_err(|msg| Error::BadSegment(idx, msg))?;
        }
        let mut order: Vec<usize> = (0..self.segments.len()).collect();
        order.sort_by_key(|&i| self.segments[i].start);
        for pair in order.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if self.segments[b].start <= self.segments[a].end {
                return Err(Error::OverlappingSegments(a.min(b), a.max(b)));
            }
        }
        Ok(())
    }
}

fn cycle_layout(length: usize, count: usize, peak: Regime, reversal: Regime, drift: f64) -> Result<Vec<Segment>> {
    let lead = length * 3 / 40;
    let tail = length / 10;
    if count == 0 || length < lead + tail + count * 100 {
        return Err(Error::InvalidArgument(format!(
            "cannot fit {count} planted regimes into {length} days"
        )));
    }
    let cycle = (length - lead - tail) / count;
    let run_up = cycle * 3 / 5;
    let reversal_len = 30;
    let mut segments = vec![Segment::new(1, lead, Regime::Exponential { rate: drift })];
    let mut day = lead + 1;
    for _ in 0..count {
        segments.push(Segment::new(day, day + run_up - 1, peak));
        segments.push(Segment::new(day + run_up, day + run_up + reversal_len - 1, reversal));
        segments.push(Segment::new(
            day + run_up + reversal_len,
            day + cycle - 1,
            Regime::Exponential { rate: drift },
        ));
        day += cycle;
    }
    if day <= length {
        segments.push(Segment::new(day, length, Regime::Exponential { rate: drift }));
    }
    Ok(segments)
}

/// Generates the fixture. Identical specs give bitwise-identical series.
pub fn gen_synthetic(spec: &SyntheticSpec) -> Result<PriceSeries> {
    spec.validate()?;

    let mut regime_of: Vec<Option<usize>> = vec![None; spec.length];
    for (idx, seg) in spec.segments.iter().enumerate() {
        for slot in &mut regime_of[seg.start - 1..seg.end] {
            *slot = Some(idx);
        }
    }

    let noise = Normal::new(0.0, spec.noise_scale).expect("noise scale validated");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut log_values = Vec::with_capacity(spec.length);
    let mut level = BASE_PRICE.ln();
    for (pos, regime) in regime_of.iter().enumerate() {
        let day = pos + 1;
        let drift = match regime {
            Some(idx) => {
                let seg = &spec.segments[*idx];
                let n = seg.end - seg.start + 1;
                let u = day - seg.start + 1;
                seg.regime.drift(u, n) - seg.regime.drift(u - 1, n)
            }
            None => 0.0,
        };
        let shock = noise.sample(&mut rng);
        level += drift + shock;
        log_values.push(level);
    }

    let dates = business_days(NaiveDate::from_ymd_opt(1993, 7, 7).unwrap(), spec.length);
    let prices: Vec<f64> = log_values.iter().map(|y| y.exp()).collect();
    PriceSeries::from_dated_prices(dates, prices)
}

fn business_days(start: NaiveDate, count: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(count);
    let mut day = start;
    while out.len() < count {
        if !matches!(day.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(day);
        }
        day = day + Days::new(1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(segments: Vec<Segment>, noise: f64) -> SyntheticSpec {
        SyntheticSpec {
            length: 120,
            segments,
            noise_scale: noise,
            seed: 42,
        }
    }

    #[test]
    fn flat_without_noise_is_constant() {
        let s = gen_synthetic(&spec(vec![Segment::new(1, 120, Regime::FlatNoise)], 0.0)).unwrap();
        let first = s.prices()[0];
        assert!(s.prices().iter().all(|&p| p == first));
    }

    #[test]
    fn bubble_segment_is_convex_and_rising() {
        let seg = Segment::new(20, 90, Regime::bubble(0.8));
        let s = gen_synthetic(&spec(vec![seg], 0.0)).unwrap();
        let y = s.log_values();
        // day d sits at position d - 1; include the day before the segment.
        for d in 20..=90 {
            assert!(y[d - 1] > y[d - 2], "not rising at day {d}");
        }
        for d in 20..90 {
            let second = y[d] - 2.0 * y[d - 1] + y[d - 2];
            assert!(second > 0.0, "not convex at day {d}: {second}");
        }
        let top = (19..90).max_by(|&a, &b| y[a].total_cmp(&y[b])).unwrap() + 1;
        assert_eq!(top, 90);
        assert!((y[89] - y[18] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn negative_bubble_segment_is_concave_and_falling() {
        let seg = Segment::new(10, 60, Regime::negative_bubble(0.4));
        let s = gen_synthetic(&spec(vec![seg], 0.0)).unwrap();
        let y = s.log_values();
        for d in 10..60 {
            assert!(y[d - 1] < y[d - 2]);
            assert!(y[d] - 2.0 * y[d - 1] + y[d - 2] < 0.0);
        }
    }

    #[test]
    fn same_seed_is_bitwise_identical() {
        let sp = SyntheticSpec::planted_bubbles(2000, 4, 0.01, 42).unwrap();
        let a = gen_synthetic(&sp).unwrap();
        let b = gen_synthetic(&sp).unwrap();
        let bits = |s: &PriceSeries| s.prices().iter().map(|p| p.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        let c = gen_synthetic(&SyntheticSpec { seed: 43, ..sp }).unwrap();
        assert_ne!(bits(&a), bits(&c));
    }

    #[test]
    fn overlap_rejected() {
        let err = gen_synthetic(&spec(
            vec![
                Segment::new(50, 80, Regime::FlatNoise),
                Segment::new(10, 50, Regime::bubble(0.1)),
            ],
            0.0,
        ))
        .unwrap_err();
        assert!(matches!(err, Error::OverlappingSegments(0, 1)));
    }

    #[test]
    fn segment_outside_length_rejected() {
        let err = gen_synthetic(&spec(vec![Segment::new(100, 130, Regime::FlatNoise)], 0.0)).unwrap_err();
        assert!(matches!(err, Error::BadSegment(0, _)));
        let err = gen_synthetic(&spec(
            vec![Segment::new(1, 10, Regime::SuperExponentialUp { rise: 1.0, exponent: 1.5 })],
            0.0,
        ))
        .unwrap_err();
        assert!(matches!(err, Error::BadSegment(0, _)));
    }

    #[test]
    fn planted_layout_tops_inside_domain() {
        let sp = SyntheticSpec::planted_bubbles(2000, 4, 0.0, 1).unwrap();
        let tops: Vec<usize> = sp
            .segments
            .iter()
            .filter(|s| matches!(s.regime, Regime::SuperExponentialUp { .. }))
            .map(|s| s.end)
            .collect();
        assert_eq!(tops.len(), 4);
        assert!(tops[0] > 262 && tops[3] + 45 <= 2000, "{tops:?}");
    }

    #[test]
    fn dates_skip_weekends() {
        let d = business_days(NaiveDate::from_ymd_opt(2014, 4, 4).unwrap(), 3);
        assert_eq!(d[1], NaiveDate::from_ymd_opt(2014, 4, 7).unwrap());
    }
}
