//! Realized peaks and troughs: days holding the maximum (minimum) of the
//! window running `b` days back and `a` days forward.

use std::collections::VecDeque;
use std::io::Write;

use crate::error::{Error, Result};
use crate::indicator::ExtremeKind;
use crate::series::PriceSeries;

pub const DEFAULT_BEFORE: usize = 131;
pub const DEFAULT_AFTER: usize = 45;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeSet {
    pub kind: ExtremeKind,
    pub before: usize,
    pub after: usize,
    pub series_len: usize,
    /// Sorted 1-based day indices.
    pub days: Vec<usize>,
}

impl ExtremeSet {
    pub fn len(&self) -> usize {
        self.days.len()
    }

    pub fn is_empty(&self) -> bool {
        self.days.is_empty()
    }

    pub fn contains(&self, day: usize) -> bool {
        self.days.binary_search(&day).is_ok()
    }
}

/// Maximum of every length-`width` window: `out[p] = max(values[p..p + width])`.
fn sliding_max(values: &[f64], width: usize) -> Vec<f64> {
    debug_assert!(width >= 1 && width <= values.len());
    let mut out = Vec::with_capacity(values.len() + 1 - width);
    let mut deque: VecDeque<usize> = VecDeque::new();
    for (pos, &v) in values.iter().enumerate() {
        while deque.back().is_some_and(|&q| values[q] <= v) {
            deque.pop_back();
        }
        deque.push_back(pos);
        if deque[0] + width <= pos {
            deque.pop_front();
        }
        if pos + 1 >= width {
            out.push(values[deque[0]]);
        }
    }
    out
}

/// Days whose value is the extreme of `[i - b, i + a]`, with both ends of the
/// window inside the series. Within a window, equal extreme values resolve to
/// the earliest day.
pub fn detect_extremes(series: &PriceSeries, kind: ExtremeKind, before: usize, after: usize) -> Result<ExtremeSet> {
    if before == 0 || after == 0 {
        return Err(Error::EmptyWindow { before, after });
    }
    let len = series.len();
    if len <= before + after {
        return Err(Error::WindowTooLarge { before, after, len });
    }
    let values: Vec<f64> = match kind {
        ExtremeKind::Peak => series.heights().to_vec(),
        ExtremeKind::Trough => series.heights().iter().map(|y| -y).collect(),
    };
    let left = sliding_max(&values, before);
    let right = sliding_max(&values, after);

    // 0-based position p needs p - before >= 0 and p + after <= len - 1
    let days = (before..len - after)
        .filter(|&p| values[p] > left[p - before] && values[p] >= right[p + 1])
        .map(|p| p + 1)
        .collect();
    Ok(ExtremeSet {
        kind,
        before,
        after,
        series_len: len,
        days,
    })
}

/// `day_index,date,price,kind`.
pub fn write_extremes_csv<W: Write>(series: &PriceSeries, sets: &[&ExtremeSet], out: W) -> Result<()> {
    let mut rows: Vec<(usize, ExtremeKind)> = sets
        .iter()
        .flat_map(|s| s.days.iter().map(move |&d| (d, s.kind)))
        .collect();
    rows.sort_by_key(|&(d, k)| (d, k == ExtremeKind::Trough));
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["day_index", "date", "price", "kind"])?;
    for (day, kind) in rows {
        wtr.write_record([
            day.to_string(),
            series.date_string(day),
            series.prices()[day - 1].to_string(),
            kind.name().to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<extremes csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logs(v: &[f64]) -> PriceSeries {
        PriceSeries::from_log_values(v.to_vec()).unwrap()
    }

    fn brute(values: &[f64], kind: ExtremeKind, b: usize, a: usize) -> Vec<usize> {
        let sign = if kind == ExtremeKind::Peak { 1.0 } else { -1.0 };
        (b..values.len() - a)
            .filter(|&p| {
                let y = sign * values[p];
                (p - b..p).all(|q| sign * values[q] < y) && (p + 1..=p + a).all(|q| sign * values[q] <= y)
            })
            .map(|p| p + 1)
            .collect()
    }

    #[test]
    fn sliding_max_small() {
        assert_eq!(sliding_max(&[1.0, 3.0, 2.0, 5.0, 4.0], 2), vec![3.0, 3.0, 5.0, 5.0]);
        assert_eq!(sliding_max(&[2.0, 1.0], 1), vec![2.0, 1.0]);
    }

    #[test]
    fn unique_tent_top() {
        let y: Vec<f64> = (0..41).map(|t| -((t as f64) - 20.0).abs()).collect();
        let s = logs(&y);
        let peaks = detect_extremes(&s, ExtremeKind::Peak, 5, 5).unwrap();
        assert_eq!(peaks.days, vec![21]);
        let troughs = detect_extremes(&s, ExtremeKind::Trough, 5, 5).unwrap();
        assert!(troughs.is_empty());
    }

    #[test]
    fn monotone_rise_has_no_peaks() {
        let y: Vec<f64> = (0..50).map(|t| t as f64).collect();
        assert!(detect_extremes(&logs(&y), ExtremeKind::Peak, 3, 4).unwrap().is_empty());
    }

    #[test]
    fn plateau_keeps_earliest() {
        let s = logs(&[0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0, -1.0]);
        let peaks = detect_extremes(&s, ExtremeKind::Peak, 2, 2).unwrap();
        assert_eq!(peaks.days, vec![3]);
    }

    #[test]
    fn boundary_days_excluded() {
        // global max on day 1 and min on the last day have no full window
        let s = logs(&[9.0, 1.0, 2.0, 1.5, 3.0, 2.5, -9.0]);
        let peaks = detect_extremes(&s, ExtremeKind::Peak, 1, 1).unwrap();
        assert_eq!(peaks.days, vec![3, 5]);
        let troughs = detect_extremes(&s, ExtremeKind::Trough, 1, 1).unwrap();
        assert_eq!(troughs.days, vec![2, 4]);
    }

    #[test]
    fn window_errors() {
        let s = logs(&[0.0, 1.0, 2.0, 3.0]);
        assert!(matches!(
            detect_extremes(&s, ExtremeKind::Peak, 0, 1),
            Err(Error::EmptyWindow { .. })
        ));
        assert!(matches!(
            detect_extremes(&s, ExtremeKind::Peak, 2, 2),
            Err(Error::WindowTooLarge { .. })
        ));
        assert!(detect_extremes(&s, ExtremeKind::Peak, 2, 1).is_ok());
    }

    #[test]
    fn matches_brute_force_on_walks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let mut level = 0.0;
            // coarse steps force plenty of ties
            let y: Vec<f64> = (0..300)
                .map(|_| {
                    level += rng.random_range(-2i32..=2) as f64;
                    level
                })
                .collect();
            let s = logs(&y);
            let b = rng.random_range(1..40);
            let a = rng.random_range(1..40);
            for kind in [ExtremeKind::Peak, ExtremeKind::Trough] {
                assert_eq!(detect_extremes(&s, kind, b, a).unwrap().days, brute(&y, kind, b, a));
            }
        }
    }

    #[test]
    fn csv_rows_sorted() {
        let s = logs(&[0.0, 2.0, 1.0, 3.0, 0.5, 1.0]);
        let p = detect_extremes(&s, ExtremeKind::Peak, 1, 1).unwrap();
        let t = detect_extremes(&s, ExtremeKind::Trough, 1, 1).unwrap();
        let mut buf = Vec::new();
        write_extremes_csv(&s, &[&p, &t], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let kinds: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
        assert_eq!(kinds, vec!["peak", "trough", "peak", "trough"]);
    }
}
