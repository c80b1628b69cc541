use serde::Serialize;

use crate::error::{Error, Result};

pub const QUANTILE_METHOD: &str = "inclusive-linear";

/// Box-plot summary of a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    /// Most extreme observations inside `[q1 - 1.5 IQR, q3 + 1.5 IQR]`.
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
    pub quantile_method: &'static str,
}

/// Quantile of sorted data with position `(n - 1) p`, interpolating linearly.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn sweep_stats(values: &[f64]) -> Result<SweepStats> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("sample contains NaN".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (fence_lo, fence_hi) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let inside = || sorted.iter().copied().filter(|&v| v >= fence_lo && v <= fence_hi);
    // quartiles always lie inside the fences, so `inside` is never empty
    let whisker_low = inside().next().unwrap_or(q1);
    let whisker_high = inside().next_back().unwrap_or(q3);
    let outliers = values
        .iter()
        .copied()
        .filter(|&v| v < fence_lo || v > fence_hi)
        .collect();
    Ok(SweepStats {
        q1,
        median,
        q3,
        whisker_low,
        whisker_high,
        outliers,
        quantile_method: QUANTILE_METHOD,
    })
}
