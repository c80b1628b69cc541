use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::diagram::{error_diagram, p_value};
use super::stats::{sweep_stats, SweepStats};
use crate::error::{Error, Result};
use crate::extremes::{detect_extremes, ExtremeSet};
use crate::indicator::{indicator, ExtremeKind, IndicatorSeries};
use crate::series::PriceSeries;

/// Axis values of an `(S, a, b)` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub scopes: Vec<usize>,
    pub afters: Vec<usize>,
    pub befores: Vec<usize>,
}

impl Default for SweepGrid {
    /// S = 200, 230, ..., 470 and a, b = 30, 45, ..., 165.
    fn default() -> Self {
        SweepGrid {
            scopes: (0..10).map(|n| 200 + 30 * n).collect(),
            afters: (0..10).map(|n| 30 + 15 * n).collect(),
            befores: (0..10).map(|n| 30 + 15 * n).collect(),
        }
    }
}

impl SweepGrid {
    pub fn single(scope: usize, after: usize, before: usize) -> Self {
        SweepGrid {
            scopes: vec![scope],
            afters: vec![after],
            befores: vec![before],
        }
    }

    /// Triples in `S`, then `a`, then `b` order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.scopes.len() * self.afters.len() * self.befores.len());
        for &s in &self.scopes {
            for &a in &self.afters {
                for &b in &self.befores {
                    out.push((s, a, b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    #[serde(rename = "S")]
    pub scope: usize,
    #[serde(rename = "a")]
    pub after: usize,
    #[serde(rename = "b")]
    pub before: usize,
    /// `None` when the triple was excluded.
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub kind: ExtremeKind,
    /// One entry per grid triple, in grid order.
    pub entries: Vec<SweepEntry>,
    /// Summary of the valid p-values; `None` if every triple was excluded.
    pub stats: Option<SweepStats>,
}

impl SweepResult {
    pub fn valid(&self) -> impl Iterator<Item = &SweepEntry> {
        self.entries.iter().filter(|e| e.p_value.is_some())
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.entries.iter().filter_map(|e| e.p_value).collect()
    }

    pub fn excluded_count(&self) -> usize {
        self.entries.len() - self.valid().count()
    }

    pub fn lookup(&self, scope: usize, after: usize, before: usize) -> Option<&SweepEntry> {
        self.entries
            .iter()
            .find(|e| e.scope == scope && e.after == after && e.before == before)
    }
}

/// p-value for every `(S, a, b)` triple. Triples the series cannot support
/// (`T <= S + a`, `T <= a + b`, or no extremes in the domain) are kept with
/// no p-value and a reason. Output order follows the grid regardless of
/// scheduling.
pub fn parameter_sweep(series: &PriceSeries, grid: &SweepGrid, kind: ExtremeKind, horizon: usize) -> Result<SweepResult> {
    if grid.scopes.is_empty() || grid.afters.is_empty() || grid.befores.is_empty() {
        return Err(Error::InvalidArgument("sweep grid has an empty axis".into()));
    }
    let len = series.len();

    let indicators: HashMap<usize, Result<IndicatorSeries>> = grid
        .scopes
        .par_iter()
        .map(|&s| (s, indicator(series, s, kind)))
        .collect();
    let mut windows: Vec<(usize, usize)> = grid
        .afters
        .iter()
        .flat_map(|&a| grid.befores.iter().map(move |&b| (a, b)))
        .collect();
    windows.sort_unstable();
    windows.dedup();
    let extremes: HashMap<(usize, usize), Result<ExtremeSet>> = windows
        .par_iter()
        .map(|&(a, b)| ((a, b), detect_extremes(series, kind, b, a)))
        .collect();

    let entries = grid
        .triples()
        .into_par_iter()
        .map(|(s, a, b)| {
            let outcome = if len <= s + a {
                Err(format!("T = {len} <= S + a = {}", s + a))
            } else {
                match (&indicators[&s], &extremes[&(a, b)]) {
                    (Ok(ind), Ok(ext)) => error_diagram(ind, ext, horizon)
                        .map(|d| p_value(&d))
                        .map_err(|e| e.to_string()),
                    (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                }
            };
            let (p_value, excluded_reason) = match outcome {
                Ok(p) => (Some(p), None),
                Err(reason) => (None, Some(reason)),
            };
            SweepEntry {
                scope: s,
                after: a,
                before: b,
                p_value,
                excluded_reason,
            }
        })
        .collect::<Vec<_>>();

    let p_values: Vec<f64> = entries.iter().filter_map(|e| e.p_value).collect();
    let stats = if p_values.is_empty() {
        None
    } else {
        Some(sweep_stats(&p_values)?)
    };
    Ok(SweepResult { kind, entries, stats })
}

/// `S,a,b,p_value` for the valid triples.
pub fn write_sweep_csv<W: Write>(result: &SweepResult, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["S", "a", "b", "p_value"])?;
    for e in result.valid() {
        wtr.write_record([
            e.scope.to_string(),
            e.after.to_string(),
            e.before.to_string(),
            e.p_value.unwrap_or(f64::NAN).to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<sweep csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct StatsDocument<'a> {
    kind: &'a str,
    #[serde(flatten)]
    stats: Option<&'a SweepStats>,
    valid: usize,
    excluded: usize,
    excluded_triples: Vec<&'a SweepEntry>,
}

/// `{q1, median, q3, whisker_low, whisker_high, outliers, ...}` plus the
/// excluded-triple report.
pub fn sweep_stats_json(result: &SweepResult) -> Result<String> {
    let doc = StatsDocument {
        kind: result.kind.name(),
        stats: result.stats.as_ref(),
        valid: result.entries.len() - result.excluded_count(),
        excluded: result.excluded_count(),
        excluded_triples: result.entries.iter().filter(|e| e.p_value.is_none()).collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(e.to_string()))
}
