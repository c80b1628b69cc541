use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremes::ExtremeSet;
use crate::indicator::{ExtremeKind, IndicatorSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorDiagramPoint {
    /// Alarm days over prediction days.
    pub alarm_fraction: f64,
    /// Unpredicted extremes over all extremes in the domain.
    pub unpredicted_fraction: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorDiagram {
    pub kind: ExtremeKind,
    pub scope: usize,
    pub before: usize,
    pub after: usize,
    pub horizon: usize,
    pub series_len: usize,
    /// `T - a - S`.
    pub prediction_days: usize,
    pub total_extremes: usize,
    /// One point per threshold that predicted at least one new extreme.
    /// The implicit starting point (0, 1) is not stored.
    pub points: Vec<ErrorDiagramPoint>,
}

impl ErrorDiagram {
    /// Area under the right-continuous staircase through (0, 1) and the
    /// stored points, held flat out to alarm fraction 1.
    pub fn p_value(&self) -> f64 {
        p_value(self)
    }
}

/// Error diagram of `indicator` against `extremes`, descending the alarm
/// threshold through every distinct indicator value.
pub fn error_diagram(indicator: &IndicatorSeries, extremes: &ExtremeSet, horizon: usize) -> Result<ErrorDiagram> {
    if indicator.series_len != extremes.series_len {
        return Err(Error::LengthMismatch {
            indicator: indicator.series_len,
            extremes: extremes.series_len,
        });
    }
    error_diagram_from_scores(indicator.kind, indicator.scope, &indicator.values(), extremes, horizon)
}

/// Same as [`error_diagram`] for arbitrary real alarm scores. `scores[n]`
/// belongs to day `scope + 1 + n` and must cover at least the evaluation
/// domain `scope + 1 ..= T - a`; anything past it is ignored.
pub fn error_diagram_from_scores(
    kind: ExtremeKind,
    scope: usize,
    scores: &[f64],
    extremes: &ExtremeSet,
    horizon: usize,
) -> Result<ErrorDiagram> {
    let len = extremes.series_len;
    let after = extremes.after;
    if len <= scope + after {
        return Err(Error::EmptyDomain { len, scope, after });
    }
    let prediction_days = len - after - scope;
    if scores.len() < prediction_days {
        return Err(Error::InvalidArgument(format!(
            "{} scores do not cover {prediction_days} prediction days",
            scores.len()
        )));
    }
    let scores = &scores[..prediction_days];
    if let Some(pos) = scores.iter().position(|s| s.is_nan()) {
        return Err(Error::InvalidArgument(format!("score for day {} is NaN", scope + 1 + pos)));
    }

    let first_day = scope + 1;
    let mut is_extreme = vec![false; prediction_days];
    for &day in &extremes.days {
        if day >= first_day && day < first_day + prediction_days {
            is_extreme[day - first_day] = true;
        }
    }
    let total_extremes = is_extreme.iter().filter(|&&e| e).count();
    if total_extremes == 0 {
        return Err(Error::NoExtremes);
    }

    let mut order: Vec<usize> = (0..prediction_days).collect();
    order.sort_by(|&x, &y| scores[y].total_cmp(&scores[x]).then(x.cmp(&y)));

    let n_days = prediction_days as f64;
    let n_ext = total_extremes as f64;
    let mut predicted = vec![false; prediction_days];
    let mut predicted_count = 0;
    let mut alarms = 0;
    let mut points = Vec::new();
    let mut cursor = 0;
    while cursor < order.len() && predicted_count < total_extremes {
        let threshold = scores[order[cursor]];
        let before = predicted_count;
        while cursor < order.len() && scores[order[cursor]] == threshold {
            let day = order[cursor];
            alarms += 1;
            for target in day..=(day + horizon).min(prediction_days - 1) {
                if is_extreme[target] && !predicted[target] {
                    predicted[target] = true;
                    predicted_count += 1;
                }
            }
            cursor += 1;
        }
        if predicted_count > before {
            points.push(ErrorDiagramPoint {
                alarm_fraction: alarms as f64 / n_days,
                unpredicted_fraction: (total_extremes - predicted_count) as f64 / n_ext,
                threshold,
            });
        }
    }

    Ok(ErrorDiagram {
        kind,
        scope,
        before: extremes.before,
        after,
        horizon,
        series_len: len,
        prediction_days,
        total_extremes,
        points,
    })
}

/// Staircase area: `sum (x_k - x_{k-1}) * u_{k-1}` starting from (0, 1).
pub fn p_value(diagram: &ErrorDiagram) -> f64 {
    let mut area = 0.0;
    let (mut x_prev, mut u_prev) = (0.0, 1.0);
    for p in &diagram.points {
        area += (p.alarm_fraction - x_prev) * u_prev;
        x_prev = p.alarm_fraction;
        u_prev = p.unpredicted_fraction;
    }
    area + (1.0 - x_prev) * u_prev
}

/// Area under the polyline (0, 1), points..., (1, last unpredicted).
/// Reported next to the staircase value for comparison.
pub fn p_value_trapezoid(diagram: &ErrorDiagram) -> f64 {
    let mut area = 0.0;
    let (mut x_prev, mut u_prev) = (0.0, 1.0);
    for p in &diagram.points {
        area += (p.alarm_fraction - x_prev) * (u_prev + p.unpredicted_fraction) / 2.0;
        x_prev = p.alarm_fraction;
        u_prev = p.unpredicted_fraction;
    }
    area + (1.0 - x_prev) * u_prev
}

/// `threshold,alarm_fraction,unpredicted_fraction` after `#` metadata lines.
pub fn write_diagram_csv<W: Write>(diagram: &ErrorDiagram, mut out: W, comments: &[String]) -> Result<()> {
    let io = |e| Error::io("<error diagram csv>", e);
    writeln!(
        out,
        "# kind={} S={} a={} b={} T={} horizon={} prediction_days={} total_extremes={}",
        diagram.kind,
        diagram.scope,
        diagram.after,
        diagram.before,
        diagram.series_len,
        diagram.horizon,
        diagram.prediction_days,
        diagram.total_extremes
    )
    .map_err(io)?;
    writeln!(
        out,
        "# p_value={} p_value_trapezoid={}",
        p_value(diagram),
        p_value_trapezoid(diagram)
    )
    .map_err(io)?;
    for line in comments {
        writeln!(out, "# {line}").map_err(io)?;
    }
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["threshold", "alarm_fraction", "unpredicted_fraction"])?;
    for p in &diagram.points {
        wtr.write_record([
            p.threshold.to_string(),
            p.alarm_fraction.to_string(),
            p.unpredicted_fraction.to_string(),
        ])?;
    }
    wtr.flush().map_err(io)?;
    Ok(())
}
