//! Peak and trough indicators: constrained left-looking degrees over the
//! look-back scope, divided by the scope.

use std::io::Write;

use crate::error::{Error, Result};
use crate::series::PriceSeries;
use crate::visibility::{degree_sequence, DirectionFilter, LinkKind};

/// Trading days in a calendar year.
pub const DEFAULT_SCOPE: usize = 262;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremeKind {
    Peak,
    Trough,
}

impl ExtremeKind {
    pub fn name(self) -> &'static str {
        match self {
            ExtremeKind::Peak => "peak",
            ExtremeKind::Trough => "trough",
        }
    }

    pub(crate) fn link(self) -> (LinkKind, DirectionFilter) {
        match self {
            ExtremeKind::Peak => (LinkKind::Visibility, DirectionFilter::RequireLowerLeft),
            ExtremeKind::Trough => (LinkKind::AbsoluteInvisibility, DirectionFilter::RequireHigherLeft),
        }
    }
}

impl std::fmt::Display for ExtremeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ExtremeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "peak" | "peaks" => Ok(ExtremeKind::Peak),
            "trough" | "troughs" => Ok(ExtremeKind::Trough),
            other => Err(Error::InvalidArgument(format!("unknown extreme kind `{other}`"))),
        }
    }
}

/// Indicator values for days `scope + 1 ..= series_len`. Earlier days have
/// no value.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSeries {
    pub kind: ExtremeKind,
    pub scope: usize,
    pub series_len: usize,
    degrees: Vec<usize>,
}

impl IndicatorSeries {
    /// Builds an indicator from raw degrees; `degrees[n]` is day `scope + 1 + n`.
    pub fn from_degrees(kind: ExtremeKind, scope: usize, degrees: Vec<usize>) -> Result<Self> {
        if scope < 2 {
            return Err(Error::ScopeTooSmall(scope));
        }
        if let Some(&bad) = degrees.iter().find(|&&d| d > scope) {
            return Err(Error::InvalidArgument(format!("degree {bad} exceeds scope {scope}")));
        }
        Ok(IndicatorSeries {
            kind,
            scope,
            series_len: scope + degrees.len(),
            degrees,
        })
    }

    pub fn first_day(&self) -> usize {
        self.scope + 1
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, day: usize) -> Option<usize> {
        day.checked_sub(self.first_day())
            .and_then(|n| self.degrees.get(n))
            .copied()
    }

    pub fn value(&self, day: usize) -> Option<f64> {
        self.degree(day).map(|d| d as f64 / self.scope as f64)
    }

    pub fn values(&self) -> Vec<f64> {
        let scope = self.scope as f64;
        self.degrees.iter().map(|&d| d as f64 / scope).collect()
    }

    /// `(day, value)` pairs in day order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let first = self.first_day();
        let scope = self.scope as f64;
        self.degrees
            .iter()
            .enumerate()
            .map(move |(n, &d)| (first + n, d as f64 / scope))
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Indicator of the requested kind.
pub fn indicator(series: &PriceSeries, scope: usize, kind: ExtremeKind) -> Result<IndicatorSeries> {
    if scope < 2 {
        return Err(Error::ScopeTooSmall(scope));
    }
    let (link, filter) = kind.link();
    let seq = degree_sequence(series, scope, link, filter)?;
    Ok(IndicatorSeries {
        kind,
        scope,
        series_len: series.len(),
        degrees: seq.degrees,
    })
}

/// Share of the last `scope` days that are lower than day `i` and
/// visibility-linked to it.
pub fn peak_indicator(series: &PriceSeries, scope: usize) -> Result<IndicatorSeries> {
    indicator(series, scope, ExtremeKind::Peak)
}

/// Share of the last `scope` days that are higher than day `i` and linked to
/// it under absolute invisibility.
pub fn trough_indicator(series: &PriceSeries, scope: usize) -> Result<IndicatorSeries> {
    indicator(series, scope, ExtremeKind::Trough)
}

/// `day_index,date,indicator_value` preceded by a `#` metadata line.
pub fn write_indicator_csv<W: Write>(
    series: &PriceSeries,
    ind: &IndicatorSeries,
    mut out: W,
    comments: &[String],
) -> Result<()> {
    let io = |e| Error::io("<indicator csv>", e);
    writeln!(out, "# kind={} scope={}", ind.kind, ind.scope).map_err(io)?;
    for line in comments {
        writeln!(out, "# {line}").map_err(io)?;
    }
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["day_index", "date", "indicator_value"])?;
    for (day, value) in ind.iter() {
        wtr.write_record([day.to_string(), series.date_string(day), value.to_string()])?;
    }
    wtr.flush().map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logs(v: &[f64]) -> PriceSeries {
        PriceSeries::from_log_values(v.to_vec()).unwrap()
    }

    #[test]
    fn convex_rise_saturates_peak_indicator() {
        let y: Vec<f64> = (0..60).map(|t| (t as f64 * 0.05).exp()).collect();
        let ind = peak_indicator(&logs(&y), 20).unwrap();
        assert_eq!(ind.len(), 40);
        assert!(ind.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn monotone_fall_zero_peak() {
        let y: Vec<f64> = (0..30).map(|t| -(t as f64) * 0.01).collect();
        let ind = peak_indicator(&logs(&y), 5).unwrap();
        assert!(ind.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn concave_fall_saturates_trough_indicator() {
        let y: Vec<f64> = (0..60).map(|t| -(t as f64 * 0.05).exp()).collect();
        let ind = trough_indicator(&logs(&y), 20).unwrap();
        assert!(ind.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn monotone_rise_zero_trough() {
        let y: Vec<f64> = (0..30).map(|t| (t as f64) * 0.01).collect();
        let ind = trough_indicator(&logs(&y), 5).unwrap();
        assert!(ind.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn hand_worked_values() {
        let p = peak_indicator(&logs(&[0.0, 3.0, 1.0, 2.0]), 3).unwrap();
        assert_eq!(p.first_day(), 4);
        assert_eq!(p.value(4), Some(1.0 / 3.0));
        assert_eq!(p.value(3), None);
        let t = trough_indicator(&logs(&[0.0, -3.0, -1.0, -2.0]), 3).unwrap();
        assert_eq!(t.value(4), Some(1.0 / 3.0));
    }

    #[test]
    fn scope_preconditions() {
        let s = logs(&[0.0, 1.0, 2.0]);
        assert!(matches!(peak_indicator(&s, 0), Err(Error::ScopeTooSmall(0))));
        assert!(matches!(peak_indicator(&s, 1), Err(Error::ScopeTooSmall(1))));
        assert!(matches!(peak_indicator(&s, 3), Err(Error::ScopeTooLarge { .. })));
        assert_eq!(peak_indicator(&s, 2).unwrap().len(), 1);
    }

    #[test]
    fn csv_layout() {
        let s = logs(&[0.0, 3.0, 1.0, 2.0]);
        let p = peak_indicator(&s, 3).unwrap();
        let mut buf = Vec::new();
        write_indicator_csv(&s, &p, &mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# kind=peak scope=3\nday_index,date,indicator_value\n4,,0.3333333333333333\n"
        );
    }
}
