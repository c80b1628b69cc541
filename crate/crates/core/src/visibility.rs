//! Visibility and absolute-invisibility links between days, and the
//! left-looking degree scans the indicators are built from.
//!
//! Every link decision reduces to one geometric question: does point `k`
//! lie strictly below (or strictly above) the chord joining `j` and `i`?
//! That orientation sign is evaluated with an adaptive exact predicate, so a
//! point lying exactly on the chord breaks the link for both kinds and the
//! fast scan agrees with pairwise evaluation bit for bit.

use std::io::Write;

use rayon::prelude::*;
use robust::{orient2d, Coord};

use crate::error::{Error, Result};
use crate::series::PriceSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// Every intermediate point strictly below the chord.
    Visibility,
    /// Every intermediate point strictly above the chord.
    AbsoluteInvisibility,
}

/// Extra condition on the left endpoint `j` relative to the pivot `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DirectionFilter {
    /// Count `j` only when `y_i > y_j`.
    RequireLowerLeft,
    /// Count `j` only when `y_i < y_j`.
    RequireHigherLeft,
    None,
}

impl DirectionFilter {
    #[inline]
    fn admits(self, y_pivot: f64, y_left: f64) -> bool {
        match self {
            DirectionFilter::RequireLowerLeft => y_pivot > y_left,
            DirectionFilter::RequireHigherLeft => y_pivot < y_left,
            DirectionFilter::None => true,
        }
    }
}

/// Left-looking degrees for days `scope + 1 ..= T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub kind: LinkKind,
    pub filter: DirectionFilter,
    pub scope: usize,
    /// `degrees[n]` belongs to day `scope + 1 + n`.
    pub degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn first_day(&self) -> usize {
        self.scope + 1
    }

    pub fn get(&self, day: usize) -> Option<usize> {
        day.checked_sub(self.first_day())
            .and_then(|n| self.degrees.get(n))
            .copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let first = self.first_day();
        self.degrees.iter().enumerate().map(move |(n, &d)| (first + n, d))
    }
}

#[inline]
fn point(pos: usize, heights: &[f64]) -> Coord<f64> {
    Coord {
        x: pos as f64,
        y: heights[pos],
    }
}

/// Sign of the position of `k` against the chord from `left` to `right`
/// (`left.x < right.x`): negative below, positive above, zero on it.
#[inline]
pub(crate) fn chord_side(left: Coord<f64>, right: Coord<f64>, k: Coord<f64>) -> f64 {
    orient2d(left, right, k)
}

#[inline]
fn blocks(kind: LinkKind, side: f64) -> bool {
    match kind {
        LinkKind::Visibility => side >= 0.0,
        LinkKind::AbsoluteInvisibility => side <= 0.0,
    }
}

/// Pairwise link test on 0-based positions, evaluating every interior point.
fn linked_pairwise(heights: &[f64], a: usize, b: usize, kind: LinkKind) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let left = point(lo, heights);
    let right = point(hi, heights);
    (lo + 1..hi).all(|k| !blocks(kind, chord_side(left, right, point(k, heights))))
}

fn check_pair(series: &PriceSeries, i: usize, j: usize) -> Result<()> {
    series.check_day(i)?;
    series.check_day(j)?;
    if i == j {
        return Err(Error::SameDay(i));
    }
    Ok(())
}

/// Natural-visibility link between days `i` and `j` (either order).
pub fn visible(series: &PriceSeries, i: usize, j: usize) -> Result<bool> {
    check_pair(series, i, j)?;
    Ok(linked_pairwise(series.heights(), i - 1, j - 1, LinkKind::Visibility))
}

/// Absolute-invisibility link between days `i` and `j` (either order).
pub fn invisible(series: &PriceSeries, i: usize, j: usize) -> Result<bool> {
    check_pair(series, i, j)?;
    Ok(linked_pairwise(series.heights(), i - 1, j - 1, LinkKind::AbsoluteInvisibility))
}

pub fn linked(series: &PriceSeries, i: usize, j: usize, kind: LinkKind) -> Result<bool> {
    check_pair(series, i, j)?;
    Ok(linked_pairwise(series.heights(), i - 1, j - 1, kind))
}

/// Single leftward pass from 0-based pivot `pivot` over at most `scope`
/// neighbours. The witness is the interior point with the extreme slope
/// toward the pivot seen so far; a candidate links iff the witness lies
/// strictly on the open side of its chord.
pub(crate) fn scan_left(heights: &[f64], pivot: usize, scope: usize, kind: LinkKind, filter: DirectionFilter) -> usize {
    let reach = scope.min(pivot);
    if reach == 0 {
        return 0;
    }
    let right = point(pivot, heights);
    let y_pivot = heights[pivot];

    // adjacent day: no interior points
    let mut witness = point(pivot - 1, heights);
    let mut count = usize::from(filter.admits(y_pivot, witness.y));

    for left_pos in (pivot - reach..pivot - 1).rev() {
        let left = point(left_pos, heights);
        if !blocks(kind, chord_side(left, right, witness)) {
            witness = left;
            if filter.admits(y_pivot, left.y) {
                count += 1;
            }
        }
    }
    count
}

/// Number of days `j` in `[i - scope, i - 1]` linked to day `i` under `kind`
/// and passing `filter`. The window is truncated at day 1 when `i <= scope`.
/// Runs in O(scope).
pub fn left_degree_scan(
    series: &PriceSeries,
    i: usize,
    scope: usize,
    kind: LinkKind,
    filter: DirectionFilter,
) -> Result<usize> {
    series.check_day(i)?;
    Ok(scan_left(series.heights(), i - 1, scope, kind, filter))
}

/// Same contract as [`left_degree_scan`], evaluated pair by pair in
/// O(scope^2). Used as a cross-check.
pub fn brute_force_degree(
    series: &PriceSeries,
    i: usize,
    scope: usize,
    kind: LinkKind,
    filter: DirectionFilter,
) -> Result<usize> {
    series.check_day(i)?;
    let heights = series.heights();
    let pivot = i - 1;
    let reach = scope.min(pivot);
    Ok((pivot - reach..pivot)
        .filter(|&j| filter.admits(heights[pivot], heights[j]))
        .filter(|&j| linked_pairwise(heights, j, pivot, kind))
        .count())
}

/// Degrees for every day `i > scope`, computed in parallel.
pub fn degree_sequence(
    series: &PriceSeries,
    scope: usize,
    kind: LinkKind,
    filter: DirectionFilter,
) -> Result<DegreeSequence> {
    if scope == 0 {
        return Err(Error::ScopeTooSmall(scope));
    }
    if series.len() <= scope {
        return Err(Error::ScopeTooLarge {
            scope,
            len: series.len(),
        });
    }
    let heights = series.heights();
    let degrees = (scope..series.len())
        .into_par_iter()
        .map(|pivot| scan_left(heights, pivot, scope, kind, filter))
        .collect();
    Ok(DegreeSequence {
        kind,
        filter,
        scope,
        degrees,
    })
}

/// Every undirected link `(j, i)` with `j < i` and `i - j <= max_span`
/// (unbounded when `None`), as 1-based day pairs sorted by `i` then `j`.
/// For inspection and export only; the indicators never build this.
pub fn build_network(series: &PriceSeries, kind: LinkKind, max_span: Option<usize>) -> Vec<(usize, usize)> {
    let heights = series.heights();
    let span = max_span.unwrap_or(usize::MAX);
    let mut edges = Vec::new();
    for pivot in 1..heights.len() {
        let reach = span.min(pivot);
        let right = point(pivot, heights);
        let mut witness = point(pivot - 1, heights);
        let mut row = vec![pivot - 1];
        for left_pos in (pivot - reach..pivot - 1).rev() {
            let left = point(left_pos, heights);
            if !blocks(kind, chord_side(left, right, witness)) {
                witness = left;
                row.push(left_pos);
            }
        }
        row.sort_unstable();
        edges.extend(row.into_iter().map(|j| (j + 1, pivot + 1)));
    }
    edges
}

/// `i j` per line.
pub fn write_edge_list<W: Write>(edges: &[(usize, usize)], mut out: W) -> std::io::Result<()> {
    for (a, b) in edges {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

/// `day_index,degree` CSV.
pub fn write_degree_csv<W: Write>(seq: &DegreeSequence, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["day_index", "degree"])?;
    for (day, degree) in seq.iter() {
        wtr.write_record([day.to_string(), degree.to_string()])?;
    }
    wtr.flush().map_err(|e| Error::io("<degree csv>", e))?;
    Ok(())
}
