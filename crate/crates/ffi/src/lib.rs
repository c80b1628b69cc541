//! C ABI over `netextreme`.
//!
//! Series and error diagrams cross the boundary as opaque handles that the
//! caller frees with the matching `*_free` function. Every fallible call
//! returns an [`NxStatus`]; on failure a human-readable message is available
//! from [`nx_last_error_message`] on the same thread.
//!
//! Array outputs use the caller-buffer convention: pass `capacity` slots and
//! receive the required length in `*out_len`. When `capacity` is too small
//! nothing is written and `NX_STATUS_BUFFER_TOO_SMALL` is returned, so a
//! first call with a null buffer and zero capacity sizes the allocation.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use netextreme::evaluation::{error_diagram, ErrorDiagram};
use netextreme::visibility::{left_degree_scan, DirectionFilter, LinkKind};
use netextreme::indicator::indicator as indicator_for;
use netextreme::{detect_extremes, ExtremeKind, PriceSeries, Scale};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DataError = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NxKind {
    Peak = 0,
    Trough = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NxLinkKind {
    Visibility = 0,
    AbsoluteInvisibility = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NxDirectionFilter {
    RequireLowerLeft = 0,
    RequireHigherLeft = 1,
    None = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NxDiagramPoint {
    pub alarm_fraction: f64,
    pub unpredicted_fraction: f64,
    pub threshold: f64,
}

/// Opaque price series.
pub struct NxSeries {
    inner: PriceSeries,
}

/// Opaque error diagram.
pub struct NxErrorDiagram {
    inner: ErrorDiagram,
}

impl From<NxKind> for ExtremeKind {
    fn from(k: NxKind) -> Self {
        match k {
            NxKind::Peak => ExtremeKind::Peak,
            NxKind::Trough => ExtremeKind::Trough,
        }
    }
}

impl From<NxLinkKind> for LinkKind {
    fn from(k: NxLinkKind) -> Self {
        match k {
            NxLinkKind::Visibility => LinkKind::Visibility,
            NxLinkKind::AbsoluteInvisibility => LinkKind::AbsoluteInvisibility,
        }
    }
}

impl From<NxDirectionFilter> for DirectionFilter {
    fn from(f: NxDirectionFilter) -> Self {
        match f {
            NxDirectionFilter::RequireLowerLeft => DirectionFilter::RequireLowerLeft,
            NxDirectionFilter::RequireHigherLeft => DirectionFilter::RequireHigherLeft,
            NxDirectionFilter::None => DirectionFilter::None,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(NxStatus, String);

impl From<netextreme::Error> for Failure {
    fn from(e: netextreme::Error) -> Self {
        use netextreme::Error::*;
        let status = match e {
            ScopeTooSmall(_) | EmptyWindow { .. } | SameDay(_) | DayOutOfRange { .. } | InvalidArgument(_) => {
                NxStatus::InvalidArgument
            }
            _ => NxStatus::DataError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NxStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            NxStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside netextreme");
            NxStatus::Panic
        }
    }
}

unsafe fn series_ref<'a>(series: *const NxSeries) -> Result<&'a PriceSeries, Failure> {
    series.as_ref().map(|s| &s.inner).ok_or_else(|| null("series"))
}

unsafe fn input_slice<'a>(data: *const f64, len: usize) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("values"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// Copies `values` to the caller buffer after reporting the length.
unsafe fn emit<T: Copy>(values: &[T], out: *mut T, capacity: usize, out_len: *mut usize) -> Result<(), Failure> {
    if out_len.is_null() {
        return Err(null("out_len"));
    }
    *out_len = values.len();
    if values.len() > capacity {
        return Err(Failure(
            NxStatus::BufferTooSmall,
            format!("need {} slots, buffer has {capacity}", values.len()),
        ));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `nx_*` call on the same thread.
#[no_mangle]
pub extern "C" fn nx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a series from `len` positive prices (one per trading day).
#[no_mangle]
pub unsafe extern "C" fn nx_series_from_prices(prices: *const f64, len: usize, out: *mut *mut NxSeries) -> NxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let values = input_slice(prices, len)?;
        let inner = PriceSeries::from_prices(values.to_vec())?;
        *out = Box::into_raw(Box::new(NxSeries { inner }));
        Ok(())
    })
}

/// Builds a series from `len` natural-log prices.
#[no_mangle]
pub unsafe extern "C" fn nx_series_from_log_values(
    log_values: *const f64,
    len: usize,
    out: *mut *mut NxSeries,
) -> NxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let values = input_slice(log_values, len)?;
        let inner = PriceSeries::from_log_values(values.to_vec())?;
        *out = Box::into_raw(Box::new(NxSeries { inner }));
        Ok(())
    })
}

/// Switches the series between log-price (`raw = false`) and raw-price
/// networks.
#[no_mangle]
pub unsafe extern "C" fn nx_series_set_raw_scale(series: *mut NxSeries, raw: bool) -> NxStatus {
    guard(|| {
        let s = series.as_mut().ok_or_else(|| null("series"))?;
        let scale = if raw { Scale::Raw } else { Scale::Log };
        s.inner = s.inner.clone().with_scale(scale);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nx_series_len(series: *const NxSeries) -> usize {
    series.as_ref().map_or(0, |s| s.inner.len())
}

#[no_mangle]
pub unsafe extern "C" fn nx_series_free(series: *mut NxSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Left-looking degree of 1-based `day` over at most `scope` days.
#[no_mangle]
pub unsafe extern "C" fn nx_left_degree(
    series: *const NxSeries,
    day: usize,
    scope: usize,
    link: NxLinkKind,
    filter: NxDirectionFilter,
    out_degree: *mut usize,
) -> NxStatus {
    guard(|| {
        let s = series_ref(series)?;
        if out_degree.is_null() {
            return Err(null("out_degree"));
        }
        *out_degree = left_degree_scan(s, day, scope, link.into(), filter.into())?;
        Ok(())
    })
}

/// Indicator values for days `scope + 1 ..= T` (`T - scope` values).
#[no_mangle]
pub unsafe extern "C" fn nx_indicator(
    series: *const NxSeries,
    kind: NxKind,
    scope: usize,
    out_values: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> NxStatus {
    guard(|| {
        let s = series_ref(series)?;
        let ind = indicator_for(s, scope, kind.into())?;
        emit(&ind.values(), out_values, capacity, out_len)
    })
}

/// 1-based days of realized extremes under the `before`/`after` window.
#[no_mangle]
pub unsafe extern "C" fn nx_detect_extremes(
    series: *const NxSeries,
    kind: NxKind,
    before: usize,
    after: usize,
    out_days: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> NxStatus {
    guard(|| {
        let s = series_ref(series)?;
        let set = detect_extremes(s, kind.into(), before, after)?;
        emit(&set.days, out_days, capacity, out_len)
    })
}

/// Error diagram of the `kind` indicator against `kind` extremes.
#[no_mangle]
pub unsafe extern "C" fn nx_error_diagram(
    series: *const NxSeries,
    kind: NxKind,
    scope: usize,
    before: usize,
    after: usize,
    horizon: usize,
    out: *mut *mut NxErrorDiagram,
) -> NxStatus {
    guard(|| {
        let s = series_ref(series)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = kind.into();
        let ind = indicator_for(s, scope, kind)?;
        let ext = detect_extremes(s, kind, before, after)?;
        let inner = error_diagram(&ind, &ext, horizon)?;
        *out = Box::into_raw(Box::new(NxErrorDiagram { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nx_diagram_point_count(diagram: *const NxErrorDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.inner.points.len())
}

#[no_mangle]
pub unsafe extern "C" fn nx_diagram_point(
    diagram: *const NxErrorDiagram,
    index: usize,
    out: *mut NxDiagramPoint,
) -> NxStatus {
    guard(|| {
        let d = diagram.as_ref().ok_or_else(|| null("diagram"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = d.inner.points.get(index).ok_or_else(|| {
            Failure(
                NxStatus::InvalidArgument,
                format!("point {index} out of range (diagram has {})", d.inner.points.len()),
            )
        })?;
        *out = NxDiagramPoint {
            alarm_fraction: p.alarm_fraction,
            unpredicted_fraction: p.unpredicted_fraction,
            threshold: p.threshold,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn nx_diagram_total_extremes(diagram: *const NxErrorDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.inner.total_extremes)
}

#[no_mangle]
pub unsafe extern "C" fn nx_diagram_prediction_days(diagram: *const NxErrorDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.inner.prediction_days)
}

/// Staircase area under the diagram; NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn nx_diagram_p_value(diagram: *const NxErrorDiagram) -> f64 {
    diagram.as_ref().map_or(f64::NAN, |d| d.inner.p_value())
}

#[no_mangle]
pub unsafe extern "C" fn nx_diagram_free(diagram: *mut NxErrorDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// One-shot p-value: indicator, extremes and diagram in a single call.
#[no_mangle]
pub unsafe extern "C" fn nx_p_value(
    series: *const NxSeries,
    kind: NxKind,
    scope: usize,
    before: usize,
    after: usize,
    horizon: usize,
    out_p: *mut f64,
) -> NxStatus {
    guard(|| {
        let s = series_ref(series)?;
        if out_p.is_null() {
            return Err(null("out_p"));
        }
        let kind = kind.into();
        let ind = indicator_for(s, scope, kind)?;
        let ext = detect_extremes(s, kind, before, after)?;
        *out_p = error_diagram(&ind, &ext, horizon)?.p_value();
        Ok(())
    })
}
