#ifndef NETEXTREME_H
#define NETEXTREME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NxStatus {
  NX_STATUS_OK = 0,
  NX_STATUS_NULL_POINTER = 1,
  NX_STATUS_INVALID_ARGUMENT = 2,
  NX_STATUS_DATA_ERROR = 3,
  NX_STATUS_BUFFER_TOO_SMALL = 4,
  NX_STATUS_PANIC = 5,
} NxStatus;

typedef enum NxLinkKind {
  NX_LINK_KIND_VISIBILITY = 0,
  NX_LINK_KIND_ABSOLUTE_INVISIBILITY = 1,
} NxLinkKind;

typedef enum NxDirectionFilter {
  NX_DIRECTION_FILTER_REQUIRE_LOWER_LEFT = 0,
  NX_DIRECTION_FILTER_REQUIRE_HIGHER_LEFT = 1,
  NX_DIRECTION_FILTER_NONE = 2,
} NxDirectionFilter;

typedef enum NxKind {
  NX_KIND_PEAK = 0,
  NX_KIND_TROUGH = 1,
} NxKind;

/**
 * Opaque error diagram.
 */
typedef struct NxErrorDiagram NxErrorDiagram;

/**
 * Opaque price series.
 */
typedef struct NxSeries NxSeries;

typedef struct NxDiagramPoint {
  double alarm_fraction;
  double unpredicted_fraction;
  double threshold;
} NxDiagramPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `nx_*` call on the same thread.
 */
const char *nx_last_error_message(void);

/**
 * Builds a series from `len` positive prices (one per trading day).
 */
enum NxStatus nx_series_from_prices(const double *prices, size_t len, struct NxSeries **out);

/**
 * Builds a series from `len` natural-log prices.
 */
enum NxStatus nx_series_from_log_values(const double *log_values,
                                        size_t len,
                                        struct NxSeries **out);

/**
 * Switches the series between log-price (`raw = false`) and raw-price
 * networks.
 */
enum NxStatus nx_series_set_raw_scale(struct NxSeries *series, bool raw);

size_t nx_series_len(const struct NxSeries *series);

void nx_series_free(struct NxSeries *series);

/**
 * Left-looking degree of 1-based `day` over at most `scope` days.
 */
enum NxStatus nx_left_degree(const struct NxSeries *series,
                             size_t day,
                             size_t scope,
                             enum NxLinkKind link,
                             enum NxDirectionFilter filter,
                             size_t *out_degree);

/**
 * Indicator values for days `scope + 1 ..= T` (`T - scope` values).
 */
enum NxStatus nx_indicator(const struct NxSeries *series,
                           enum NxKind kind,
                           size_t scope,
                           double *out_values,
                           size_t capacity,
                           size_t *out_len);

/**
 * 1-based days of realized extremes under the `before`/`after` window.
 */
enum NxStatus nx_detect_extremes(const struct NxSeries *series,
                                 enum NxKind kind,
                                 size_t before,
                                 size_t after,
                                 size_t *out_days,
                                 size_t capacity,
                                 size_t *out_len);

/**
 * Error diagram of the `kind` indicator against `kind` extremes.
 */
enum NxStatus nx_error_diagram(const struct NxSeries *series,
                               enum NxKind kind,
                               size_t scope,
                               size_t before,
                               size_t after,
                               size_t horizon,
                               struct NxErrorDiagram **out);

size_t nx_diagram_point_count(const struct NxErrorDiagram *diagram);

enum NxStatus nx_diagram_point(const struct NxErrorDiagram *diagram,
                               size_t index,
                               struct NxDiagramPoint *out);

size_t nx_diagram_total_extremes(const struct NxErrorDiagram *diagram);

size_t nx_diagram_prediction_days(const struct NxErrorDiagram *diagram);

/**
 * Staircase area under the diagram; NaN for a null handle.
 */
double nx_diagram_p_value(const struct NxErrorDiagram *diagram);

void nx_diagram_free(struct NxErrorDiagram *diagram);

/**
 * One-shot p-value: indicator, extremes and diagram in a single call.
 */
enum NxStatus nx_p_value(const struct NxSeries *series,
                         enum NxKind kind,
                         size_t scope,
                         size_t before,
                         size_t after,
                         size_t horizon,
                         double *out_p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETEXTREME_H */
