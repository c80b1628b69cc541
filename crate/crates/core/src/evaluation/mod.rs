//! Error diagrams, area-under-curve p-values and the `(S, a, b)` robustness
//! sweep.

mod diagram;
mod stats;
mod sweep;

pub use diagram::{
    error_diagram, error_diagram_from_scores, p_value, p_value_trapezoid, write_diagram_csv, ErrorDiagram,
    ErrorDiagramPoint,
};
pub use stats::{sweep_stats, SweepStats, QUANTILE_METHOD};
pub use sweep::{parameter_sweep, sweep_stats_json, write_sweep_csv, SweepEntry, SweepGrid, SweepResult};
