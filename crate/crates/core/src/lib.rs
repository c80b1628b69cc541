//! Visibility-network indicators of super-exponential growth and tools to
//! score them as forecasts of market peaks and troughs.
//!
//! A price series becomes a network over its log-prices: two days link when
//! every day between them sits strictly below the chord joining them
//! (visibility) or strictly above it (absolute invisibility). Counting a
//! day's links to lower (higher) days within the last `S` days, divided by
//! `S`, gives its peak (trough) indicator. The [`evaluation`] module
//! measures how well those indicators anticipate realized extremes with
//! error diagrams.
//!
//! ```
//! use netextreme::{detect_extremes, error_diagram, peak_indicator, ExtremeKind, PriceSeries};
//!
//! let prices: Vec<f64> = (0..400).map(|t| 100.0 + 10.0 * (t as f64 / 25.0).sin()).collect();
//! let series = PriceSeries::from_prices(prices).unwrap();
//! let ind = peak_indicator(&series, 60).unwrap();
//! let peaks = detect_extremes(&series, ExtremeKind::Peak, 30, 10).unwrap();
//! let diagram = error_diagram(&ind, &peaks, 0).unwrap();
//! assert!(diagram.p_value() > 0.0 && diagram.p_value() <= 1.0);
//! ```

pub mod cli;
pub mod error;
pub mod evaluation;
pub mod extremes;
pub mod indicator;
pub mod series;
pub mod synthetic;
pub mod visibility;

pub use error::{Error, Result};
pub use evaluation::{error_diagram, p_value, parameter_sweep, sweep_stats, ErrorDiagram, SweepGrid, SweepResult};
pub use extremes::{detect_extremes, ExtremeSet};
pub use indicator::{peak_indicator, trough_indicator, ExtremeKind, IndicatorSeries};
pub use series::{load_csv, PriceSeries, Scale};
pub use synthetic::{gen_synthetic, Regime, Segment, SyntheticSpec};
pub use visibility::{brute_force_degree, invisible, left_degree_scan, visible, DirectionFilter, LinkKind};
