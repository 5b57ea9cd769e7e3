//! Structural, furnishing and playability metrics, with summary statistics
//! and CSV export.

mod export;
mod metrics;
mod stats;

pub use export::{
    histogram, write_histogram_csv, write_records_csv, write_summary_csv, write_welch_csv, ExportError,
    Histogram,
};
pub use metrics::{
    layout_metrics, level_metrics, play_metrics, wall_chunks, MetricsRecord, LAYOUT_METRICS, LEVEL_METRICS,
    PLAY_METRICS,
};
pub use stats::{aggregate, summarize, welch_t, StatsError, SummaryStat, WelchResult};
