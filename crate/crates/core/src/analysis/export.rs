use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{welch_t, MetricsRecord, SummaryStat};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn write(path: &Path, text: &str) -> Result<(), ExportError> {
    std::fs::write(path, text).map_err(|source| ExportError::Io { path: path.display().to_string(), source })
}

/// `inf` for unreachable, empty for not applicable, shortest round-trip
/// decimal otherwise.
fn cell(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{v}")
    }
}

/// Per-record CSV: `id`, then the tag columns, then the metric columns.
pub fn write_records_csv(
    path: &Path,
    records: &[MetricsRecord],
    tags: &[&str],
    metrics: &[&str],
) -> Result<(), ExportError> {
    let mut out = String::from("id");
    for name in tags.iter().chain(metrics) {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for r in records {
        out.push_str(&r.id);
        for t in tags {
            out.push(',');
            out.push_str(r.tags.get(*t).map_or("", String::as_str));
        }
        for m in metrics {
            out.push(',');
            out.push_str(&cell(r.get(m).unwrap_or(f64::NAN)));
        }
        out.push('\n');
    }
    write(path, &out)
}

pub fn write_summary_csv(path: &Path, stats: &[SummaryStat]) -> Result<(), ExportError> {
    let mut out = String::from("group,metric,n,mean,std,ci95,excluded\n");
    for s in stats {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.group,
            s.metric,
            s.n,
            cell(s.mean),
            cell(s.std),
            cell(s.ci95),
            s.excluded
        );
    }
    write(path, &out)
}

/// Pairwise Welch tests between every two groups, for each metric. Pairs
/// that cannot be tested (too few values, no variance) are skipped.
pub fn write_welch_csv(
    path: &Path,
    groups: &[(String, Vec<&MetricsRecord>)],
    metrics: &[&str],
) -> Result<(), ExportError> {
    let mut out = String::from("metric,group_a,group_b,t,df,p\n");
    for m in metrics {
        let samples: Vec<Vec<f64>> = groups
            .iter()
            .map(|(_, rs)| rs.iter().filter_map(|r| r.get(m)).filter(|v| v.is_finite()).collect())
            .collect();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if let Ok(w) = welch_t(&samples[i], &samples[j]) {
                    let _ = writeln!(
                        out,
                        "{m},{},{},{},{},{}",
                        groups[i].0,
                        groups[j].0,
                        w.t,
                        w.degrees_of_freedom,
                        w.p_two_tailed
                    );
                }
            }
        }
    }
    write(path, &out)
}

/// 2-D histogram of two metrics with equal-width bins. Bin `i` covers
/// `[edge_i, edge_{i+1})`, the last bin also includes its upper edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    /// `counts[y][x]`.
    pub counts: Vec<Vec<u64>>,
}

fn edges(values: &[f64], bins: usize) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    };
    (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect()
}

fn bin_of(edges: &[f64], v: f64) -> usize {
    let bins = edges.len() - 1;
    let (lo, hi) = (edges[0], edges[bins]);
    (((v - lo) / (hi - lo) * bins as f64).floor() as usize).min(bins - 1)
}

/// Records missing either metric, or with a non-finite value, are skipped.
pub fn histogram(records: &[MetricsRecord], x: &str, y: &str, bins: usize) -> Histogram {
    let bins = bins.max(1);
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| Some((r.get(x)?, r.get(y)?)))
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .collect();
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let x_edges = edges(&xs, bins);
    let y_edges = edges(&ys, bins);
    let mut counts = vec![vec![0u64; bins]; bins];
    for &(a, b) in &points {
        counts[bin_of(&y_edges, b)][bin_of(&x_edges, a)] += 1;
    }
    Histogram { x_edges, y_edges, counts }
}

/// Matrix CSV: the first row holds the lower x edges, the first column the
/// lower y edges, the corner names the axes as `y\x`.
pub fn write_histogram_csv(path: &Path, h: &Histogram, x: &str, y: &str) -> Result<(), ExportError> {
    let bins = h.counts.len();
    let mut out = format!("{y}\\{x}");
    for e in &h.x_edges[..bins] {
        out.push(',');
        out.push_str(&cell(*e));
    }
    out.push('\n');
    for (row, edge) in h.counts.iter().zip(&h.y_edges) {
        out.push_str(&cell(*edge));
        for c in row {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    write(path, &out)
}
