use std::collections::BTreeMap;

use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use super::MetricsRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStat {
    /// Group label: the requested tag values joined with `/`.
    pub group: String,
    pub metric: String,
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n − 1); 0 when n = 1.
    pub std: f64,
    /// Normal-approximation 95% half-width, 1.96·std/√n; 0 when n = 1.
    pub ci95: f64,
    /// Values left out: unreachable (`inf`) or not applicable (`NaN`).
    pub excluded: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("each sample needs at least two values (got {0} and {1})")]
    TooFew(usize, usize),
    #[error("both samples have zero variance")]
    ZeroVariance,
}

/// Summary of one metric over `values`; non-finite values are excluded.
pub fn summarize(group: &str, metric: &str, values: &[f64]) -> SummaryStat {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let n = finite.len();
    let mean = if n == 0 { f64::NAN } else { finite.iter().sum::<f64>() / n as f64 };
    let std = if n < 2 {
        0.0
    } else {
        (finite.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    let ci95 = if n < 2 { 0.0 } else { 1.96 * std / (n as f64).sqrt() };
    SummaryStat {
        group: group.to_owned(),
        metric: metric.to_owned(),
        n,
        mean,
        std,
        ci95,
        excluded: values.len() - n,
    }
}

/// Groups records by the given tag names and summarizes every metric.
/// Groups come out sorted by label, metrics in first-seen order. Groups
/// with no finite value for a metric are dropped.
pub fn aggregate(records: &[MetricsRecord], group_keys: &[&str]) -> Vec<SummaryStat> {
    let mut groups: BTreeMap<String, Vec<&MetricsRecord>> = BTreeMap::new();
    for r in records {
        let label = group_keys
            .iter()
            .map(|k| r.tags.get(*k).map_or("", String::as_str))
            .collect::<Vec<_>>()
            .join("/");
        groups.entry(label).or_default().push(r);
    }
    let mut out = Vec::new();
    for (label, members) in groups {
        let mut names: Vec<&str> = Vec::new();
        for r in &members {
            for (n, _) in &r.values {
                if !names.contains(&n.as_str()) {
                    names.push(n);
                }
            }
        }
        for name in names {
            let values: Vec<f64> = members.iter().map(|r| r.get(name).unwrap_or(f64::NAN)).collect();
            let stat = summarize(&label, name, &values);
            if stat.n > 0 {
                out.push(stat);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchResult {
    pub t: f64,
    pub degrees_of_freedom: f64,
    pub p_two_tailed: f64,
}

/// Welch's unequal-variance t-test.
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<WelchResult, StatsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::TooFew(a.len(), b.len()));
    }
    let moments = |s: &[f64]| {
        let n = s.len() as f64;
        let mean = s.iter().sum::<f64>() / n;
        let var = s.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (n, mean, var)
    };
    let (na, ma, va) = moments(a);
    let (nb, mb, vb) = moments(b);
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;
    if se2 <= 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("df is positive");
    let p = (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0);
    Ok(WelchResult { t, degrees_of_freedom: df, p_two_tailed: p })
}
