use std::fmt;
use std::str::FromStr;

use super::{ConvergenceRecord, MIN_RECORDS};
use crate::error::{Error, Result};

/// A per-record quantity that can be fitted against `1/h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    TangentError,
    NPoints,
    NEdges,
    NMaxsegs,
    QOverL,
    Delta,
    MsLength,
    LocalizationRatio,
}

impl Metric {
    pub const ALL: [Metric; 8] = [
        Metric::TangentError,
        Metric::NPoints,
        Metric::NEdges,
        Metric::NMaxsegs,
        Metric::QOverL,
        Metric::Delta,
        Metric::MsLength,
        Metric::LocalizationRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::TangentError => "tangent_error",
            Metric::NPoints => "n_points",
            Metric::NEdges => "n_edges",
            Metric::NMaxsegs => "n_maxsegs",
            Metric::QOverL => "q_over_l",
            Metric::Delta => "delta",
            Metric::MsLength => "ms_len",
            Metric::LocalizationRatio => "loc_ratio",
        }
    }

    /// Column holding the metric in experiment CSV files.
    pub fn column(self) -> &'static str {
        match self {
            Metric::TangentError => "mean_abs_err",
            Metric::NPoints => "n_points",
            Metric::NEdges => "n_edges",
            Metric::NMaxsegs => "n_maxsegs",
            Metric::QOverL => "mean_q_over_l",
            Metric::Delta => "mean_delta",
            Metric::MsLength => "mean_ms_len",
            Metric::LocalizationRatio => "max_loc_ratio",
        }
    }

    /// Errors shrink with `h`, so their exponent is reported for `h` rather
    /// than for `1/h`.
    pub fn is_error(self) -> bool {
        matches!(self, Metric::TangentError)
    }

    pub fn value(self, r: &ConvergenceRecord) -> f64 {
        match self {
            Metric::TangentError => r.mean_abs_tangent_error,
            Metric::NPoints => r.n_points as f64,
            Metric::NEdges => r.n_edges as f64,
            Metric::NMaxsegs => r.n_maxsegs as f64,
            Metric::QOverL => r.mean_q_over_l,
            Metric::Delta => r.mean_delta,
            Metric::MsLength => r.mean_ms_digital_length,
            Metric::LocalizationRatio => r.max_localization_gap_ratio,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s || m.column() == s)
            .ok_or_else(|| Error::Parse(format!("unknown metric `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub metric: Metric,
    /// Slope of `log(metric)` against `log(1/h)`, negated for error metrics.
    pub exponent: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub r2: f64,
}

/// Ordinary least squares of `log10(metric)` on `log10(1/h)`.
pub fn fit_loglog(records: &[ConvergenceRecord], metric: Metric) -> Result<FitResult> {
    if records.len() < MIN_RECORDS {
        return Err(Error::ExperimentTooSmall { accepted: records.len() });
    }
    let mut pts = Vec::with_capacity(records.len());
    for r in records {
        let v = metric.value(r);
        if v.is_nan() || v <= 0.0 {
            return Err(Error::Domain(format!("{metric} is {v} at h = {}; cannot take its logarithm", r.h)));
        }
        pts.push(((1.0 / r.h_f64()).log10(), v.log10()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("all grid steps are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    let exponent = if metric.is_error() { -slope } else { slope };
    Ok(FitResult { metric, exponent, intercept, stderr, r2 })
}
