//! Multigrid experiments: per-step statistics over a sweep of grid steps,
//! log-log fits of their growth or decay, and CSV output.

mod fit;
mod output;

pub use fit::{fit_loglog, FitResult, Metric};
pub use output::{emit_csv, emit_fit_csv, read_csv, write_gnuplot, Metadata};

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{
    check_localization_bound, tangent_edge_at, tangent_lambda_mst, tangent_ms_most_centered, EdgeContext, Estimator,
    SegmentCover,
};
use crate::lattice::{gauss_digitize, is_cdp, trace_border, LatticePoint};
use crate::shapes::{angle_distance, rational_to_f64, ConvexShape};

/// Fewest accepted grid steps for a fit.
pub const MIN_RECORDS: usize = 4;

/// Aggregate statistics of one digitization.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub h: Rational64,
    /// Distinct border points.
    pub n_points: usize,
    pub n_edges: usize,
    pub n_maxsegs: usize,
    /// Over distinct border points, radians.
    pub mean_abs_tangent_error: f64,
    pub std_tangent_error: f64,
    /// Over edges, `q / (delta (p + q))`.
    pub mean_q_over_l: f64,
    pub std_q_over_l: f64,
    pub mean_delta: f64,
    pub std_delta: f64,
    /// Mean number of moves in a maximal segment.
    pub mean_ms_digital_length: f64,
    pub max_localization_gap_ratio: f64,
}

impl ConvergenceRecord {
    pub fn h_f64(&self) -> f64 {
        rational_to_f64(self.h)
    }
}

// mean and population standard deviation
fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.clone().sum::<f64>() / n as f64;
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    (mean, var.sqrt())
}

/// Digitizes `shape` at step `h` and gathers all statistics of the step.
pub fn measure_step(shape: &ConvexShape, h: Rational64, estimator: Estimator) -> Result<ConvergenceRecord> {
    let set = gauss_digitize(shape, h)?;
    if !is_cdp(&set) {
        return Err(Error::ContractViolation(format!("digitization at h = {h} is not a convex digital polygon")));
    }
    let contour = trace_border(&set)?;
    let hf = rational_to_f64(h);
    let ctx = EdgeContext::new(&contour, shape.center())?;
    let cover = SegmentCover::new(&contour)?;

    let errors: Vec<(LatticePoint, f64)> = (0..contour.len())
        .map(|k| {
            let p = contour.point(k as i64);
            let m = shape.project_to_boundary(p.world(hf))?;
            let truth = shape.tangent_direction(&m)?;
            let est = match estimator {
                // m lies on the ray from the center through p
                Estimator::Edge => tangent_edge_at(&ctx, p),
                Estimator::MostCentered => tangent_ms_most_centered(&cover, k),
                Estimator::LambdaMst(l) => tangent_lambda_mst(&cover, k, l),
            };
            Ok((p, angle_distance(est.angle, truth)))
        })
        .collect::<Result<_>>()?;
    // one value per border point; a point the walk visits twice gets the mean of its visits
    let mut per_point: BTreeMap<LatticePoint, (f64, u32)> = BTreeMap::new();
    for (p, e) in errors {
        let slot = per_point.entry(p).or_default();
        slot.0 += e;
        slot.1 += 1;
    }
    let (mean_err, std_err) = mean_std(per_point.values().map(|&(sum, n)| sum / n as f64));

    let edges = &ctx.edges;
    let (mean_ql, std_ql) = mean_std(edges.iter().map(|e| e.q as f64 / e.digital_length() as f64));
    let (mean_delta, std_delta) = mean_std(edges.iter().map(|e| e.delta as f64));
    let (mean_ms, _) = mean_std(cover.segments.iter().map(|m| (m.len - 1) as f64));
    let mut max_ratio = 0.0f64;
    for e in edges {
        max_ratio = max_ratio.max(check_localization_bound(shape, e, hf)?.ratio());
    }

    Ok(ConvergenceRecord {
        h,
        n_points: contour.distinct_points(),
        n_edges: edges.len(),
        n_maxsegs: cover.segments.len(),
        mean_abs_tangent_error: mean_err,
        std_tangent_error: std_err,
        mean_q_over_l: mean_ql,
        std_q_over_l: std_ql,
        mean_delta,
        std_delta,
        mean_ms_digital_length: mean_ms,
        max_localization_gap_ratio: max_ratio,
    })
}

/// Records of a sweep together with the steps that had to be dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub records: Vec<ConvergenceRecord>,
    pub skipped: Vec<(Rational64, String)>,
}

/// Measures every grid step (in parallel), keeping the input order. Steps
/// whose digitization is unusable are skipped with a warning.
pub fn run_experiment(shape: &ConvexShape, hs: &[Rational64], estimator: Estimator) -> Result<Experiment> {
    if let Some(h) = hs.iter().find(|h| **h <= Rational64::from_integer(0)) {
        return Err(Error::Domain(format!("grid step {h} is not positive")));
    }
    let results: Vec<Result<ConvergenceRecord>> = hs.par_iter().map(|&h| measure_step(shape, h, estimator)).collect();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (&h, r) in hs.iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e @ (Error::ContractViolation(_) | Error::DegenerateBorder(_) | Error::EmptyDigitization)) => {
                log::warn!("skipping h = {h}: {e}");
                skipped.push((h, e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    if records.len() < MIN_RECORDS {
        return Err(Error::ExperimentTooSmall { accepted: records.len() });
    }
    Ok(Experiment { records, skipped })
}

/// Parses `2^-a..2^-b` into `1/2^a, ..., 1/2^b`, or a comma-separated list of
/// rationals.
pub fn parse_h_list(s: &str) -> Result<Vec<Rational64>> {
    let bad = || Error::Parse(format!("invalid grid step list `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let exp =
            |t: &str| -> Result<i64> { t.trim().strip_prefix("2^").ok_or_else(bad)?.parse::<i64>().map_err(|_| bad()) };
        let (a, b) = (exp(a)?, exp(b)?);
        if !(-62..=62).contains(&a) || !(-62..=62).contains(&b) {
            return Err(bad());
        }
        let step = if b >= a { 1 } else { -1 };
        let mut out = Vec::new();
        let mut k = a;
        loop {
            out.push(if k >= 0 { Rational64::from_integer(1 << k) } else { Rational64::new(1, 1 << -k) });
            if k == b {
                break;
            }
            k += step;
        }
        return Ok(out);
    }
    s.split(',').map(|t| crate::shapes::parse_rational(t.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_lists() {
        let hs = parse_h_list("2^-4..2^-6").unwrap();
        assert_eq!(hs, vec![Rational64::new(1, 16), Rational64::new(1, 32), Rational64::new(1, 64)]);
        let hs = parse_h_list("1/2, 1/3,0.25").unwrap();
        assert_eq!(hs, vec![Rational64::new(1, 2), Rational64::new(1, 3), Rational64::new(1, 4)]);
        assert!(parse_h_list("2^x..2^-3").is_err());
    }

    #[test]
    fn coarse_disk_step() {
        let r = measure_step(&ConvexShape::unit_disk(), Rational64::new(1, 2), Estimator::Edge).unwrap();
        assert_eq!(r.n_edges, 4);
        assert_eq!(r.n_points, 12);
        assert_eq!(r.mean_delta, 2.0);
        assert_eq!(r.mean_q_over_l, 0.25);
        assert!(r.max_localization_gap_ratio <= 1.0);
        assert!(r.mean_abs_tangent_error >= 0.0);
    }

    #[test]
    fn too_few_steps() {
        let hs = parse_h_list("2^-2..2^-4").unwrap();
        assert!(matches!(
            run_experiment(&ConvexShape::unit_disk(), &hs, Estimator::Edge),
            Err(Error::ExperimentTooSmall { accepted: 3 })
        ));
    }

    #[test]
    fn sweep_grows() {
        let hs = parse_h_list("2^-3..2^-8").unwrap();
        let ex = run_experiment(&ConvexShape::unit_disk(), &hs, Estimator::Edge).unwrap();
        assert_eq!(ex.records.len(), 6);
        assert!(ex.records.windows(2).all(|w| w[0].n_points < w[1].n_points));
    }
}
