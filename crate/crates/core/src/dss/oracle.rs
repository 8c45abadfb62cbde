//! Exhaustive standard-line search, used as a reference for the recognizer.

use num_integer::Integer;

use super::DssCharacteristics;
use crate::error::{Error, Result};
use crate::lattice::{code_between_points, LatticePoint};

/// Longest path the oracle accepts.
pub const ORACLE_MAX_POINTS: usize = 64;

/// Smallest standard line containing a 4-connected path, by trying every
/// primitive `(a, b)` in order of `|a| + |b|`.
///
/// Returns `None` when no line fits. Ties at the smallest thickness go to the
/// smallest `a`; `mu` is the smallest remainder on the path.
pub fn dss_oracle(points: &[LatticePoint]) -> Result<Option<DssCharacteristics>> {
    if points.is_empty() {
        return Err(Error::ContractViolation("empty path".into()));
    }
    if points.len() > ORACLE_MAX_POINTS {
        return Err(Error::Domain(format!("oracle is limited to {ORACLE_MAX_POINTS} points, got {}", points.len())));
    }
    if points.windows(2).any(|w| code_between_points(w[0], w[1]).is_none()) {
        return Err(Error::ContractViolation("oracle input is not a 4-connected path".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != points.len() {
        return Ok(None);
    }
    let (first, last) = (points[0], points[points.len() - 1]);
    if points.len() == 1 {
        return Ok(Some(leaning(points, 0, 1, -first.j)));
    }
    let (dx, dy) = (last.i - first.i, last.j - first.j);
    let max_s = 2 * points.len() as i64;
    for s in 1..=max_s {
        let mut best: Option<(i64, i64, i64)> = None;
        for a in -s..=s {
            let rest = s - a.abs();
            for b in if rest == 0 { vec![0] } else { vec![rest, -rest] } {
                if a.unsigned_abs().gcd(&b.unsigned_abs()) != 1 || b * dx + a * dy <= 0 {
                    continue;
                }
                let r = points.iter().map(|p| a * p.i - b * p.j);
                let (lo, hi) = r.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
                if hi - lo < s {
                    let cand = (a, b, lo);
                    if best.is_none_or(|x| (cand.0, cand.2) < (x.0, x.2)) {
                        best = Some(cand);
                    }
                }
            }
        }
        if let Some((a, b, mu)) = best {
            return Ok(Some(leaning(points, a, b, mu)));
        }
    }
    Ok(None)
}

fn leaning(points: &[LatticePoint], a: i64, b: i64, mu: i64) -> DssCharacteristics {
    let top = mu + a.abs() + b.abs() - 1;
    let r = |p: &LatticePoint| a * p.i - b * p.j;
    let upper: Vec<_> = points.iter().filter(|p| r(p) == mu).copied().collect();
    let lower: Vec<_> = points.iter().filter(|p| r(p) == top).copied().collect();
    let pick = |v: &[LatticePoint], last: bool| {
        let q = if last { v.last() } else { v.first() };
        *q.unwrap_or(&points[0])
    };
    DssCharacteristics {
        a,
        b,
        mu,
        upper_first: pick(&upper, false),
        upper_last: pick(&upper, true),
        lower_first: pick(&lower, false),
        lower_last: pick(&lower, true),
    }
}
