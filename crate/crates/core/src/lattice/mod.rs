//! Gauss digitization, convex digital polygons and their borders.
//!
//! Lattice point `(i, j)` stands for the world point `(h*i, h*j)`. Sets are
//! stored as sorted rows of disjoint column runs, which keeps digitizations
//! at small `h` proportional to their height rather than their area.

mod contour;
mod edges;
mod hull;

pub use contour::{code_between as code_between_points, trace_border, DigitalContour};
pub use edges::{digital_edges, DigitalEdge};
pub use hull::{convex_hull, convex_hull_vertices, hull_row_bounds, CdpVertices};

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::shapes::{rational_to_f64, ConvexShape, RationalPoint, ShapeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    pub fn offset(self, (di, dj): (i64, i64)) -> Self {
        Self::new(self.i + di, self.j + dj)
    }

    pub fn world(self, h: f64) -> (f64, f64) {
        (h * self.i as f64, h * self.j as f64)
    }

    /// Key ordering rows first (lowest `j`, then lowest `i`).
    pub fn row_major_key(self) -> (i64, i64) {
        (self.j, self.i)
    }
}

/// One row of a lattice set: sorted, disjoint, non-adjacent inclusive runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub j: i64,
    pub runs: Vec<(i64, i64)>,
}

/// A finite set of lattice points at grid step `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSet {
    h: Rational64,
    rows: Vec<Row>,
}

impl LatticeSet {
    pub fn from_points(h: Rational64, points: impl IntoIterator<Item = LatticePoint>) -> Self {
        let mut by_row: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for p in points {
            by_row.entry(p.j).or_default().push(p.i);
        }
        let rows = by_row
            .into_iter()
            .map(|(j, mut is)| {
                is.sort_unstable();
                is.dedup();
                let mut runs: Vec<(i64, i64)> = Vec::new();
                for i in is {
                    match runs.last_mut() {
                        Some((_, hi)) if *hi + 1 == i => *hi = i,
                        _ => runs.push((i, i)),
                    }
                }
                Row { j, runs }
            })
            .collect();
        Self { h, rows }
    }

    /// Builds a set from one inclusive run per row (rows need not be contiguous).
    pub fn from_row_spans(h: Rational64, spans: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let mut rows: Vec<Row> = spans
            .into_iter()
            .filter(|&(_, lo, hi)| lo <= hi)
            .map(|(j, lo, hi)| Row { j, runs: vec![(lo, hi)] })
            .collect();
        rows.sort_by_key(|r| r.j);
        Self { h, rows }
    }

    pub fn h(&self) -> Rational64 {
        self.h
    }

    pub fn h_f64(&self) -> f64 {
        rational_to_f64(self.h)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().flat_map(|r| r.runs.iter()).map(|(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    /// Points in row-major order (rows by `j`, then `i`).
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.rows
            .iter()
            .flat_map(|r| r.runs.iter().flat_map(move |&(lo, hi)| (lo..=hi).map(move |i| LatticePoint::new(i, r.j))))
    }

    fn row(&self, j: i64) -> Option<&Row> {
        self.rows.binary_search_by_key(&j, |r| r.j).ok().map(|k| &self.rows[k])
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.row(p.j).is_some_and(|r| {
            let k = r.runs.partition_point(|&(lo, _)| lo <= p.i);
            k > 0 && r.runs[k - 1].1 >= p.i
        })
    }

    /// Extreme points of every run; their hull is the hull of the set.
    pub fn run_endpoints(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for r in &self.rows {
            for &(lo, hi) in &r.runs {
                out.push(LatticePoint::new(lo, r.j));
                if hi != lo {
                    out.push(LatticePoint::new(hi, r.j));
                }
            }
        }
        out
    }

    /// Points 8-adjacent to some point outside the set, row-major.
    pub fn border(&self) -> Vec<LatticePoint> {
        self.points().filter(|&p| (-1..=1).any(|dj| (-1..=1).any(|di| !self.contains(p.offset((di, dj)))))).collect()
    }

    /// The lattice set turned a quarter turn counterclockwise: `(i, j) -> (-j, i)`.
    pub fn quarter_turn(&self) -> Self {
        Self::from_points(self.h, self.points().map(|p| LatticePoint::new(-p.j, p.i)))
    }
}

/// `D_h(S) = S ∩ hZ×hZ`, exact for rational `h` and exactly representable shapes.
pub fn gauss_digitize(shape: &ConvexShape, h: Rational64) -> Result<LatticeSet> {
    if !h.is_positive() {
        return Err(Error::Domain(format!("grid step must be positive, got {h}")));
    }
    let mut spans = Vec::new();
    if let Some(frame) = shape.exact_frame(h) {
        let (lo, hi) = frame.rows();
        for j in lo..=hi {
            if let Some((a, b)) = frame.row_span(j)? {
                spans.push((j, a, b));
            }
        }
    } else {
        spans = float_rows(shape, h);
    }
    let set = LatticeSet::from_row_spans(h, spans);
    if set.is_empty() {
        return Err(Error::EmptyDigitization);
    }
    Ok(set)
}

// Rotated ellipses: solve each row's chord in floating point, then settle
// the run ends with the membership predicate.
fn float_rows(shape: &ConvexShape, h: Rational64) -> Vec<(i64, i64, i64)> {
    let ShapeKind::Ellipse { rx, ry, rotation } = shape.kind() else { unreachable!("disks are always exact") };
    let hf = rational_to_f64(h);
    let (cx, cy) = shape.center_f64();
    let (a, b) = (rational_to_f64(rx), rational_to_f64(ry));
    let (s, c) = rotation.sin_cos();
    let qa = c * c / (a * a) + s * s / (b * b);
    let qb = 2.0 * c * s * (1.0 / (a * a) - 1.0 / (b * b));
    let qc = s * s / (a * a) + c * c / (b * b);
    let half_height = (a * a * s * s + b * b * c * c).sqrt();
    let inside = |i: i64, j: i64| shape.implicit(hf * i as f64, hf * j as f64) <= 0.0;
    let j_lo = ((cy - half_height) / hf).floor() as i64 - 1;
    let j_hi = ((cy + half_height) / hf).ceil() as i64 + 1;
    let mut rows = Vec::new();
    for j in j_lo..=j_hi {
        let y = hf * j as f64 - cy;
        // qa X^2 + qb X y + qc y^2 - 1 = 0
        let disc = (qb * y).powi(2) - 4.0 * qa * (qc * y * y - 1.0);
        if disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        let x1 = (-qb * y - sq) / (2.0 * qa) + cx;
        let x2 = (-qb * y + sq) / (2.0 * qa) + cx;
        let mut lo = (x1 / hf).ceil() as i64;
        let mut hi = (x2 / hf).floor() as i64;
        while inside(lo - 1, j) {
            lo -= 1;
        }
        while lo <= hi && !inside(lo, j) {
            lo += 1;
        }
        while inside(hi + 1, j) {
            hi += 1;
        }
        while hi >= lo && !inside(hi, j) {
            hi -= 1;
        }
        if lo <= hi {
            rows.push((j, lo, hi));
        }
    }
    rows
}

/// True iff the set is 4-connected and equals the lattice points of its hull.
pub fn is_cdp(set: &LatticeSet) -> bool {
    let rows = set.rows();
    if rows.is_empty() {
        return false;
    }
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.j != a.j + 1 || a.runs.len() != 1 || b.runs.len() != 1 {
            return false;
        }
        let ((alo, ahi), (blo, bhi)) = (a.runs[0], b.runs[0]);
        if blo > ahi || alo > bhi {
            return false;
        }
    }
    if rows[0].runs.len() != 1 {
        return false;
    }
    let hull = convex_hull(&set.run_endpoints());
    let bounds = hull_row_bounds(&hull);
    bounds.len() == rows.len() && bounds.iter().zip(rows).all(|(&(j, lo, hi), r)| r.j == j && r.runs[0] == (lo, hi))
}

/// Exact membership of the world point `(h*i, h*j)`.
pub fn lattice_point_in_shape(shape: &ConvexShape, h: Rational64, p: LatticePoint) -> bool {
    shape.contains(RationalPoint::new(h * p.i, h * p.j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(i, j)| LatticePoint::new(i, j)).collect()
    }

    #[test]
    fn digitize_unit_disk_examples() {
        let d = ConvexShape::unit_disk();
        let s = gauss_digitize(&d, h(1, 2)).unwrap();
        assert_eq!(s.len(), 13);
        let mut brute = Vec::new();
        for j in -2..=2i64 {
            for i in -2..=2i64 {
                if i * i + j * j <= 4 {
                    brute.push(LatticePoint::new(i, j));
                }
            }
        }
        assert_eq!(s.points().collect::<Vec<_>>(), brute);

        let s = gauss_digitize(&d, h(2, 1)).unwrap();
        assert_eq!(s.points().collect::<Vec<_>>(), pts(&[(0, 0)]));

        let s = gauss_digitize(&d, h(1, 1)).unwrap();
        assert_eq!(s.points().collect::<Vec<_>>(), pts(&[(0, -1), (-1, 0), (0, 0), (1, 0), (0, 1)]));
    }

    #[test]
    fn digitize_errors() {
        let d: ConvexShape = "disk:1/3,1/3,1/10".parse().unwrap();
        assert!(matches!(gauss_digitize(&d, h(1, 1)), Err(Error::EmptyDigitization)));
        assert!(gauss_digitize(&d, h(0, 1)).is_err());
    }

    #[test]
    fn exact_digitization_matches_membership() {
        for text in ["disk:1/3,-2/7,5/4", "ellipse:1/5,0,2,1,0", "ellipse:0,0,3/2,7/5,0"] {
            let shape: ConvexShape = text.parse().unwrap();
            let step = h(1, 9);
            let s = gauss_digitize(&shape, step).unwrap();
            for j in -30..=30 {
                for i in -30..=30 {
                    let p = LatticePoint::new(i, j);
                    assert_eq!(s.contains(p), lattice_point_in_shape(&shape, step, p), "{text} {p:?}");
                }
            }
        }
    }

    #[test]
    fn rotated_ellipse_digitization_matches_predicate() {
        let shape: ConvexShape = "ellipse:1/7,1/9,2,1,0.4".parse().unwrap();
        let step = h(1, 16);
        let s = gauss_digitize(&shape, step).unwrap();
        for j in -40..=40 {
            for i in -40..=40 {
                let p = LatticePoint::new(i, j);
                assert_eq!(s.contains(p), lattice_point_in_shape(&shape, step, p));
            }
        }
        assert!(is_cdp(&s));
    }

    #[test]
    fn cdp_examples() {
        let d = ConvexShape::unit_disk();
        assert!(is_cdp(&gauss_digitize(&d, h(1, 2)).unwrap()));
        assert!(!is_cdp(&LatticeSet::from_points(h(1, 1), pts(&[(0, 0), (2, 0)]))));
        assert!(is_cdp(&LatticeSet::from_points(h(1, 1), pts(&[(0, 0)]))));
        // diagonal pair: hull holds no other lattice point, but not 4-connected
        assert!(!is_cdp(&LatticeSet::from_points(h(1, 1), pts(&[(0, 0), (1, 1)]))));
        // L-shape is 4-connected but not hull-convex
        assert!(!is_cdp(&LatticeSet::from_points(
            h(1, 1),
            pts(&[(0, 0), (1, 0), (0, 1)]).into_iter().chain(pts(&[(2, 0), (0, 2)]))
        )));
        assert!(!is_cdp(&LatticeSet::from_points(h(1, 1), Vec::new())));
    }

    #[test]
    fn cdp_for_small_steps_on_default_disk() {
        let d = ConvexShape::unit_disk();
        for k in 3..=10 {
            let s = gauss_digitize(&d, h(1, 1 << k)).unwrap();
            assert!(is_cdp(&s), "h = 1/{}", 1 << k);
        }
        for den in 8..=64 {
            let s = gauss_digitize(&d, h(1, den)).unwrap();
            assert!(is_cdp(&s), "h = 1/{den}");
        }
    }

    #[test]
    fn border_of_small_disk() {
        let s = gauss_digitize(&ConvexShape::unit_disk(), h(1, 2)).unwrap();
        let b = s.border();
        assert_eq!(b.len(), 12);
        assert!(!b.contains(&LatticePoint::new(0, 0)));
    }
}
