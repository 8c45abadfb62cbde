use num_integer::Integer;

use super::{DigitalContour, LatticePoint, LatticeSet};
use crate::error::{Error, Result};

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = ((a.i - o.i) as i128, (a.j - o.j) as i128);
    let (bx, by) = ((b.i - o.i) as i128, (b.j - o.j) as i128);
    ax * by - ay * bx
}

/// Extreme points of the convex hull, counterclockwise, starting from the
/// lowest-then-leftmost point. Collinear points are dropped.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort_unstable_by_key(|p| (p.i, p.j));
    pts.dedup();
    if pts.len() <= 2 {
        return rotate_to_start(pts);
    }
    let mut lower: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    rotate_to_start(lower)
}

fn rotate_to_start(mut hull: Vec<LatticePoint>) -> Vec<LatticePoint> {
    if let Some(k) = (0..hull.len()).min_by_key(|&k| hull[k].row_major_key()) {
        hull.rotate_left(k);
    }
    hull
}

/// For every row `j` crossed by the hull, the inclusive range of lattice
/// columns inside it, as `(j, ceil(x_left), floor(x_right))`.
pub fn hull_row_bounds(hull: &[LatticePoint]) -> Vec<(i64, i64, i64)> {
    let n = hull.len();
    if n == 0 {
        return Vec::new();
    }
    let ymin = hull.iter().map(|p| p.j).min().unwrap();
    let ymax = hull.iter().map(|p| p.j).max().unwrap();
    if ymin == ymax {
        let lo = hull.iter().map(|p| p.i).min().unwrap();
        let hi = hull.iter().map(|p| p.i).max().unwrap();
        return vec![(ymin, lo, hi)];
    }
    let pick = |y: i64, right: bool| {
        (0..n).filter(|&k| hull[k].j == y).max_by_key(|&k| if right { hull[k].i } else { -hull[k].i }).unwrap()
    };
    let (ibr, itr, itl, ibl) = (pick(ymin, true), pick(ymax, true), pick(ymax, false), pick(ymin, false));
    let chain = |from: usize, to: usize| {
        let mut c = vec![hull[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % n;
            c.push(hull[k]);
        }
        c
    };
    let right = chain(ibr, itr);
    let mut left = chain(itl, ibl);
    left.reverse();

    // x on segment a-b at row j, a.j < b.j, rounded by `round`
    let x_at = |a: LatticePoint, b: LatticePoint, j: i64, ceil: bool| -> i64 {
        let dy = (b.j - a.j) as i128;
        let num = a.i as i128 * dy + (j - a.j) as i128 * (b.i - a.i) as i128;
        let v = if ceil { Integer::div_ceil(&num, &dy) } else { Integer::div_floor(&num, &dy) };
        v as i64
    };
    let (mut kr, mut kl) = (0usize, 0usize);
    let mut out = Vec::with_capacity((ymax - ymin + 1) as usize);
    for j in ymin..=ymax {
        while right[kr + 1].j < j {
            kr += 1;
        }
        while left[kl + 1].j < j {
            kl += 1;
        }
        let hi = x_at(right[kr], right[kr + 1], j, false);
        let lo = x_at(left[kl], left[kl + 1], j, true);
        out.push((j, lo, hi));
    }
    out
}

/// Vertices of a convex digital polygon, in contour order, with the contour
/// position of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdpVertices {
    pub vertices: Vec<LatticePoint>,
    pub contour_indices: Vec<usize>,
}

impl CdpVertices {
    /// Hull vertices of the border, located along the contour.
    pub fn from_contour(contour: &DigitalContour) -> Result<Self> {
        let pts = contour.points();
        if pts.is_empty() {
            return Ok(Self { vertices: vec![contour.start()], contour_indices: vec![0] });
        }
        let vertices = convex_hull(pts);
        let mut contour_indices = Vec::with_capacity(vertices.len());
        let mut k = 0usize;
        for v in &vertices {
            while k < pts.len() && pts[k] != *v {
                k += 1;
            }
            if k == pts.len() {
                return Err(Error::ContractViolation(format!(
                    "hull vertex ({}, {}) is not visited in contour order",
                    v.i, v.j
                )));
            }
            contour_indices.push(k);
        }
        Ok(Self { vertices, contour_indices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `index,i,j` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,i,j\n");
        for (k, v) in self.contour_indices.iter().zip(&self.vertices) {
            s.push_str(&format!("{k},{},{}\n", v.i, v.j));
        }
        s
    }
}

/// Extreme points of the hull of a set, counterclockwise from its lowest-leftmost point.
pub fn convex_hull_vertices(set: &LatticeSet) -> Vec<LatticePoint> {
    convex_hull(&set.run_endpoints())
}
