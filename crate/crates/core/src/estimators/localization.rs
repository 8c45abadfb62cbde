use crate::error::Result;
use crate::lattice::DigitalEdge;
use crate::shapes::{ConvexShape, ShapeKind};

const SAMPLES: usize = 1000;
const REFINE_TOL: f64 = 1e-12;

/// Gap between a polygon edge and the shape boundary outside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationReport {
    /// Largest distance from the edge to the boundary along the octant's
    /// vertical axis, over the edge's horizontal extent.
    pub max_vertical_distance: f64,
    /// `h / q_{n-1}` for the edge slope `p_n / q_n`.
    pub bound: f64,
    pub satisfied: bool,
}

impl LocalizationReport {
    pub fn ratio(&self) -> f64 {
        self.max_vertical_distance / self.bound
    }
}

/// Measures how far the boundary strays from `edge` in the edge's octant frame.
///
/// Disks use the closed-form extremum of circle minus line; other shapes are
/// sampled densely and refined by golden-section search.
pub fn check_localization_bound(shape: &ConvexShape, edge: &DigitalEdge, h: f64) -> Result<LocalizationReport> {
    let oct = edge.octant;
    let table = edge.continued_fraction().convergents()?;
    let bound = h / table.previous_denominator() as f64;

    let (ax, ay) = {
        let (x, y) = edge.from_vertex.world(h);
        oct.to_first_f64(x, y)
    };
    let bx = {
        let (x, y) = edge.to_vertex.world(h);
        oct.to_first_f64(x, y).0
    };
    let z = edge.p as f64 / edge.q as f64;
    let line = |x: f64| ay + z * (x - ax);
    // interior lies left of the walk; in a mirrored frame that is above
    let below = oct.orientation() > 0;

    let gap = match shape.kind() {
        ShapeKind::Disk { radius } => {
            let r = crate::shapes::rational_to_f64(radius);
            let (cx, cy) = {
                let (x, y) = shape.center_f64();
                oct.to_first_f64(x, y)
            };
            let d = |x: f64| {
                let s = (r * r - (x - cx) * (x - cx)).max(0.0).sqrt();
                if below {
                    line(x) - (cy - s)
                } else {
                    cy + s - line(x)
                }
            };
            let u = z * r / (1.0 + z * z).sqrt();
            let star = if below { cx + u } else { cx - u };
            [ax, bx, star.clamp(ax, bx)].into_iter().map(d).fold(f64::NEG_INFINITY, f64::max)
        }
        ShapeKind::Ellipse { .. } => {
            let dir = oct.from_first_f64(0.0, if below { -1.0 } else { 1.0 });
            let d = |x: f64| {
                let origin = oct.from_first_f64(x, line(x));
                shape.ray_exit(origin, dir).unwrap_or(0.0)
            };
            sampled_max(d, ax, bx)
        }
    };
    Ok(LocalizationReport { max_vertical_distance: gap, bound, satisfied: gap <= bound + REFINE_TOL })
}

fn sampled_max(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let step = (b - a) / (SAMPLES - 1) as f64;
    let (mut best_k, mut best) = (0, f64::NEG_INFINITY);
    for k in 0..SAMPLES {
        let v = f(a + step * k as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let (mut lo, mut hi) = (a + step * best_k.saturating_sub(1) as f64, (a + step * (best_k + 1) as f64).min(b));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > REFINE_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    best.max(f1).max(f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::EdgeContext;
    use crate::freeman::Octant;
    use crate::lattice::{gauss_digitize, trace_border, LatticePoint};
    use num_rational::Rational64;

    fn edge(p: u64, q: u64) -> DigitalEdge {
        DigitalEdge {
            from_vertex: LatticePoint::new(0, 0),
            to_vertex: LatticePoint::new(q as i64, p as i64),
            octant: Octant::new(0).unwrap(),
            p,
            q,
            delta: 1,
            span: (0, (p + q) as usize),
            reversed: false,
        }
    }

    #[test]
    fn bounds_from_convergents() {
        let big = ConvexShape::disk(Default::default(), Rational64::from_integer(1000)).unwrap();
        let r = check_localization_bound(&big, &edge(1, 2), 0.5).unwrap();
        assert_eq!(r.bound, 0.5);
        let r = check_localization_bound(&big, &edge(3, 7), 0.5).unwrap();
        assert_eq!(r.bound, 0.25);
        let r = check_localization_bound(&big, &edge(0, 1), 0.5).unwrap();
        assert_eq!(r.bound, 0.5);
    }

    #[test]
    fn closed_form_matches_sampling() {
        let shape = ConvexShape::unit_disk();
        for den in [16i64, 64] {
            let h = 1.0 / den as f64;
            let c = trace_border(&gauss_digitize(&shape, Rational64::new(1, den)).unwrap()).unwrap();
            let ctx = EdgeContext::new(&c, Default::default()).unwrap();
            for e in &ctx.edges {
                let exact = check_localization_bound(&shape, e, h).unwrap();
                let below = e.octant.orientation() > 0;
                let dir = e.octant.from_first_f64(0.0, if below { -1.0 } else { 1.0 });
                let (ax, ay) = {
                    let (x, y) = e.from_vertex.world(h);
                    e.octant.to_first_f64(x, y)
                };
                let bx = {
                    let (x, y) = e.to_vertex.world(h);
                    e.octant.to_first_f64(x, y).0
                };
                let z = e.p as f64 / e.q as f64;
                let sampled = sampled_max(
                    |x| shape.ray_exit(e.octant.from_first_f64(x, ay + z * (x - ax)), dir).unwrap(),
                    ax,
                    bx,
                );
                assert!((exact.max_vertical_distance - sampled).abs() < 1e-9, "{e:?}");
                assert!(exact.satisfied);
            }
        }
    }
}
