//! Standard lines, digital straight segments and maximal segments.
//!
//! A standard line `(a, b, mu)` holds the integer points with
//! `mu <= a*x - b*y < mu + |a| + |b|`; a digital straight segment (DSS) is a
//! 4-connected piece of one, characterized by the line with the smallest
//! `|a| + |b|`. Characteristics are kept in the frame of the input points and
//! oriented so that `(b, a)` points along the segment.

mod maximal;
pub mod oracle;
mod recognizer;

pub use maximal::{covering_segments, maximal_segments, MaximalSegment};
pub use oracle::{dss_oracle, ORACLE_MAX_POINTS};
pub use recognizer::DssRecognizer;

use crate::freeman::Octant;
use crate::lattice::LatticePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DssCharacteristics {
    pub a: i64,
    pub b: i64,
    pub mu: i64,
    pub upper_first: LatticePoint,
    pub upper_last: LatticePoint,
    pub lower_first: LatticePoint,
    pub lower_last: LatticePoint,
}

impl DssCharacteristics {
    /// `a*x - b*y`.
    pub fn remainder(&self, p: LatticePoint) -> i64 {
        self.a * p.i - self.b * p.j
    }

    /// `|a| + |b|`.
    pub fn thickness(&self) -> i64 {
        self.a.abs() + self.b.abs()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let r = self.remainder(p);
        self.mu <= r && r < self.mu + self.thickness()
    }

    pub fn is_upper_leaning(&self, p: LatticePoint) -> bool {
        self.remainder(p) == self.mu
    }

    pub fn is_lower_leaning(&self, p: LatticePoint) -> bool {
        self.remainder(p) == self.mu + self.thickness() - 1
    }

    /// `(b, a)`, the direction of the segment.
    pub fn direction(&self) -> (i64, i64) {
        (self.b, self.a)
    }

    pub fn octant(&self) -> Octant {
        Octant::of(self.b, self.a).expect("characteristics are never (0, 0)")
    }

    /// First-octant slope `p/q` and shift after mapping the segment's octant
    /// onto octant 0.
    pub fn reduced(&self) -> ReducedCharacteristics {
        let octant = self.octant();
        let (q, p) = octant.to_first(self.b, self.a);
        let mu = if octant.orientation() > 0 { self.mu } else { -self.mu - self.thickness() + 1 };
        ReducedCharacteristics { octant, p: p as u64, q: q as u64, mu }
    }

    /// Direction angle in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        crate::shapes::normalize_angle((self.a as f64).atan2(self.b as f64))
    }
}

/// Characteristics seen from octant 0: `mu <= p*x - q*y < mu + p + q` for
/// the octant-mapped points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedCharacteristics {
    pub octant: Octant,
    pub p: u64,
    pub q: u64,
    pub mu: i64,
}

impl ReducedCharacteristics {
    /// Remainder of a point in the reduced frame.
    pub fn remainder(&self, pt: LatticePoint) -> i64 {
        let (x, y) = self.octant.to_first(pt.i, pt.j);
        self.p as i64 * x - self.q as i64 * y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(a: i64, b: i64, mu: i64) -> DssCharacteristics {
        let o = LatticePoint::new(0, 0);
        DssCharacteristics { a, b, mu, upper_first: o, upper_last: o, lower_first: o, lower_last: o }
    }

    #[test]
    fn remainder_examples() {
        let c = chars(1, 2, 0);
        assert_eq!(c.remainder(LatticePoint::new(0, 0)), 0);
        assert_eq!(c.remainder(LatticePoint::new(2, 1)), 0);
        assert!(c.is_upper_leaning(LatticePoint::new(2, 1)));
        assert_eq!(c.remainder(LatticePoint::new(1, 1)), -1);
        assert!(!c.contains(LatticePoint::new(1, 1)));
        assert!(c.contains(LatticePoint::new(2, 0)));
        assert!(c.is_lower_leaning(LatticePoint::new(2, 0)));
    }

    #[test]
    fn reduction_keeps_membership() {
        // direction (-1, 2) lies in octant 2; a reflection-free map
        let c = chars(2, -1, 0);
        let r = c.reduced();
        assert_eq!(r.octant.index(), 2);
        assert_eq!((r.p, r.q), (1, 2));
        // direction (-2, -1), octant 4 rotation; (1, -2) octant 6; (2, -1) octant 7 reflection
        for (a, b, mu) in [(2, -1, 0), (-1, -2, 1), (-2, 1, -1), (-1, 2, 2), (1, 2, 0), (2, 1, -1)] {
            let c = chars(a, b, mu);
            let r = c.reduced();
            for x in -6..=6 {
                for y in -6..=6 {
                    let p = LatticePoint::new(x, y);
                    let rr = r.remainder(p);
                    let inside = r.mu <= rr && rr < r.mu + (r.p + r.q) as i64;
                    assert_eq!(inside, c.contains(p), "({a},{b},{mu}) at ({x},{y})");
                }
            }
        }
    }
}
