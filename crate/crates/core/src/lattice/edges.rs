use num_integer::Integer;

use super::{CdpVertices, DigitalContour, LatticePoint};
use crate::arithmetic::ContinuedFraction;
use crate::error::{Error, Result};
use crate::freeman::Octant;

/// The contour subpath between two consecutive polygon vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalEdge {
    pub from_vertex: LatticePoint,
    pub to_vertex: LatticePoint,
    pub octant: Octant,
    /// First-octant slope `p/q`, irreducible.
    pub p: u64,
    pub q: u64,
    /// Repetitions of the pattern along the edge.
    pub delta: u64,
    /// Contour positions `[start, end)`; `end` may equal the contour length.
    pub span: (usize, usize),
    /// Whether the word is made of reversed patterns.
    pub reversed: bool,
}

impl DigitalEdge {
    /// `delta * (p + q)`, the number of moves.
    pub fn digital_length(&self) -> u64 {
        self.delta * (self.p + self.q)
    }

    /// Direction of the edge in world coordinates, in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        self.octant.slope_angle(self.p, self.q)
    }

    /// Primitive world direction `(dx, dy)`.
    pub fn direction(&self) -> (i64, i64) {
        self.octant.from_first(self.q as i64, self.p as i64)
    }

    pub fn continued_fraction(&self) -> ContinuedFraction {
        ContinuedFraction::new(self.p, self.q).expect("edge slopes are irreducible")
    }
}

/// Splits the contour at the polygon vertices and checks that every piece
/// is `delta` copies of the pattern (or reversed pattern) of its slope.
pub fn digital_edges(contour: &DigitalContour, vertices: &CdpVertices) -> Result<Vec<DigitalEdge>> {
    let n = contour.len();
    let m = vertices.len();
    if n == 0 || m < 2 {
        return Ok(Vec::new());
    }
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (from, to) = (vertices.vertices[k], vertices.vertices[(k + 1) % m]);
        let start = vertices.contour_indices[k];
        let end = if k + 1 == m { n } else { vertices.contour_indices[k + 1] };
        if contour.point(start as i64) != from || contour.point(end as i64) != to || end <= start {
            return Err(Error::ContractViolation(format!("vertex {k} does not lie on the contour in order")));
        }
        let (dx, dy) = (to.i - from.i, to.j - from.j);
        let octant = Octant::of(dx, dy).ok_or_else(|| Error::ContractViolation(format!("edge {k} has zero length")))?;
        let g = dx.unsigned_abs().gcd(&dy.unsigned_abs());
        let (q, p) = octant.to_first(dx / g as i64, dy / g as i64);
        let (p, q) = (p as u64, q as u64);
        let cf = ContinuedFraction::new(p, q)?;
        let pattern = cf.pattern()?;
        let word: Vec<u8> = contour.codes()[start..end].iter().map(|&c| octant.map_code(c)).collect();
        let forward = pattern.letters().repeat(g as usize);
        let mut backward_unit = pattern.letters().to_vec();
        backward_unit.reverse();
        let backward = backward_unit.repeat(g as usize);
        let reversed = if word == forward {
            false
        } else if word == backward {
            true
        } else {
            return Err(Error::PatternMismatch { index: k, p, q, delta: g });
        };
        edges.push(DigitalEdge {
            from_vertex: from,
            to_vertex: to,
            octant,
            p,
            q,
            delta: g,
            span: (start, end),
            reversed,
        });
    }
    Ok(edges)
}
