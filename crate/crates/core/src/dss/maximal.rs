use super::{DssCharacteristics, DssRecognizer};
use crate::arithmetic::ContinuedFraction;
use crate::error::{Error, Result};
use crate::lattice::{DigitalContour, DigitalEdge};

/// A DSS of a closed contour that cannot be extended at either end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalSegment {
    /// Contour position of the first point, in `[0, n)`.
    pub first: usize,
    /// Number of points covered; the span may wrap past position `n - 1`.
    pub len: usize,
    pub characteristics: DssCharacteristics,
}

impl MaximalSegment {
    /// Contour position of the last point, in `[0, n)`.
    pub fn last(&self, n: usize) -> usize {
        (self.first + self.len - 1) % n
    }

    /// Steps from the first point to position `k`, if `k` is covered.
    pub fn offset_of(&self, k: usize, n: usize) -> Option<usize> {
        let off = (k + n - self.first) % n;
        (off < self.len).then_some(off)
    }

    /// Distance from position `k` to the nearer end of the segment.
    pub fn centrality(&self, k: usize, n: usize) -> Option<usize> {
        self.offset_of(k, n).map(|off| off.min(self.len - 1 - off))
    }

    /// Primitive directions an edge inside the segment may take: the
    /// segment's own slope and its previous convergent, in world axes.
    pub fn admissible_edge_directions(&self) -> Result<Vec<(i64, i64)>> {
        let red = self.characteristics.reduced();
        let mut out = vec![self.characteristics.direction()];
        let table = ContinuedFraction::new(red.p, red.q)?.convergents()?;
        let (pp, qp) = table.get(table.depth() as i64 - 1).expect("row k = -1 always exists");
        out.push(red.octant.from_first(qp as i64, pp as i64));
        if red.p == red.q {
            // a diagonal sits on an octant boundary: both axes neighbor it
            out.push(red.octant.from_first(0, 1));
        }
        Ok(out)
    }

    /// Whether some polygon edge lies within the span with an admissible slope.
    pub fn contains_edge(&self, n: usize, edges: &[DigitalEdge]) -> Result<bool> {
        let dirs = self.admissible_edge_directions()?;
        Ok(edges.iter().any(|e| {
            let inside = self.offset_of(e.span.0 % n, n).is_some_and(|off| off + (e.span.1 - e.span.0) < self.len);
            inside && dirs.contains(&e.direction())
        }))
    }
}

fn grow_back(contour: &DigitalContour, rec: &mut DssRecognizer, start: i64, cap: usize) -> Result<i64> {
    let mut s = start;
    while rec.len() < cap && rec.extend_back(contour.point(s - 1))? {
        s -= 1;
    }
    Ok(s)
}

fn grow_front(contour: &DigitalContour, rec: &mut DssRecognizer, end: i64, cap: usize) -> Result<i64> {
    let mut e = end;
    while rec.len() < cap && rec.extend_front(contour.point(e + 1))? {
        e += 1;
    }
    Ok(e)
}

/// All maximal segments of a closed contour, sorted by first position.
///
/// Each segment is found by growing backwards from the point after the
/// previous segment's end, then forwards, so the work is linear in the total
/// length of the segments.
pub fn maximal_segments(contour: &DigitalContour) -> Result<Vec<MaximalSegment>> {
    let n = contour.len();
    if n < 4 {
        return Err(Error::ContractViolation(format!("maximal segments need a contour of length >= 4, got {n}")));
    }
    // a DSS never revisits a point, so it has fewer points than the contour
    let cap = n - 1;
    let mut out: Vec<MaximalSegment> = Vec::new();
    let mut rec = DssRecognizer::new(contour.point(0));
    let s0 = grow_back(contour, &mut rec, 0, cap)?;
    let mut e = grow_front(contour, &mut rec, 0, cap)?;
    let push = |out: &mut Vec<MaximalSegment>, s: i64, rec: &DssRecognizer| {
        out.push(MaximalSegment {
            first: s.rem_euclid(n as i64) as usize,
            len: rec.len(),
            characteristics: rec.characteristics(),
        })
    };
    push(&mut out, s0, &rec);
    loop {
        let mut r = DssRecognizer::new(contour.point(e + 1));
        let s = grow_back(contour, &mut r, e + 1, cap)?;
        if s >= s0 + n as i64 {
            break;
        }
        e = grow_front(contour, &mut r, e + 1, cap)?;
        push(&mut out, s, &r);
        if out.len() > n {
            return Err(Error::ContractViolation("maximal segment scan did not close".into()));
        }
    }
    out.sort_by_key(|m| m.first);
    Ok(out)
}

/// For every contour position, the indices of the maximal segments covering it.
pub fn covering_segments(segments: &[MaximalSegment], n: usize) -> Vec<Vec<usize>> {
    let mut cover = vec![Vec::new(); n];
    for (k, m) in segments.iter().enumerate() {
        for off in 0..m.len {
            cover[(m.first + off) % n].push(k);
        }
    }
    cover
}
