//! Tangent direction estimators on digitized borders.
//!
//! - edge: slope of the polygon edge crossed by the ray from a boundary
//!   point toward the shape center
//! - most-centered: slope of the maximal segment in which the point sits
//!   most centrally
//! - lambda-MST: weighted mean of the slopes of all covering maximal segments

mod localization;

pub use localization::{check_localization_bound, LocalizationReport};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::dss::{covering_segments, maximal_segments, MaximalSegment};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Rational64;

use crate::lattice::{digital_edges, CdpVertices, DigitalContour, DigitalEdge, LatticePoint};
use crate::shapes::{normalize_angle, RationalPoint};

/// Weight profile for the lambda-MST estimator, on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LambdaFunction {
    /// `2 min(t, 1 - t)`
    #[default]
    Triangle,
    /// `exp(4 - 1 / (t (1 - t)))`, smooth and 1 at the middle
    Bump,
}

impl LambdaFunction {
    pub fn eval(self, t: f64) -> f64 {
        if !(t > 0.0 && t < 1.0) {
            return 0.0;
        }
        match self {
            LambdaFunction::Triangle => 2.0 * t.min(1.0 - t),
            LambdaFunction::Bump => (4.0 - 1.0 / (t * (1.0 - t))).exp(),
        }
    }
}

impl fmt::Display for LambdaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaFunction::Triangle => "triangle",
            LambdaFunction::Bump => "bump",
        })
    }
}

impl FromStr for LambdaFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(LambdaFunction::Triangle),
            "bump" => Ok(LambdaFunction::Bump),
            _ => Err(Error::Parse(format!("unknown lambda `{s}` (expected triangle or bump)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimator {
    Edge,
    MostCentered,
    LambdaMst(LambdaFunction),
}

impl Estimator {
    /// Short name used on the command line: `edge`, `mcms` or `lmst`.
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Edge => "edge",
            Estimator::MostCentered => "mcms",
            Estimator::LambdaMst(_) => "lmst",
        }
    }

    pub fn lambda(self) -> Option<LambdaFunction> {
        match self {
            Estimator::LambdaMst(l) => Some(l),
            _ => None,
        }
    }

    pub fn parse(name: &str, lambda: LambdaFunction) -> Result<Self> {
        match name {
            "edge" => Ok(Estimator::Edge),
            "mcms" => Ok(Estimator::MostCentered),
            "lmst" => Ok(Estimator::LambdaMst(lambda)),
            _ => Err(Error::Parse(format!("unknown estimator `{name}` (expected edge, mcms or lmst)"))),
        }
    }
}

/// Contour spans supporting an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Index of the digital edge and its contour span `[start, end)`.
    Edge { index: usize, span: (usize, usize) },
    /// Index of a maximal segment, its first position and point count.
    Segment { index: usize, first: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentEstimate {
    /// Radians in `(-pi, pi]`.
    pub angle: f64,
    pub source: Estimator,
    pub support: Vec<Support>,
    /// Per supporting segment, lambda-MST only.
    pub eccentricities: Vec<f64>,
}

/// Polygon edges of a contour, located by polar angle around a center.
#[derive(Debug, Clone)]
pub struct EdgeContext {
    pub edges: Vec<DigitalEdge>,
    h: f64,
    center: (f64, f64),
    // polar angles of edge start vertices, relative to the first, increasing in [0, 2pi)
    offsets: Vec<f64>,
    base: f64,
    // exact frame: a lattice point maps to (kh*i - cx, kh*j - cy), the world
    // offset from the center scaled by a common denominator
    kh: i128,
    cx: i128,
    cy: i128,
}

impl EdgeContext {
    /// `center` must lie strictly inside the polygon.
    pub fn new(contour: &DigitalContour, center: RationalPoint) -> Result<Self> {
        let vertices = CdpVertices::from_contour(contour)?;
        let edges = digital_edges(contour, &vertices)?;
        if edges.len() < 3 {
            return Err(Error::ContractViolation("edge estimator needs a polygon with at least 3 edges".into()));
        }
        let hr = contour.h();
        let den =
            [*hr.denom(), *center.x.denom(), *center.y.denom()].into_iter().fold(1i128, |acc, d| acc.lcm(&(d as i128)));
        let scale = |r: Rational64| -> Result<i128> {
            (*r.numer() as i128).checked_mul(den / *r.denom() as i128).ok_or(Error::Overflow("edge context scaling"))
        };
        let (kh, cx, cy) = (scale(hr)?, scale(center.x)?, scale(center.y)?);
        let h = contour.h_f64();
        let center = center.to_f64();
        let polar = |e: &DigitalEdge| {
            let (x, y) = e.from_vertex.world(h);
            (y - center.1).atan2(x - center.0)
        };
        let base = polar(&edges[0]);
        let offsets: Vec<f64> = edges.iter().map(|e| (polar(e) - base).rem_euclid(2.0 * PI)).collect();
        let ctx = Self { edges, h, center, offsets, base, kh, cx, cy };
        let m = ctx.edges.len();
        if (0..m).any(|k| ctx.cross(ctx.edges[k].from_vertex, ctx.edges[(k + 1) % m].from_vertex) <= 0) {
            return Err(Error::ContractViolation("shape center is not inside the digital polygon".into()));
        }
        Ok(ctx)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    fn offset(&self, p: LatticePoint) -> (i128, i128) {
        (self.kh * p.i as i128 - self.cx, self.kh * p.j as i128 - self.cy)
    }

    // sign of the turn from center->a to center->b
    fn cross(&self, a: LatticePoint, b: LatticePoint) -> i128 {
        let (ax, ay) = self.offset(a);
        let (bx, by) = self.offset(b);
        (ax * by - ay * bx).signum()
    }

    /// Index of the edge met by the ray from `m` toward the center. A ray
    /// through a vertex picks the edge leaving it.
    pub fn edge_below(&self, m: (f64, f64)) -> usize {
        let theta = (m.1 - self.center.1).atan2(m.0 - self.center.0);
        let t = (theta - self.base).rem_euclid(2.0 * PI);
        self.offsets.partition_point(|&o| o <= t).max(1) - 1
    }

    /// As [`Self::edge_below`] for any boundary point on the ray from the
    /// center through `p`, decided exactly.
    pub fn edge_below_point(&self, p: LatticePoint) -> usize {
        let m = self.edges.len();
        let in_sector = |k: usize| {
            self.cross(self.edges[k].from_vertex, p) >= 0 && self.cross(self.edges[(k + 1) % m].from_vertex, p) < 0
        };
        let guess = self.edge_below(p.world(self.h));
        [guess, (guess + 1) % m, (guess + m - 1) % m]
            .into_iter()
            .chain(0..m)
            .find(|&k| in_sector(k))
            .expect("sectors around an interior center cover the plane")
    }
}

fn edge_estimate(ctx: &EdgeContext, index: usize) -> TangentEstimate {
    let e = &ctx.edges[index];
    TangentEstimate {
        angle: e.angle(),
        source: Estimator::Edge,
        support: vec![Support::Edge { index, span: e.span }],
        eccentricities: Vec::new(),
    }
}

/// Slope angle of the polygon edge lying toward the center from `m`.
pub fn tangent_edge(ctx: &EdgeContext, m: (f64, f64)) -> TangentEstimate {
    edge_estimate(ctx, ctx.edge_below(m))
}

/// [`tangent_edge`] at the boundary point radially behind the lattice point `p`.
pub fn tangent_edge_at(ctx: &EdgeContext, p: LatticePoint) -> TangentEstimate {
    edge_estimate(ctx, ctx.edge_below_point(p))
}

/// Maximal segments of a contour with, for each position, those covering it.
#[derive(Debug, Clone)]
pub struct SegmentCover {
    pub segments: Vec<MaximalSegment>,
    cover: Vec<Vec<usize>>,
    n: usize,
}

impl SegmentCover {
    pub fn new(contour: &DigitalContour) -> Result<Self> {
        let segments = maximal_segments(contour)?;
        let n = contour.len();
        let cover = covering_segments(&segments, n);
        Ok(Self { segments, cover, n })
    }

    pub fn contour_len(&self) -> usize {
        self.n
    }

    /// Indices of the segments covering position `k`.
    pub fn covering(&self, k: usize) -> &[usize] {
        &self.cover[k % self.n]
    }

    /// Covering segment maximizing the distance from `k` to its nearer end;
    /// ties go to the longer segment, then to the one starting earlier
    /// relative to `k`.
    pub fn most_centered(&self, k: usize) -> usize {
        let n = self.n;
        *self
            .covering(k)
            .iter()
            .max_by_key(|&&s| {
                let m = &self.segments[s];
                let off = m.offset_of(k % n, n).expect("covering segment");
                (m.centrality(k % n, n).unwrap(), m.len, off)
            })
            .expect("every position is covered")
    }
}

fn segment_support(cover: &SegmentCover, s: usize) -> Support {
    let m = &cover.segments[s];
    Support::Segment { index: s, first: m.first, len: m.len }
}

/// Slope angle of the most centered maximal segment around position `k`.
pub fn tangent_ms_most_centered(cover: &SegmentCover, k: usize) -> TangentEstimate {
    let s = cover.most_centered(k);
    TangentEstimate {
        angle: cover.segments[s].characteristics.angle(),
        source: Estimator::MostCentered,
        support: vec![segment_support(cover, s)],
        eccentricities: Vec::new(),
    }
}

/// Mean slope angle of the maximal segments around position `k`, weighted by
/// `lambda` of the position's eccentricity in each.
pub fn tangent_lambda_mst(cover: &SegmentCover, k: usize, lambda: LambdaFunction) -> TangentEstimate {
    let n = cover.n;
    let reference = cover.segments[cover.most_centered(k)].characteristics.angle();
    let (mut num, mut den) = (0.0, 0.0);
    let mut support = Vec::new();
    let mut eccentricities = Vec::new();
    for &s in cover.covering(k) {
        let m = &cover.segments[s];
        let e = m.offset_of(k % n, n).unwrap() as f64 / (m.len - 1) as f64;
        let w = lambda.eval(e);
        let theta = reference + normalize_angle(m.characteristics.angle() - reference);
        num += w * theta;
        den += w;
        support.push(segment_support(cover, s));
        eccentricities.push(e);
    }
    let angle = if den > 0.0 { normalize_angle(num / den) } else { normalize_angle(reference) };
    TangentEstimate { angle, source: Estimator::LambdaMst(lambda), support, eccentricities }
}
