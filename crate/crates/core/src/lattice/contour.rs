use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use super::{is_cdp, LatticePoint, LatticeSet};
use crate::error::{Error, Result};
use crate::freeman::{code_of, step};
use crate::shapes::parse_rational;

/// A closed 4-connected Freeman chain around a convex digital polygon.
///
/// The chain runs with the interior on its left (counterclockwise with `y`
/// pointing up) from the lowest-then-leftmost border point. Thin spikes of
/// the polygon are walked out and back, so a point may occur twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalContour {
    h: Rational64,
    start: LatticePoint,
    codes: Vec<u8>,
    // points[k] is the position before codes[k]
    points: Vec<LatticePoint>,
}

impl DigitalContour {
    pub fn new(h: Rational64, start: LatticePoint, codes: Vec<u8>) -> Result<Self> {
        let mut points = Vec::with_capacity(codes.len());
        let mut p = start;
        for &c in &codes {
            if c > 3 {
                return Err(Error::Domain(format!("freeman code {c} out of range")));
            }
            points.push(p);
            p = p.offset(step(c));
        }
        if p != start {
            return Err(Error::Domain(format!(
                "contour is not closed: ends at ({}, {}) instead of ({}, {})",
                p.i, p.j, start.i, start.j
            )));
        }
        Ok(Self { h, start, codes, points })
    }

    pub fn h(&self) -> Rational64 {
        self.h
    }

    pub fn h_f64(&self) -> f64 {
        crate::shapes::rational_to_f64(self.h)
    }

    pub fn start(&self) -> LatticePoint {
        self.start
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Number of codes (equivalently, of positions along the walk).
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Point at a cyclic position (any integer).
    pub fn point(&self, k: i64) -> LatticePoint {
        if self.points.is_empty() {
            return self.start;
        }
        self.points[k.rem_euclid(self.points.len() as i64) as usize]
    }

    /// Code leaving a cyclic position.
    pub fn code(&self, k: i64) -> u8 {
        self.codes[k.rem_euclid(self.codes.len() as i64) as usize]
    }

    pub fn distinct_points(&self) -> usize {
        let mut v = self.points.clone();
        v.sort_unstable();
        v.dedup();
        v.len().max(1)
    }

    /// Word rendered over `0123`.
    pub fn code_string(&self) -> String {
        self.codes.iter().map(|c| char::from(b'0' + c)).collect()
    }
}

impl fmt::Display for DigitalContour {
    /// Three-line text form: `h <rational>`, `start <i> <j>`, then the codes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h {}", self.h)?;
        writeln!(f, "start {} {}", self.start.i, self.start.j)?;
        writeln!(f, "{}", self.code_string())
    }
}

impl FromStr for DigitalContour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let bad = |what: &str| Error::Parse(format!("contour file: {what}"));
        let h = lines
            .next()
            .and_then(|l| l.trim().strip_prefix("h "))
            .ok_or_else(|| bad("first line must be `h <rational>`"))?;
        let h = parse_rational(h)?;
        let start = lines
            .next()
            .and_then(|l| l.trim().strip_prefix("start "))
            .ok_or_else(|| bad("second line must be `start <i> <j>`"))?;
        let coords: Vec<i64> = start
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("invalid start coordinate")))
            .collect::<Result<_>>()?;
        let [i, j] = coords[..] else {
            return Err(bad("start needs two coordinates"));
        };
        let codes = lines
            .next()
            .unwrap_or("")
            .trim()
            .bytes()
            .map(|b| match b {
                b'0'..=b'3' => Ok(b - b'0'),
                _ => Err(bad("codes must be over 0123")),
            })
            .collect::<Result<Vec<u8>>>()?;
        DigitalContour::new(h, LatticePoint::new(i, j), codes)
    }
}

/// Walks the border of a convex digital polygon with the interior on the left.
///
/// The walk follows the boundary of the union of pixels centered on the set
/// and records the pixel on its inner side; concave pixel corners contribute
/// the pixel diagonal to the turn, keeping the path 4-connected.
pub fn trace_border(set: &LatticeSet) -> Result<DigitalContour> {
    if !is_cdp(set) {
        return Err(Error::ContractViolation("border tracing needs a convex digital polygon".into()));
    }
    let start = set.points().next().expect("cdp is nonempty");
    let mut codes = Vec::new();
    let (mut pixel, mut dir) = (start, 0u8);
    loop {
        let ahead_left = pixel.offset(step(dir));
        let right = (dir + 3) % 4;
        let ahead_right = ahead_left.offset(step(right));
        if set.contains(ahead_right) {
            // concave corner: the pinch case never occurs on a cdp
            debug_assert!(set.contains(ahead_left));
            codes.push(dir);
            codes.push(right);
            pixel = ahead_right;
            dir = right;
        } else if set.contains(ahead_left) {
            codes.push(dir);
            pixel = ahead_left;
        } else {
            dir = (dir + 1) % 4;
        }
        if pixel == start && dir == 0 {
            break;
        }
    }
    let contour = DigitalContour::new(set.h(), start, codes)?;
    let mut visits: HashMap<LatticePoint, u32> = HashMap::with_capacity(contour.len());
    for &p in contour.points() {
        let v = visits.entry(p).or_default();
        *v += 1;
        if *v > 2 {
            return Err(Error::DegenerateBorder(format!(
                "point ({}, {}) is visited more than twice; grid step too coarse for this shape",
                p.i, p.j
            )));
        }
    }
    Ok(contour)
}

/// Freeman code of the move from `a` to `b`, if they are 4-adjacent.
pub fn code_between(a: LatticePoint, b: LatticePoint) -> Option<u8> {
    code_of(b.i - a.i, b.j - a.j)
}
