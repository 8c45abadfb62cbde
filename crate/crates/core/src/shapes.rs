//! Smooth convex shapes (disks and ellipses) with exact rational membership
//! and ground-truth tangent directions.
//!
//! Boundaries are oriented counterclockwise with the interior on the left;
//! tangent angles live in `(-pi, pi]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Distance to the boundary under which a point counts as lying on it.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Normalizes an angle to `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Absolute angular difference in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a plain decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 17 {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_val: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac_val: i64 = frac.parse().map_err(|_| bad())?;
        let mag = int_val.abs().checked_mul(den).and_then(|v| v.checked_add(frac_val)).ok_or_else(bad)?;
        return Ok(Rational64::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalPoint {
    pub x: Rational64,
    pub y: Rational64,
}

impl RationalPoint {
    pub fn new(x: Rational64, y: Rational64) -> Self {
        Self { x, y }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (rational_to_f64(self.x), rational_to_f64(self.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind {
    Disk { radius: Rational64 },
    Ellipse { rx: Rational64, ry: Rational64, rotation: f64 },
}

/// A disk or an ellipse: strictly convex, smooth, positive curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexShape {
    center: RationalPoint,
    kind: ShapeKind,
}

/// A point of the boundary together with its tangent direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub position: (f64, f64),
    pub tangent_angle: f64,
}

impl ConvexShape {
    pub fn disk(center: RationalPoint, radius: Rational64) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Domain(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self { center, kind: ShapeKind::Disk { radius } })
    }

    pub fn ellipse(center: RationalPoint, rx: Rational64, ry: Rational64, rotation: f64) -> Result<Self> {
        if !rx.is_positive() || !ry.is_positive() {
            return Err(Error::Domain(format!("ellipse radii must be positive, got {rx}, {ry}")));
        }
        if !rotation.is_finite() {
            return Err(Error::Domain("ellipse rotation must be finite".into()));
        }
        Ok(Self { center, kind: ShapeKind::Ellipse { rx, ry, rotation } })
    }

    /// Unit disk centered at the origin.
    pub fn unit_disk() -> Self {
        let zero = Rational64::zero();
        Self::disk(RationalPoint::new(zero, zero), Rational64::from_integer(1)).unwrap()
    }

    pub fn center(&self) -> RationalPoint {
        self.center
    }

    pub fn center_f64(&self) -> (f64, f64) {
        self.center.to_f64()
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    /// Whether membership is decided with exact integer arithmetic.
    pub fn is_exact(&self) -> bool {
        match self.kind {
            ShapeKind::Disk { .. } => true,
            ShapeKind::Ellipse { rotation, .. } => rotation == 0.0,
        }
    }

    /// Largest distance from the center to the boundary.
    pub fn max_radius(&self) -> f64 {
        match self.kind {
            ShapeKind::Disk { radius } => rational_to_f64(radius),
            ShapeKind::Ellipse { rx, ry, .. } => rational_to_f64(rx).max(rational_to_f64(ry)),
        }
    }

    /// Upper bound on boundary curvature.
    pub fn max_curvature(&self) -> f64 {
        match self.kind {
            ShapeKind::Disk { radius } => 1.0 / rational_to_f64(radius),
            ShapeKind::Ellipse { rx, ry, .. } => {
                let (a, b) = (rational_to_f64(rx), rational_to_f64(ry));
                a.max(b) / a.min(b).powi(2)
            }
        }
    }

    /// The same shape turned a quarter turn counterclockwise about the origin.
    pub fn quarter_turn(&self) -> Self {
        let center = RationalPoint::new(-self.center.y, self.center.x);
        let kind = match self.kind {
            ShapeKind::Disk { radius } => ShapeKind::Disk { radius },
            ShapeKind::Ellipse { rx, ry, rotation } => ShapeKind::Ellipse { rx, ry, rotation: rotation + PI / 2.0 },
        };
        Self { center, kind }
    }

    /// Closed-set membership. Exact for disks and unrotated ellipses.
    pub fn contains(&self, p: RationalPoint) -> bool {
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        match self.kind {
            ShapeKind::Disk { radius } => {
                exact_le(&[(dx, Rational64::from_integer(1)), (dy, Rational64::from_integer(1))], radius)
                    .unwrap_or_else(|| {
                        let (x, y, r) = (rational_to_f64(dx), rational_to_f64(dy), rational_to_f64(radius));
                        x * x + y * y <= r * r
                    })
            }
            ShapeKind::Ellipse { rx, ry, rotation: 0.0 } => {
                // (dx/rx)^2 + (dy/ry)^2 <= 1
                exact_le(&[(dx, rx), (dy, ry)], Rational64::from_integer(1)).unwrap_or_else(|| {
                    let (x, y) = (rational_to_f64(dx / rx), rational_to_f64(dy / ry));
                    x * x + y * y <= 1.0
                })
            }
            ShapeKind::Ellipse { .. } => {
                let (x, y) = p.to_f64();
                self.implicit(x, y) <= 0.0
            }
        }
    }

    /// Implicit function, negative inside, zero on the boundary.
    pub fn implicit(&self, x: f64, y: f64) -> f64 {
        let (u, v) = self.local(x, y);
        match self.kind {
            ShapeKind::Disk { radius } => {
                let r = rational_to_f64(radius);
                (u * u + v * v) / (r * r) - 1.0
            }
            ShapeKind::Ellipse { rx, ry, .. } => {
                let (a, b) = (rational_to_f64(rx), rational_to_f64(ry));
                (u / a).powi(2) + (v / b).powi(2) - 1.0
            }
        }
    }

    // world -> shape frame (centered, unrotated)
    fn local(&self, x: f64, y: f64) -> (f64, f64) {
        let (cx, cy) = self.center_f64();
        let (dx, dy) = (x - cx, y - cy);
        match self.kind {
            ShapeKind::Disk { .. } => (dx, dy),
            ShapeKind::Ellipse { rotation, .. } => {
                let (s, c) = rotation.sin_cos();
                (c * dx + s * dy, -s * dx + c * dy)
            }
        }
    }

    fn local_vector_to_world(&self, u: f64, v: f64) -> (f64, f64) {
        match self.kind {
            ShapeKind::Disk { .. } => (u, v),
            ShapeKind::Ellipse { rotation, .. } => {
                let (s, c) = rotation.sin_cos();
                (c * u - s * v, s * u + c * v)
            }
        }
    }

    fn semi_axes(&self) -> (f64, f64) {
        match self.kind {
            ShapeKind::Disk { radius } => {
                let r = rational_to_f64(radius);
                (r, r)
            }
            ShapeKind::Ellipse { rx, ry, .. } => (rational_to_f64(rx), rational_to_f64(ry)),
        }
    }

    /// Distance from `position` to the boundary along the shape-frame radial ray.
    fn boundary_residual(&self, x: f64, y: f64) -> f64 {
        let (u, v) = self.local(x, y);
        let (a, b) = self.semi_axes();
        let rho = ((u / a).powi(2) + (v / b).powi(2)).sqrt();
        if rho == 0.0 {
            return a.min(b);
        }
        (u * u + v * v).sqrt() * (1.0 - 1.0 / rho).abs()
    }

    /// Tangent angle at a boundary point (interior on the left).
    pub fn tangent_direction(&self, b: &BoundaryPoint) -> Result<f64> {
        let (x, y) = b.position;
        let residual = self.boundary_residual(x, y);
        if residual.is_nan() || residual > BOUNDARY_TOLERANCE {
            return Err(Error::Domain(format!("point ({x}, {y}) is {residual:e} away from the boundary")));
        }
        Ok(self.tangent_at(x, y))
    }

    fn tangent_at(&self, x: f64, y: f64) -> f64 {
        let (u, v) = self.local(x, y);
        let (a, b) = self.semi_axes();
        // outward normal in the shape frame, turned a quarter counterclockwise
        let (nu, nv) = (u / (a * a), v / (b * b));
        let (tx, ty) = self.local_vector_to_world(-nv, nu);
        normalize_angle(ty.atan2(tx))
    }

    /// Boundary point on the ray from the center through `p`.
    pub fn project_to_boundary(&self, p: (f64, f64)) -> Result<BoundaryPoint> {
        let (cx, cy) = self.center_f64();
        let (u, v) = self.local(p.0, p.1);
        if u == 0.0 && v == 0.0 {
            return Err(Error::Domain("cannot project the center onto the boundary".into()));
        }
        let (a, b) = self.semi_axes();
        let s = 1.0 / ((u / a).powi(2) + (v / b).powi(2)).sqrt();
        let (wx, wy) = self.local_vector_to_world(s * u, s * v);
        let position = (cx + wx, cy + wy);
        Ok(BoundaryPoint { position, tangent_angle: self.tangent_at(position.0, position.1) })
    }

    /// Boundary point at polar angle `t` around the center (shape frame).
    pub fn boundary_point_at(&self, t: f64) -> BoundaryPoint {
        let (cx, cy) = self.center_f64();
        let (dx, dy) = self.local_vector_to_world(t.cos(), t.sin());
        self.project_to_boundary((cx + dx, cy + dy)).expect("direction is nonzero")
    }

    /// Largest `t >= 0` with `origin + t*dir` in the shape, for `origin` inside.
    pub fn ray_exit(&self, origin: (f64, f64), dir: (f64, f64)) -> Option<f64> {
        let (u0, v0) = self.local(origin.0, origin.1);
        let (cx, cy) = self.center_f64();
        let (du, dv) = {
            let (a, b) = self.local(cx + dir.0, cy + dir.1);
            (a, b)
        };
        let (a, b) = self.semi_axes();
        let qa = (du / a).powi(2) + (dv / b).powi(2);
        let qb = 2.0 * (u0 * du / (a * a) + v0 * dv / (b * b));
        let qc = (u0 / a).powi(2) + (v0 / b).powi(2) - 1.0;
        let disc = qb * qb - 4.0 * qa * qc;
        if qa == 0.0 || disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        // numerically stable larger root
        let t = if qb >= 0.0 { (-qb - sq) / (2.0 * qa) } else { 2.0 * qc / (-qb + sq) };
        let t_other = qc / (qa * t);
        let t = if t.is_finite() { t.max(t_other) } else { t_other };
        (t >= 0.0).then_some(t)
    }

    /// Exact `[lo, hi]` range of integer `i` with `(h*i, h*j)` in the shape,
    /// scanning row `j`; also the `j` range of nonempty rows.
    pub(crate) fn exact_frame(&self, h: Rational64) -> Option<ExactFrame> {
        if !self.is_exact() {
            return None;
        }
        let (rx, ry) = match self.kind {
            ShapeKind::Disk { radius } => (radius, radius),
            ShapeKind::Ellipse { rx, ry, .. } => (rx, ry),
        };
        let den = [h, self.center.x, self.center.y, rx, ry].iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
        let den = den as i128;
        let scale = |r: Rational64| -> Option<i128> { (*r.numer() as i128).checked_mul(den / *r.denom() as i128) };
        Some(ExactFrame {
            h: scale(h)?,
            cx: scale(self.center.x)?,
            cy: scale(self.center.y)?,
            rx: scale(rx)?,
            ry: scale(ry)?,
        })
    }
}

/// Shape parameters scaled to a common integer denominator.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ExactFrame {
    h: i128,
    cx: i128,
    cy: i128,
    rx: i128,
    ry: i128,
}

impl ExactFrame {
    pub(crate) fn rows(&self) -> (i64, i64) {
        let lo = Integer::div_ceil(&(self.cy - self.ry), &self.h);
        let hi = Integer::div_floor(&(self.cy + self.ry), &self.h);
        (lo as i64, hi as i64)
    }

    /// Integer columns of row `j` inside the shape: `(Hi - X)^2 ry^2 + (Hj - Y)^2 rx^2 <= rx^2 ry^2`.
    pub(crate) fn row_span(&self, j: i64) -> Result<Option<(i64, i64)>> {
        let of = || Error::Overflow("exact digitization");
        let dy = (self.h.checked_mul(j as i128).ok_or_else(of)?).checked_sub(self.cy).ok_or_else(of)?;
        let rx2 = self.rx.checked_mul(self.rx).ok_or_else(of)?;
        let ry2 = self.ry.checked_mul(self.ry).ok_or_else(of)?;
        let budget =
            rx2.checked_mul(ry2).and_then(|v| v.checked_sub(dy.checked_mul(dy)?.checked_mul(rx2)?)).ok_or_else(of)?;
        if budget < 0 {
            return Ok(None);
        }
        // (Hi - X)^2 <= budget / ry^2, left side integer
        let s = (budget / ry2).sqrt();
        let lo = Integer::div_ceil(&(self.cx - s), &self.h);
        let hi = Integer::div_floor(&(self.cx + s), &self.h);
        if lo > hi {
            return Ok(None);
        }
        Ok(Some((lo as i64, hi as i64)))
    }
}

// sum (n_k/d_k)^2 <= rhs^2, all in exact integer arithmetic; None on overflow
fn exact_le(terms: &[(Rational64, Rational64)], rhs: Rational64) -> Option<bool> {
    let mut den: i128 = rhs.denom().abs() as i128;
    let mut vals: Vec<(i128, i128)> = Vec::new();
    for (n, d) in terms {
        let q = *n / *d;
        vals.push((*q.numer() as i128, *q.denom() as i128));
        den = den.lcm(&(*q.denom() as i128));
    }
    let mut lhs: i128 = 0;
    for (n, d) in vals {
        let v = n.checked_mul(den / d)?;
        lhs = lhs.checked_add(v.checked_mul(v)?)?;
    }
    let r = (*rhs.numer() as i128).checked_mul(den / *rhs.denom() as i128)?;
    Some(lhs <= r.checked_mul(r)?)
}

impl fmt::Display for ConvexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ShapeKind::Disk { radius } => write!(f, "disk:{},{},{}", self.center.x, self.center.y, radius),
            ShapeKind::Ellipse { rx, ry, rotation } => {
                write!(f, "ellipse:{},{},{},{},{}", self.center.x, self.center.y, rx, ry, rotation)
            }
        }
    }
}

impl FromStr for ConvexShape {
    type Err = Error;

    /// `disk:cx,cy,r` or `ellipse:cx,cy,rx,ry,rot` with rational literals.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("shape `{s}` lacks a `kind:` prefix")))?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        match (kind.trim(), parts.len()) {
            ("disk", 3) => {
                let c = RationalPoint::new(parse_rational(parts[0])?, parse_rational(parts[1])?);
                ConvexShape::disk(c, parse_rational(parts[2])?)
            }
            ("ellipse", 5) => {
                let c = RationalPoint::new(parse_rational(parts[0])?, parse_rational(parts[1])?);
                let rot: f64 =
                    parts[4].parse().map_err(|_| Error::Parse(format!("invalid rotation `{}`", parts[4])))?;
                ConvexShape::ellipse(c, parse_rational(parts[2])?, parse_rational(parts[3])?, rot)
            }
            _ => Err(Error::Parse(format!("unrecognized shape `{s}`"))),
        }
    }
}
