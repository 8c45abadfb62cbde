use super::DssCharacteristics;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

type V = (i64, i64);

// Quarter-turn frames: base code `c` is sent to +x and `c + 1` to +y.
fn to_local(base: u8, (x, y): V) -> V {
    match base & 3 {
        0 => (x, y),
        1 => (y, -x),
        2 => (-x, -y),
        _ => (-y, x),
    }
}

fn to_world(base: u8, (x, y): V) -> V {
    match base & 3 {
        0 => (x, y),
        1 => (-y, x),
        2 => (-x, -y),
        _ => (y, -x),
    }
}

/// Frame-local arithmetic state with `a, b >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Local {
    a: i64,
    b: i64,
    mu: i64,
    uf: V,
    ul: V,
    lf: V,
    ll: V,
}

impl Local {
    fn r(&self, p: V) -> i64 {
        self.a * p.0 - self.b * p.1
    }

    fn top(&self) -> i64 {
        self.mu + self.a + self.b - 1
    }

    // Straight run of local +x (code == base) or +y moves.
    fn run(first: V, last: V, along_x: bool) -> Self {
        let (a, b) = if along_x { (0, 1) } else { (1, 0) };
        let mu = a * first.0 - b * first.1;
        Local { a, b, mu, uf: first, ul: last, lf: first, ll: last }
    }

    fn push_front(&self, p: V) -> Option<Self> {
        let r = self.r(p);
        let mut s = *self;
        if self.mu <= r && r <= self.top() {
            if r == self.mu {
                s.ul = p;
            }
            if r == self.top() {
                s.ll = p;
            }
        } else if r == self.mu - 1 {
            s.ul = p;
            s.lf = self.ll;
            s.b = p.0 - self.uf.0;
            s.a = p.1 - self.uf.1;
            s.mu = s.r(self.uf);
        } else if r == self.top() + 1 {
            s.ll = p;
            s.uf = self.ul;
            s.b = p.0 - self.lf.0;
            s.a = p.1 - self.lf.1;
            s.mu = s.r(p) - s.a - s.b + 1;
        } else {
            return None;
        }
        Some(s)
    }

    fn push_back(&self, p: V) -> Option<Self> {
        let r = self.r(p);
        let mut s = *self;
        if self.mu <= r && r <= self.top() {
            if r == self.mu {
                s.uf = p;
            }
            if r == self.top() {
                s.lf = p;
            }
        } else if r == self.mu - 1 {
            s.uf = p;
            s.ll = self.lf;
            s.b = self.ul.0 - p.0;
            s.a = self.ul.1 - p.1;
            s.mu = s.r(p);
        } else if r == self.top() + 1 {
            s.lf = p;
            s.ul = self.uf;
            s.b = self.ll.0 - p.0;
            s.a = self.ll.1 - p.1;
            s.mu = s.r(p) - s.a - s.b + 1;
        } else {
            return None;
        }
        Some(s)
    }
}

/// Incremental recognition of a digital straight segment along a 4-path,
/// growing at either end in amortized constant time.
///
/// Works in the quarter-turn frame spanned by the two Freeman codes the path
/// uses; a third code (or a reversal) ends recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DssRecognizer {
    first: LatticePoint,
    last: LatticePoint,
    len: usize,
    // frame base code and whether a second code has pinned it
    base: Option<u8>,
    locked: bool,
    local: Local,
}

impl DssRecognizer {
    pub fn new(p: LatticePoint) -> Self {
        let v = (p.i, p.j);
        Self { first: p, last: p, len: 1, base: None, locked: false, local: Local::run(v, v, true) }
    }

    pub fn first(&self) -> LatticePoint {
        self.first
    }

    pub fn last(&self) -> LatticePoint {
        self.last
    }

    /// Number of points covered.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Adds `p` after the last point. `Ok(false)` leaves the state unchanged.
    pub fn extend_front(&mut self, p: LatticePoint) -> Result<bool> {
        let code = crate::lattice::code_between_points(self.last, p)
            .ok_or_else(|| Error::ContractViolation(format!("({}, {}) is not 4-adjacent to the front", p.i, p.j)))?;
        let Some((base, locked, local)) = self.frame_for(code, true) else {
            return Ok(false);
        };
        let pl = to_local(base, (p.i, p.j));
        match local.push_front(pl) {
            Some(s) => {
                self.commit(base, locked, s);
                self.last = p;
                self.len += 1;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Adds `p` before the first point. `Ok(false)` leaves the state unchanged.
    pub fn extend_back(&mut self, p: LatticePoint) -> Result<bool> {
        let code = crate::lattice::code_between_points(p, self.first)
            .ok_or_else(|| Error::ContractViolation(format!("({}, {}) is not 4-adjacent to the back", p.i, p.j)))?;
        let Some((base, locked, local)) = self.frame_for(code, false) else {
            return Ok(false);
        };
        let pl = to_local(base, (p.i, p.j));
        match local.push_back(pl) {
            Some(s) => {
                self.commit(base, locked, s);
                self.first = p;
                self.len += 1;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn commit(&mut self, base: u8, locked: bool, local: Local) {
        self.base = Some(base);
        self.locked = locked;
        self.local = local;
    }

    // Frame in which a new move of `code` is read, with the current points
    // re-expressed there when the frame changes.
    fn frame_for(&self, code: u8, _front: bool) -> Option<(u8, bool, Local)> {
        let (f, l) = ((self.first.i, self.first.j), (self.last.i, self.last.j));
        match self.base {
            None => Some((code, false, Local::run(to_local(code, f), to_local(code, l), true))),
            Some(base) if self.locked => (code == base || code == (base + 1) % 4).then_some((base, true, self.local)),
            Some(base) => {
                // straight run of `base` so far
                if code == base {
                    Some((base, false, self.local))
                } else if code == (base + 1) % 4 {
                    Some((base, true, self.local))
                } else if code == (base + 3) % 4 {
                    Some((code, true, Local::run(to_local(code, f), to_local(code, l), false)))
                } else {
                    None
                }
            }
        }
    }

    pub fn characteristics(&self) -> DssCharacteristics {
        let base = self.base.unwrap_or(0);
        let s = &self.local;
        let (b, a) = to_world(base, (s.b, s.a));
        let pt = |v: V| {
            let (x, y) = to_world(base, v);
            LatticePoint::new(x, y)
        };
        DssCharacteristics {
            a,
            b,
            mu: s.mu,
            upper_first: pt(s.uf),
            upper_last: pt(s.ul),
            lower_first: pt(s.lf),
            lower_last: pt(s.ll),
        }
    }

    /// Recognizes a whole path from its first point, stopping at the first rejection.
    pub fn from_path(points: &[LatticePoint]) -> Result<Option<Self>> {
        let Some(&first) = points.first() else {
            return Err(Error::ContractViolation("empty path".into()));
        };
        let mut rec = Self::new(first);
        for &p in &points[1..] {
            if !rec.extend_front(p)? {
                return Ok(None);
            }
        }
        Ok(Some(rec))
    }
}
