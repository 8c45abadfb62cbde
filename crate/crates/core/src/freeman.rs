//! Freeman 4-codes and the dihedral octant frames.
//!
//! Codes: 0 = +x, 1 = +y, 2 = -x, 3 = -y. Octant `k` covers the direction
//! angles `(k*pi/4, (k+1)*pi/4]`, except octant 0 which is `[0, pi/4]`;
//! directions lying on an octant boundary go to the lower index.

/// Unit displacement of each Freeman code.
pub const STEPS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Freeman code of a unit 4-step, if `(dx, dy)` is one.
pub fn code_of(dx: i64, dy: i64) -> Option<u8> {
    STEPS.iter().position(|&s| s == (dx, dy)).map(|c| c as u8)
}

pub fn step(code: u8) -> (i64, i64) {
    STEPS[(code & 3) as usize]
}

// Row-major 2x2 signed permutation matrices mapping each octant onto octant 0.
const TO_FIRST: [[i64; 4]; 8] = [
    [1, 0, 0, 1],   // (x, y)
    [0, 1, 1, 0],   // (y, x)
    [0, 1, -1, 0],  // (y, -x)
    [-1, 0, 0, 1],  // (-x, y)
    [-1, 0, 0, -1], // (-x, -y)
    [0, -1, -1, 0], // (-y, -x)
    [0, -1, 1, 0],  // (-y, x)
    [1, 0, 0, -1],  // (x, -y)
];

/// One of the eight symmetry sectors of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Octant(u8);

impl Octant {
    pub const FIRST: Octant = Octant(0);

    pub fn new(index: u8) -> Option<Self> {
        (index < 8).then_some(Octant(index))
    }

    /// Octant of a nonzero direction, ties resolved to the lower index.
    pub fn of(dx: i64, dy: i64) -> Option<Self> {
        if dx == 0 && dy == 0 {
            return None;
        }
        (0..8u8).map(Octant).find(|o| {
            let (x, y) = o.to_first(dx, dy);
            x > 0 && 0 <= y && y <= x
        })
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn to_first(self, x: i64, y: i64) -> (i64, i64) {
        let m = TO_FIRST[self.0 as usize];
        (m[0] * x + m[1] * y, m[2] * x + m[3] * y)
    }

    pub fn from_first(self, x: i64, y: i64) -> (i64, i64) {
        // signed permutation: inverse is the transpose
        let m = TO_FIRST[self.0 as usize];
        (m[0] * x + m[2] * y, m[1] * x + m[3] * y)
    }

    pub fn to_first_f64(self, x: f64, y: f64) -> (f64, f64) {
        let m = TO_FIRST[self.0 as usize].map(|v| v as f64);
        (m[0] * x + m[1] * y, m[2] * x + m[3] * y)
    }

    pub fn from_first_f64(self, x: f64, y: f64) -> (f64, f64) {
        let m = TO_FIRST[self.0 as usize].map(|v| v as f64);
        (m[0] * x + m[2] * y, m[1] * x + m[3] * y)
    }

    /// +1 for rotations, -1 for reflections.
    pub fn orientation(self) -> i64 {
        let m = TO_FIRST[self.0 as usize];
        m[0] * m[3] - m[1] * m[2]
    }

    /// Image of a Freeman code under the octant-to-first map.
    pub fn map_code(self, code: u8) -> u8 {
        let (dx, dy) = step(code);
        let (x, y) = self.to_first(dx, dy);
        code_of(x, y).expect("signed permutation maps unit steps to unit steps")
    }

    /// Direction angle in `(-pi, pi]` of the first-octant slope `p/q` mapped back.
    pub fn slope_angle(self, p: u64, q: u64) -> f64 {
        let (x, y) = self.from_first(q as i64, p as i64);
        crate::shapes::normalize_angle((y as f64).atan2(x as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_directions_take_lower_octant() {
        let cases = [
            ((1, 0), 0),
            ((1, 1), 0),
            ((0, 1), 1),
            ((-1, 1), 2),
            ((-1, 0), 3),
            ((-1, -1), 4),
            ((0, -1), 5),
            ((1, -1), 6),
            ((2, -1), 7),
        ];
        for ((dx, dy), k) in cases {
            assert_eq!(Octant::of(dx, dy).unwrap().index(), k, "({dx},{dy})");
        }
        assert!(Octant::of(0, 0).is_none());
    }

    #[test]
    fn transforms_round_trip() {
        for k in 0..8 {
            let o = Octant::new(k).unwrap();
            for (x, y) in [(3, 1), (-2, 5), (0, -7)] {
                let (a, b) = o.to_first(x, y);
                assert_eq!(o.from_first(a, b), (x, y));
            }
            assert_eq!(o.orientation().abs(), 1);
        }
    }

    #[test]
    fn interior_directions_land_in_first_octant() {
        for dx in -6i64..=6 {
            for dy in -6i64..=6 {
                if let Some(o) = Octant::of(dx, dy) {
                    let (x, y) = o.to_first(dx, dy);
                    assert!(x > 0 && 0 <= y && y <= x);
                }
            }
        }
    }
}
