//! Continued fractions of first-octant slopes, their convergents, and the
//! Berstel pattern words built from them.
//!
//! A slope `p/q` with `0 < p <= q` is written `[0; u_1, ..., u_n]` with
//! `u_n >= 2`, except `1 = [0; 1]`. The horizontal slope `0/1` is admitted
//! as the depth-0 fraction `[0]` whose pattern is `"0"`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    // u_0 = 0 followed by u_1..u_n
    quotients: Vec<u64>,
}

impl ContinuedFraction {
    /// Expansion of `p/q`; requires `0 <= p <= q`, `gcd(p, q) = 1`.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p > q || p.gcd(&q) != 1 {
            return Err(Error::Domain(format!("{p}/{q} is not an irreducible slope in [0, 1]")));
        }
        let mut quotients = vec![0];
        // q/p = u_1 + ..., Euclid on (q, p)
        let (mut num, mut den) = (q, p);
        while den != 0 {
            quotients.push(num / den);
            let r = num % den;
            num = den;
            den = r;
        }
        Ok(Self { quotients })
    }

    /// Validates a list `[0, u_1, ..., u_n]` under the uniqueness convention.
    pub fn from_quotients(quotients: Vec<u64>) -> Result<Self> {
        let bad = |why: &str| Err(Error::Domain(format!("invalid partial quotients {quotients:?}: {why}")));
        match quotients.as_slice() {
            [] => return bad("empty"),
            [u0, ..] if *u0 != 0 => return bad("u_0 must be 0"),
            [0] | [0, 1] => {}
            [0, rest @ ..] => {
                if rest.contains(&0) {
                    return bad("partial quotients must be positive");
                }
                if *rest.last().unwrap() < 2 {
                    return bad("last partial quotient must be at least 2");
                }
            }
            _ => unreachable!(),
        }
        Ok(Self { quotients })
    }

    /// `[u_0, u_1, ..., u_n]`.
    pub fn partial_quotients(&self) -> &[u64] {
        &self.quotients
    }

    pub fn depth(&self) -> usize {
        self.quotients.len() - 1
    }

    pub fn convergents(&self) -> Result<ConvergentTable> {
        ConvergentTable::from_quotients(&self.quotients)
    }

    /// `(p, q)` re-evaluated from the partial quotients.
    pub fn value(&self) -> Result<(u64, u64)> {
        let t = self.convergents()?;
        Ok(t.last())
    }

    /// The words `E(z_0), ..., E(z_n)` of every convergent, by the recursion.
    pub fn convergent_words(&self) -> Vec<Vec<u8>> {
        let u = &self.quotients;
        let n = self.depth();
        let mut words: Vec<Vec<u8>> = Vec::with_capacity(n + 1);
        words.push(vec![0]);
        if n >= 1 {
            let mut w = vec![0; u[1] as usize];
            w.push(1);
            words.push(w);
        }
        for k in 2..=n {
            let uk = u[k] as usize;
            let w = if k % 2 == 1 {
                // E(z_{2i+1}) = E(z_{2i})^{u_{2i+1}} E(z_{2i-1})
                let mut w = words[k - 1].repeat(uk);
                w.extend_from_slice(&words[k - 2]);
                w
            } else {
                // E(z_{2i}) = E(z_{2i-2}) E(z_{2i-1})^{u_{2i}}
                let mut w = words[k - 2].clone();
                w.extend(words[k - 1].repeat(uk));
                w
            };
            words.push(w);
        }
        words
    }

    /// The pattern word `E(z_n)`.
    pub fn pattern(&self) -> Result<PatternWord> {
        let (p, q) = self.value()?;
        let word = self.convergent_words().pop().unwrap();
        Ok(PatternWord { word, p, q })
    }

    pub fn reversed_pattern(&self) -> Result<PatternWord> {
        let mut w = self.pattern()?;
        w.word.reverse();
        Ok(w)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0")?;
        for (i, u) in self.quotients[1..].iter().enumerate() {
            write!(f, "{}{u}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, "]")
    }
}

/// Rows `(k, p_k, q_k)` for `k = -1, 0, ..., n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    rows: Vec<(i64, u64, u64)>,
}

impl ConvergentTable {
    fn from_quotients(u: &[u64]) -> Result<Self> {
        let mut rows = vec![(-1, 1, 0), (0, 0, 1)];
        for (k, &uk) in u.iter().enumerate().skip(1) {
            let (_, p1, q1) = rows[rows.len() - 1];
            let (_, p2, q2) = rows[rows.len() - 2];
            let p = uk.checked_mul(p1).and_then(|v| v.checked_add(p2)).ok_or(Error::Overflow("convergents"))?;
            let q = uk.checked_mul(q1).and_then(|v| v.checked_add(q2)).ok_or(Error::Overflow("convergents"))?;
            rows.push((k as i64, p, q));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(i64, u64, u64)] {
        &self.rows
    }

    /// `(p_k, q_k)` for `-1 <= k <= n`.
    pub fn get(&self, k: i64) -> Option<(u64, u64)> {
        let idx = usize::try_from(k + 1).ok()?;
        self.rows.get(idx).map(|&(_, p, q)| (p, q))
    }

    pub fn depth(&self) -> usize {
        self.rows.len() - 2
    }

    pub fn last(&self) -> (u64, u64) {
        let &(_, p, q) = self.rows.last().unwrap();
        (p, q)
    }

    /// `q_{n-1}`, taken as 1 when the depth is at most 1.
    pub fn previous_denominator(&self) -> u64 {
        let n = self.depth() as i64;
        if n <= 1 {
            1
        } else {
            self.get(n - 1).unwrap().1
        }
    }

    /// `p_k q_{k-1} - p_{k-1} q_k`.
    pub fn determinant(&self, k: i64) -> Option<i128> {
        let (pk, qk) = self.get(k)?;
        let (pk1, qk1) = self.get(k - 1)?;
        Some(pk as i128 * qk1 as i128 - pk1 as i128 * qk as i128)
    }
}

/// A first-octant Freeman word over {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternWord {
    word: Vec<u8>,
    p: u64,
    q: u64,
}

impl PatternWord {
    pub fn letters(&self) -> &[u8] {
        &self.word
    }

    pub fn slope(&self) -> (u64, u64) {
        (self.p, self.q)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.word.iter().filter(|&&c| c == 1).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }
}

impl fmt::Display for PatternWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.word {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Pattern of the slope `p/q` (irreducible, first octant).
pub fn pattern_of(p: u64, q: u64) -> Result<PatternWord> {
    ContinuedFraction::new(p, q)?.pattern()
}
