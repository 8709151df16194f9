//! Grundy values under both conventions, genus symbols, and tameness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::SumPosition;
use crate::position::{Engine, PositionId, Side};

pub const DEFAULT_MAX_DIGITS: usize = 40;

pub fn mex(values: impl IntoIterator<Item = u32>) -> u32 {
    let mut v: Vec<u32> = values.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v.iter().enumerate().find(|(i, &x)| *i as u32 != x).map_or(v.len() as u32, |(i, _)| i as u32)
}

/// `g^{d0 d1 ...}` where the final two digits repeat forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genus {
    pub g_plus: u32,
    pub digits: Vec<u32>,
}

impl Genus {
    /// The `n`-th misère digit, unfolding the periodic tail.
    pub fn digit(&self, n: usize) -> u32 {
        let len = self.digits.len();
        if n < len {
            return self.digits[n];
        }
        if len < 2 {
            return self.digits[len - 1];
        }
        let back = (n - (len - 2)) % 2;
        self.digits[len - 2 + back]
    }

    pub fn expand(&self, count: usize) -> Vec<u32> {
        (0..count).map(|n| self.digit(n)).collect()
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = self.digits.iter().any(|&d| d > 9) || self.g_plus > 9;
        let sep = if multi { "," } else { "" };
        let d: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{}^{{{}}}", self.g_plus, d.join(sep))
    }
}

/// `n ⊕ 2` on nonnegative integers.
pub fn nim_plus_two(n: u32) -> u32 {
    n ^ 2
}

pub fn nim_heap_genus(n: u32) -> Genus {
    let digits = match n {
        0 => vec![1, 2, 0],
        1 => vec![0, 3, 1],
        _ => vec![n, nim_plus_two(n)],
    };
    Genus { g_plus: n, digits }
}

/// Truncates a digit sequence at the first point where a length-two window
/// repeats twice in a row. Returns `None` if no such point exists.
pub fn truncate_tail(digits: &[u32]) -> Option<Vec<u32>> {
    (0..digits.len().saturating_sub(5)).find_map(|k| {
        let w = &digits[k..k + 2];
        (w == &digits[k + 2..k + 4] && w == &digits[k + 4..k + 6]).then(|| digits[..k + 2].to_vec())
    })
}

impl Engine {
    fn require_impartial(&self, p: PositionId) -> Result<()> {
        if self.is_impartial(p) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} is not impartial", self.format_position(p))))
        }
    }

    fn g_plus_unchecked(&self, p: PositionId) -> u32 {
        if let Some(g) = self.g_plus_memo.get(&p).map(|g| *g) {
            return g;
        }
        let g = mex(self.left(p).into_iter().map(|o| self.g_plus_unchecked(o)));
        self.g_plus_memo.insert(p, g);
        g
    }

    /// Normal-play Grundy value.
    pub fn g_plus(&self, p: PositionId) -> Result<u32> {
        self.require_impartial(p)?;
        Ok(self.g_plus_unchecked(p))
    }

    fn g_minus_sum(&self, s: &SumPosition) -> u32 {
        if s.is_zero() {
            return 1;
        }
        if let Some(g) = self.g_minus_memo.get(s).map(|g| *g) {
            return g;
        }
        let values: Vec<u32> = self.sum_options(s, Side::Left).map(|o| self.g_minus_sum(&o)).collect();
        let g = mex(values);
        self.g_minus_memo.insert(s.clone(), g);
        g
    }

    /// Misère Grundy value of a sum of impartial positions.
    pub fn g_minus(&self, s: &SumPosition) -> Result<u32> {
        for &c in s.components() {
            self.require_impartial(c)?;
        }
        Ok(self.g_minus_sum(s))
    }

    pub fn genus(&self, p: PositionId, max_digits: usize) -> Result<Genus> {
        self.require_impartial(p)?;
        let two = self.star_n(2);
        let mut digits = Vec::new();
        let mut s = SumPosition::single(p);
        for _ in 0..max_digits {
            digits.push(self.g_minus_sum(&s));
            if let Some(t) = truncate_tail(&digits) {
                return Ok(Genus { g_plus: self.g_plus_unchecked(p), digits: t });
            }
            s = s.plus(two);
        }
        Err(Error::Diagnostics(format!("no periodic tail within {max_digits} digits")))
    }

    pub fn is_tame(&self, p: PositionId) -> Result<bool> {
        self.require_impartial(p)?;
        Ok(self.is_tame_inner(p))
    }

    fn is_tame_inner(&self, p: PositionId) -> bool {
        let Ok(g) = self.genus(p, DEFAULT_MAX_DIGITS) else { return false };
        let special = [Genus { g_plus: 0, digits: vec![0, 2] }, Genus { g_plus: 1, digits: vec![1, 3] }];
        let tame_genus = g == nim_heap_genus(g.g_plus) || special.contains(&g);
        tame_genus && self.left(p).into_iter().all(|o| self.is_tame_inner(o))
    }
}
