//! Outcome classes and the memoized outcome search over disjunctive sums.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::position::{Engine, PositionId, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    L,
    R,
    N,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::L, Outcome::R, Outcome::N, Outcome::P];

    pub fn from_wins(left_first_wins: bool, right_first_wins: bool) -> Outcome {
        match (left_first_wins, right_first_wins) {
            (true, true) => Outcome::N,
            (false, false) => Outcome::P,
            (true, false) => Outcome::L,
            (false, true) => Outcome::R,
        }
    }

    pub fn left_first_wins(self) -> bool {
        matches!(self, Outcome::L | Outcome::N)
    }

    pub fn right_first_wins(self) -> bool {
        matches!(self, Outcome::R | Outcome::N)
    }

    /// Does `side` win this position when the other player moves first?
    pub fn second_player_wins(self, side: Side) -> bool {
        match side {
            Side::Left => matches!(self, Outcome::L | Outcome::P),
            Side::Right => matches!(self, Outcome::R | Outcome::P),
        }
    }

    pub fn first_player_wins(self, side: Side) -> bool {
        match side {
            Side::Left => self.left_first_wins(),
            Side::Right => self.right_first_wins(),
        }
    }

    /// Outcome of the conjugate position.
    pub fn swap(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }

    fn height(self) -> u8 {
        match self {
            Outcome::R => 0,
            Outcome::N | Outcome::P => 1,
            Outcome::L => 2,
        }
    }

    pub fn compare(self, other: Outcome) -> Comparison {
        if self == other {
            Comparison::Equal
        } else if self.height() == other.height() {
            Comparison::Incomparable
        } else if self.height() > other.height() {
            Comparison::Greater
        } else {
            Comparison::Less
        }
    }

    pub fn ge(self, other: Outcome) -> bool {
        matches!(self.compare(other), Comparison::Greater | Comparison::Equal)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::N => "N",
            Outcome::P => "P",
        }
    }
}

pub fn outcome_cmp(a: Outcome, b: Outcome) -> Comparison {
    a.compare(b)
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Outcome {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Outcome> {
        match s {
            "L" => Ok(Outcome::L),
            "R" => Ok(Outcome::R),
            "N" => Ok(Outcome::N),
            "P" => Ok(Outcome::P),
            _ => Err(crate::Error::InvalidArgument(format!("not an outcome: {s}"))),
        }
    }
}

/// A disjunctive sum as a sorted multiset of nonzero components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SumPosition(Vec<PositionId>);

impl SumPosition {
    pub fn zero() -> SumPosition {
        SumPosition(Vec::new())
    }

    pub fn single(p: PositionId) -> SumPosition {
        SumPosition::new(vec![p])
    }

    pub fn new(mut components: Vec<PositionId>) -> SumPosition {
        components.retain(|&p| p != PositionId::ZERO);
        components.sort_unstable();
        SumPosition(components)
    }

    pub fn repeat(p: PositionId, times: usize) -> SumPosition {
        SumPosition::new(vec![p; times])
    }

    pub fn components(&self) -> &[PositionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &SumPosition) -> SumPosition {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        SumPosition(v)
    }

    pub fn plus(&self, p: PositionId) -> SumPosition {
        if p == PositionId::ZERO {
            return self.clone();
        }
        let mut v = self.0.clone();
        let at = v.partition_point(|&q| q < p);
        v.insert(at, p);
        SumPosition(v)
    }

    /// Replaces the component at `index` by `with`.
    pub fn replace(&self, index: usize, with: PositionId) -> SumPosition {
        let mut v = self.0.clone();
        v.remove(index);
        if with != PositionId::ZERO {
            let at = v.partition_point(|&q| q < with);
            v.insert(at, with);
        }
        SumPosition(v)
    }

    /// Indices of the first copy of each distinct component.
    pub fn distinct_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len()).filter(move |&i| i == 0 || self.0[i] != self.0[i - 1])
    }
}

impl From<PositionId> for SumPosition {
    fn from(p: PositionId) -> SumPosition {
        SumPosition::single(p)
    }
}

impl FromIterator<PositionId> for SumPosition {
    fn from_iter<I: IntoIterator<Item = PositionId>>(iter: I) -> SumPosition {
        SumPosition::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Misere,
    Normal,
}

impl Engine {
    /// Lazily enumerates the options of a sum for one player.
    pub fn sum_options<'a>(&'a self, s: &'a SumPosition, side: Side) -> impl Iterator<Item = SumPosition> + 'a {
        s.distinct_indices().flat_map(move |i| {
            let node = self.node(s.components()[i]);
            let opts: Vec<PositionId> = node.options(side).to_vec();
            opts.into_iter().map(move |o| s.replace(i, o))
        })
    }

    pub fn has_move(&self, s: &SumPosition, side: Side) -> bool {
        s.components().iter().any(|&c| !self.node(c).options(side).is_empty())
    }

    pub fn outcome(&self, s: &SumPosition, convention: Convention) -> Outcome {
        let memo = match convention {
            Convention::Misere => &self.misere_memo,
            Convention::Normal => &self.normal_memo,
        };
        if let Some(o) = memo.get(s).map(|o| *o) {
            return o;
        }
        let lw = self.mover_wins(s, Side::Left, convention);
        let rw = self.mover_wins(s, Side::Right, convention);
        let o = Outcome::from_wins(lw, rw);
        memo.insert(s.clone(), o);
        o
    }

    fn mover_wins(&self, s: &SumPosition, side: Side, convention: Convention) -> bool {
        let mut any = false;
        for next in self.sum_options(s, side) {
            any = true;
            if self.outcome(&next, convention).second_player_wins(side) {
                return true;
            }
        }
        !any && convention == Convention::Misere
    }

    pub fn misere_outcome(&self, s: &SumPosition) -> Outcome {
        self.outcome(s, Convention::Misere)
    }

    pub fn normal_outcome(&self, s: &SumPosition) -> Outcome {
        self.outcome(s, Convention::Normal)
    }

    pub fn misere(&self, p: PositionId) -> Outcome {
        self.misere_outcome(&SumPosition::single(p))
    }

    pub fn normal(&self, p: PositionId) -> Outcome {
        self.normal_outcome(&SumPosition::single(p))
    }

    pub fn memo_len(&self) -> usize {
        self.misere_memo.len() + self.normal_memo.len()
    }
}
