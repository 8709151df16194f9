//! Positions whose monoid is that of `*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::{Outcome, SumPosition};
use crate::position::{Engine, PositionId, Side};
use crate::quotient::multisets;

pub const DEFAULT_MAX_DAY: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StarImage {
    One,
    A,
}

impl StarImage {
    pub fn mul(self, other: StarImage) -> StarImage {
        if self == other {
            StarImage::One
        } else {
            StarImage::A
        }
    }

    pub fn outcome(self) -> Outcome {
        match self {
            StarImage::One => Outcome::N,
            StarImage::A => Outcome::P,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum IsoCheck {
    Passes,
    Fails { condition: u8, element: SumPosition, option: Option<SumPosition>, outcome: Outcome },
}

impl IsoCheck {
    pub fn passes(&self) -> bool {
        matches!(self, IsoCheck::Passes)
    }
}

impl Engine {
    pub fn is_star_built(&self, p: PositionId) -> bool {
        if let Some(b) = self.star_built_memo.get(&p).map(|b| *b) {
            return b;
        }
        let b = self.star_built_uncached(p);
        self.star_built_memo.insert(p, b);
        b
    }

    fn star_built_uncached(&self, p: PositionId) -> bool {
        if p == self.star() {
            return true;
        }
        let node = self.node(p);
        let options = || node.left.iter().chain(node.right.iter()).copied();
        match self.misere(p) {
            Outcome::P => {
                !node.left.is_empty()
                    && !node.right.is_empty()
                    && options().all(|o| {
                        (o == PositionId::ZERO || self.is_star_built(o)) && self.misere(o) == Outcome::N
                    })
            }
            Outcome::N => {
                p != PositionId::ZERO
                    && options().all(|o| self.is_star_built(o) && self.misere(o) == Outcome::P)
            }
            Outcome::L | Outcome::R => false,
        }
    }

    pub fn star_image(&self, p: PositionId) -> Result<StarImage> {
        if p != PositionId::ZERO && !self.is_star_built(p) {
            return Err(Error::Precondition(format!("{} is not *-built", self.format_position(p))));
        }
        Ok(match self.misere(p) {
            Outcome::N => StarImage::One,
            _ => StarImage::A,
        })
    }

    pub fn sum_outcome_via_star(&self, components: &[PositionId]) -> Result<Outcome> {
        let mut acc = StarImage::One;
        for &c in components {
            acc = acc.mul(self.star_image(c)?);
        }
        Ok(acc.outcome())
    }

    /// Star-built positions of birthday at most `day`, ordered by birthday then id.
    pub fn enumerate_star_built(&self, day: u32, cap: u32) -> Result<Vec<PositionId>> {
        if day > cap {
            return Err(Error::Resource(format!("day {day} exceeds the enumeration cap {cap}")));
        }
        let mut built: Vec<PositionId> = Vec::new();
        for d in 1..=day {
            let mut pool = vec![PositionId::ZERO];
            pool.extend(built.iter().copied());
            if pool.len() > 16 {
                return Err(Error::Resource(format!("{} candidate options on day {d}", pool.len())));
            }
            let subsets = 1usize << pool.len();
            let pick = |mask: usize| -> Vec<PositionId> {
                (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect()
            };
            let mut fresh = Vec::new();
            for lm in 0..subsets {
                let left = pick(lm);
                for rm in 0..subsets {
                    let p = self.build(&left, &pick(rm))?;
                    if self.birthday(p) == d && self.is_star_built(p) {
                        fresh.push(p);
                    }
                }
            }
            fresh.sort_unstable();
            fresh.dedup();
            built.extend(fresh);
        }
        Ok(built)
    }

    pub fn star_built_on_day(&self, day: u32) -> Result<Vec<PositionId>> {
        Ok(self.enumerate_star_built(day, DEFAULT_MAX_DAY)?.into_iter().filter(|&p| self.birthday(p) == day).collect())
    }

    /// Checks the three conditions for `cl(generators)` to have the monoid of `*`,
    /// on every sum of at most `sum_bound` base elements.
    pub fn star_iso_check(&self, generators: &[PositionId], sum_bound: usize) -> IsoCheck {
        if generators.iter().all(|&g| g == PositionId::ZERO) {
            return IsoCheck::Fails { condition: 1, element: SumPosition::zero(), option: None, outcome: Outcome::N };
        }
        let closure = self.option_closure(generators);
        for w in multisets(closure.nonzero().len(), sum_bound) {
            let s = closure.sum_of(&w);
            let o = self.misere_outcome(&s);
            if !matches!(o, Outcome::N | Outcome::P) {
                return IsoCheck::Fails { condition: 2, element: s, option: None, outcome: o };
            }
            if o == Outcome::N {
                for side in [Side::Left, Side::Right] {
                    for next in self.sum_options(&s, side) {
                        let on = self.misere_outcome(&next);
                        if on == Outcome::N {
                            return IsoCheck::Fails { condition: 3, element: s.clone(), option: Some(next), outcome: on };
                        }
                    }
                }
            }
        }
        IsoCheck::Passes
    }
}
