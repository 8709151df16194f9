//! `*+* ≡ 0` and `ξ+ξ̄ ≡ 0` checks, and the mirroring strategy for sums of
//! ab3 positions with their conjugates.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::SumPosition;
use crate::position::{Engine, PositionId, Side};
use crate::quotient::RelationCheck;

impl Engine {
    pub fn verify_star_square_zero(&self, generators: &[PositionId], context_bound: usize) -> Result<RelationCheck> {
        let base = self.option_closure(generators);
        let star = self.star();
        if !base.contains(star) {
            return Err(Error::Precondition("* is not in the option closure".into()));
        }
        Ok(self.verify_relation(&SumPosition::repeat(star, 2), &SumPosition::zero(), &base, context_bound))
    }

    pub fn verify_conjugate_pair_zero(&self, p: PositionId, context_bound: usize) -> RelationCheck {
        let c = self.conjugate(p);
        let base = self.option_closure(&[p, c]);
        self.verify_relation(&SumPosition::new(vec![p, c]), &SumPosition::zero(), &base, context_bound)
    }

    pub fn is_ab3(&self, p: PositionId) -> bool {
        self.profile(p).ab_rank.is_some_and(|r| r <= 3)
    }
}

/// The component the strategist is currently working in, outside the mirrored pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "phase")]
pub enum Active {
    /// the adversary's only move here is to 0
    Single { x: PositionId },
    /// after `ξ → ξᴸ` with `ξᴸᴿᴸ = 0`
    Pair2 { x: PositionId, twin: PositionId },
    /// the `ξᴸ` half of a `Pair2` is gone; `twin` is still untouched
    Waiting2 { twin: PositionId },
    /// after `ξ → ξᴸ` with `ξᴸᴿ = ξᴿᴸ = 0`
    Pair3 { x: PositionId, twin: PositionId },
}

impl Active {
    fn components(&self) -> Vec<PositionId> {
        match *self {
            Active::Single { x } => vec![x],
            Active::Pair2 { x, twin } | Active::Pair3 { x, twin } => vec![x, twin],
            Active::Waiting2 { twin } => vec![twin],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrategyState {
    /// mirrored pairs `(ξ, ξ̄)` in the strategist-as-Left frame
    pub pairs: Vec<(PositionId, PositionId)>,
    pub active: Option<Active>,
    /// the real strategist is Right; every position here is conjugated
    pub flipped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "in")]
pub enum Location {
    Pair { index: usize, second: bool },
    Active { slot: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdversaryMove {
    pub location: Location,
    pub to: PositionId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub from: PositionId,
    pub to: PositionId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Step {
    Move { from: PositionId, to: PositionId },
    /// the strategist has no move, which wins under misère play
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Playout {
    pub win: bool,
    pub trace: Vec<String>,
}

impl StrategyState {
    pub fn components(&self) -> Vec<PositionId> {
        let mut v: Vec<PositionId> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        if let Some(a) = &self.active {
            v.extend(a.components());
        }
        v
    }

    fn normalize(&mut self) {
        self.pairs.retain(|&(a, b)| a != PositionId::ZERO || b != PositionId::ZERO);
        self.pairs.sort_unstable();
    }
}

fn single_option(e: &Engine, p: PositionId, side: Side) -> Option<PositionId> {
    match e.node(p).options(side) {
        [o] => Some(*o),
        _ => None,
    }
}

impl Engine {
    /// Starting state for the strategist `mover` on `Σ (ξᵢ + ξ̄ᵢ)`.
    pub fn tweedle_start(&self, components: &[PositionId], mover: Side) -> Result<StrategyState> {
        for &c in components {
            if !self.is_ab3(c) {
                return Err(Error::Precondition(format!("{} is not ab3", self.format_position(c))));
            }
        }
        let flipped = mover == Side::Right;
        let mut state = StrategyState {
            pairs: components
                .iter()
                .map(|&c| {
                    let c = if flipped { self.conjugate(c) } else { c };
                    (c, self.conjugate(c))
                })
                .collect(),
            active: None,
            flipped,
        };
        state.normalize();
        Ok(state)
    }

    /// The real sum currently in play.
    pub fn strategy_sum(&self, state: &StrategyState) -> SumPosition {
        self.real(state, state.components())
    }

    fn real(&self, state: &StrategyState, v: Vec<PositionId>) -> SumPosition {
        v.into_iter().map(|p| if state.flipped { self.conjugate(p) } else { p }).collect()
    }

    fn real_pos(&self, state: &StrategyState, p: PositionId) -> PositionId {
        if state.flipped {
            self.conjugate(p)
        } else {
            p
        }
    }

    fn step(&self, state: &StrategyState, from: PositionId, to: PositionId) -> Step {
        Step::Move { from: self.real_pos(state, from), to: self.real_pos(state, to) }
    }

    /// Strategist to move with no active component: pick a case and move.
    pub fn tweedle_restart(&self, state: &mut StrategyState) -> Result<Step> {
        debug_assert!(state.active.is_none());
        if state.pairs.is_empty() {
            return Ok(Step::Terminal);
        }
        let zero = PositionId::ZERO;
        let cands: Vec<(usize, bool)> =
            (0..state.pairs.len()).flat_map(|i| [(i, false), (i, true)]).collect();
        let pick = |i: usize, second: bool| {
            let (a, b) = state.pairs[i];
            if second {
                (b, a)
            } else {
                (a, b)
            }
        };
        let left = |p| single_option(self, p, Side::Left);
        let right = |p| single_option(self, p, Side::Right);

        let case1 = cands.iter().find(|&&(i, s)| left(pick(i, s).0) == Some(zero));
        let case2 = || {
            cands.iter().find(|&&(i, s)| {
                let c = pick(i, s).0;
                left(c).and_then(right).and_then(left) == Some(zero)
            })
        };
        let case3 = || {
            cands.iter().find(|&&(i, s)| {
                let c = pick(i, s).0;
                left(c).and_then(right) == Some(zero) && right(c).and_then(left) == Some(zero)
            })
        };
        let (which, &(i, s)) = if let Some(c) = case1 {
            (1, c)
        } else if let Some(c) = case2() {
            (2, c)
        } else if let Some(c) = case3() {
            (3, c)
        } else {
            return Err(Error::Precondition("no case of the construction applies; are the components ab3?".into()));
        };
        let (c, twin) = pick(i, s);
        state.pairs.remove(i);
        let cl = left(c).expect("case components have a Left option");
        state.active = Some(match which {
            1 => Active::Single { x: twin },
            2 => Active::Pair2 { x: cl, twin },
            _ => Active::Pair3 { x: cl, twin },
        });
        Ok(self.step(state, c, cl))
    }

    pub fn tweedle_first_move(&self, state: &mut StrategyState) -> Result<Step> {
        self.tweedle_restart(state)
    }

    /// All adversary moves, in the strategist-as-Left frame.
    pub fn adversary_moves(&self, state: &StrategyState) -> Vec<AdversaryMove> {
        let mut out = Vec::new();
        for (index, &(a, b)) in state.pairs.iter().enumerate() {
            for (second, c) in [(false, a), (true, b)] {
                for &to in self.node(c).options(Side::Right) {
                    out.push(AdversaryMove { location: Location::Pair { index, second }, to });
                }
            }
        }
        if let Some(active) = &state.active {
            for (slot, c) in active.components().into_iter().enumerate() {
                for &to in self.node(c).options(Side::Right) {
                    out.push(AdversaryMove { location: Location::Active { slot }, to });
                }
            }
        }
        out
    }

    /// Applies an adversary move given in the real frame and returns the strategist's reply.
    pub fn tweedle_move(&self, state: &mut StrategyState, opponent: AdversaryMove) -> Result<Step> {
        let to = self.real_pos(state, opponent.to);
        self.respond(state, AdversaryMove { location: opponent.location, to })
    }

    fn respond(&self, state: &mut StrategyState, mv: AdversaryMove) -> Result<Step> {
        let zero = PositionId::ZERO;
        let bad = || Error::InvalidArgument("illegal adversary move".into());
        let legal = |from: PositionId| self.node(from).options(Side::Right).contains(&mv.to);
        match mv.location {
            Location::Pair { index, second } => {
                let &(a, b) = state.pairs.get(index).ok_or_else(bad)?;
                let (from, mirror) = if second { (b, a) } else { (a, b) };
                if !legal(from) {
                    return Err(bad());
                }
                let reply = self.conjugate(mv.to);
                state.pairs[index] = (mv.to, reply);
                state.normalize();
                Ok(self.step(state, mirror, reply))
            }
            Location::Active { slot } => {
                let active = state.active.ok_or_else(bad)?;
                let from = *active.components().get(slot).ok_or_else(bad)?;
                if !legal(from) {
                    return Err(bad());
                }
                let fail = |what: &str| Error::Precondition(format!("strategy invariant broken: {what}"));
                match (active, slot) {
                    (Active::Single { .. }, _) => {
                        if mv.to != zero {
                            return Err(fail("single component moved to a nonzero position"));
                        }
                        state.active = None;
                        self.tweedle_restart(state)
                    }
                    (Active::Pair2 { twin, .. }, 0) => {
                        if single_option(self, mv.to, Side::Left) != Some(zero) {
                            return Err(fail("case 2 reply is not to 0"));
                        }
                        state.active = Some(Active::Waiting2 { twin });
                        Ok(self.step(state, mv.to, zero))
                    }
                    (Active::Pair2 { x, .. } | Active::Pair3 { x, .. }, _) => {
                        if slot == 1 {
                            state.pairs.push((x, mv.to));
                            state.normalize();
                            state.active = None;
                            return self.tweedle_restart(state);
                        }
                        let Active::Pair3 { twin, .. } = active else { unreachable!() };
                        let tl = single_option(self, twin, Side::Left).ok_or_else(|| fail("twin has no Left option"))?;
                        state.active = Some(Active::Single { x: tl });
                        Ok(self.step(state, twin, tl))
                    }
                    (Active::Waiting2 { .. }, _) => {
                        let rl =
                            single_option(self, mv.to, Side::Left).ok_or_else(|| fail("waiting twin has no reply"))?;
                        state.active = Some(Active::Single { x: rl });
                        Ok(self.step(state, mv.to, rl))
                    }
                }
            }
        }
    }

    /// Plays the strategy for `mover` on `Σ (ξᵢ + ξ̄ᵢ)` against every adversary line.
    pub fn tweedle_playout(&self, components: &[PositionId], mover: Side) -> Result<Playout> {
        let mut state = self.tweedle_start(components, mover)?;
        let mut memo = HashMap::new();
        let mut trace = vec![format!("start: {}", self.format_sum(&self.strategy_sum(&state)))];
        let first = self.tweedle_first_move(&mut state)?;
        let side = |adversary: bool| match (mover, adversary) {
            (Side::Left, false) | (Side::Right, true) => "L",
            _ => "R",
        };
        let win = match first {
            Step::Terminal => true,
            Step::Move { from, to } => {
                trace.push(format!("{}: {} -> {}", side(false), self.format_position(from), self.format_position(to)));
                self.adversary_loses(&state, &mut memo)
            }
        };
        // one principal line: the adversary always takes its first listed move
        let mut line = state.clone();
        while let Some(mv) = self.adversary_moves(&line).first().copied() {
            let from = self.real_pos(&line, self.located(&line, mv.location));
            trace.push(format!(
                "{}: {} -> {}",
                side(true),
                self.format_position(from),
                self.format_position(self.real_pos(&line, mv.to))
            ));
            match self.respond(&mut line, mv) {
                Ok(Step::Move { from, to }) => {
                    trace.push(format!("{}: {} -> {}", side(false), self.format_position(from), self.format_position(to)))
                }
                Ok(Step::Terminal) => {
                    trace.push(format!("{}: no move", side(false)));
                    break;
                }
                Err(e) => {
                    trace.push(format!("error: {e}"));
                    break;
                }
            }
        }
        Ok(Playout { win, trace })
    }

    fn located(&self, state: &StrategyState, loc: Location) -> PositionId {
        match loc {
            Location::Pair { index, second } => {
                let (a, b) = state.pairs[index];
                if second {
                    b
                } else {
                    a
                }
            }
            Location::Active { slot } => state.active.expect("active slot").components()[slot],
        }
    }

    /// Adversary to move: does the strategist win against every line?
    fn adversary_loses(&self, state: &StrategyState, memo: &mut HashMap<StrategyState, bool>) -> bool {
        if let Some(&r) = memo.get(state) {
            return r;
        }
        let moves = self.adversary_moves(state);
        let result = !moves.is_empty()
            && moves.iter().all(|&mv| {
                let mut next = state.clone();
                match self.respond(&mut next, mv) {
                    Ok(Step::Terminal) => true,
                    Ok(Step::Move { .. }) => self.adversary_loses(&next, memo),
                    Err(_) => false,
                }
            });
        memo.insert(state.clone(), result);
        result
    }
}
