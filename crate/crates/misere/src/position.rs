//! Interned positions and the structural operations on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::{Outcome, SumPosition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionId(pub u32);

impl PositionId {
    pub const ZERO: PositionId = PositionId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct Node {
    pub left: Box<[PositionId]>,
    pub right: Box<[PositionId]>,
    pub birthday: u32,
}

impl Node {
    pub fn options(&self, side: Side) -> &[PositionId] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

type Key = (Box<[PositionId]>, Box<[PositionId]>);

#[derive(Default)]
struct StoreInner {
    nodes: Vec<Arc<Node>>,
    index: HashMap<Key, PositionId>,
}

/// Append-only hash-consed table of positions. Id 0 is always the empty game.
pub struct Store {
    inner: RwLock<StoreInner>,
}

impl Default for Store {
    fn default() -> Self {
        let store = Store { inner: RwLock::new(StoreInner::default()) };
        let zero = store.intern(Vec::new(), Vec::new()).expect("empty position");
        debug_assert_eq!(zero, PositionId::ZERO);
        store
    }
}

impl Store {
    pub fn len(&self) -> usize {
        self.inner.read().nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, id: PositionId) -> bool {
        id.index() < self.len()
    }

    pub fn node(&self, id: PositionId) -> Arc<Node> {
        self.inner.read().nodes[id.index()].clone()
    }

    pub fn try_node(&self, id: PositionId) -> Result<Arc<Node>> {
        self.inner.read().nodes.get(id.index()).cloned().ok_or(Error::UnknownId(id.0))
    }

    pub fn intern(&self, mut left: Vec<PositionId>, mut right: Vec<PositionId>) -> Result<PositionId> {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let key: Key = (left.into_boxed_slice(), right.into_boxed_slice());
        if let Some(&id) = self.inner.read().index.get(&key) {
            return Ok(id);
        }
        let mut inner = self.inner.write();
        if let Some(&id) = inner.index.get(&key) {
            return Ok(id);
        }
        let mut birthday = 0;
        for o in key.0.iter().chain(key.1.iter()) {
            let child = inner.nodes.get(o.index()).ok_or(Error::UnknownId(o.0))?;
            birthday = birthday.max(child.birthday + 1);
        }
        let id = PositionId(inner.nodes.len() as u32);
        inner.nodes.push(Arc::new(Node { left: key.0.clone(), right: key.1.clone(), birthday }));
        inner.index.insert(key, id);
        Ok(id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub birthday: u32,
    pub impartial: bool,
    pub all_small: bool,
    pub binary: bool,
    pub ab_rank: Option<u32>,
    pub left_end: bool,
    pub right_end: bool,
}

#[derive(Clone, Copy, Debug)]
struct RawProfile {
    impartial: bool,
    all_small: bool,
    binary: bool,
    // longest alternating path starting with a Left (resp. Right) move
    alt_left: u32,
    alt_right: u32,
    rank: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SumKind {
    Disjunctive,
    And,
    Or,
    Disand,
    Disor,
    Seqjoin,
    Ordinal,
}

impl SumKind {
    pub const ALTERNATIVES: [SumKind; 6] =
        [SumKind::And, SumKind::Or, SumKind::Disand, SumKind::Disor, SumKind::Seqjoin, SumKind::Ordinal];

    pub fn keyword(self) -> &'static str {
        match self {
            SumKind::Disjunctive => "sum",
            SumKind::And => "and",
            SumKind::Or => "or",
            SumKind::Disand => "disand",
            SumKind::Disor => "disor",
            SumKind::Seqjoin => "seq",
            SumKind::Ordinal => "ord",
        }
    }

    pub fn from_keyword(s: &str) -> Option<SumKind> {
        Some(match s {
            "sum" => SumKind::Disjunctive,
            "and" => SumKind::And,
            "or" => SumKind::Or,
            "disand" => SumKind::Disand,
            "disor" => SumKind::Disor,
            "seq" => SumKind::Seqjoin,
            "ord" => SumKind::Ordinal,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Name {
    Zero,
    Star,
    StarN,
    One,
    OneBar,
    Sigma,
    SigmaBar,
    Rho,
    RhoBar,
    Tau,
    TauN,
    Eta,
    Theta,
}

impl std::str::FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Name> {
        Ok(match s {
            "zero" | "0" => Name::Zero,
            "star" => Name::Star,
            "star_n" => Name::StarN,
            "one" => Name::One,
            "one_bar" => Name::OneBar,
            "sigma" => Name::Sigma,
            "sigma_bar" => Name::SigmaBar,
            "rho" => Name::Rho,
            "rho_bar" => Name::RhoBar,
            "tau" => Name::Tau,
            "tau_n" => Name::TauN,
            "eta" => Name::Eta,
            "theta" => Name::Theta,
            other => return Err(Error::InvalidArgument(format!("unknown position name `{other}`"))),
        })
    }
}

/// The shared analysis context: the position store plus every memo table.
#[derive(Default)]
pub struct Engine {
    pub(crate) store: Store,
    pub(crate) misere_memo: DashMap<SumPosition, Outcome>,
    pub(crate) normal_memo: DashMap<SumPosition, Outcome>,
    profiles: DashMap<PositionId, RawProfile>,
    conjugates: DashMap<PositionId, PositionId>,
    adjoints: DashMap<PositionId, PositionId>,
    alt_sums: DashMap<(SumKind, PositionId, PositionId), PositionId>,
    compiled_sums: DashMap<SumPosition, PositionId>,
    pub(crate) g_plus_memo: DashMap<PositionId, u32>,
    pub(crate) g_minus_memo: DashMap<SumPosition, u32>,
    pub(crate) star_built_memo: DashMap<PositionId, bool>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn node(&self, p: PositionId) -> Arc<Node> {
        self.store.node(p)
    }

    pub fn options(&self, p: PositionId, side: Side) -> Vec<PositionId> {
        self.store.node(p).options(side).to_vec()
    }

    pub fn left(&self, p: PositionId) -> Vec<PositionId> {
        self.options(p, Side::Left)
    }

    pub fn right(&self, p: PositionId) -> Vec<PositionId> {
        self.options(p, Side::Right)
    }

    pub fn build(&self, left: &[PositionId], right: &[PositionId]) -> Result<PositionId> {
        self.store.intern(left.to_vec(), right.to_vec())
    }

    fn mk(&self, left: &[PositionId], right: &[PositionId]) -> PositionId {
        self.build(left, right).expect("options come from the store")
    }

    pub fn birthday(&self, p: PositionId) -> u32 {
        self.store.node(p).birthday
    }

    pub fn zero(&self) -> PositionId {
        PositionId::ZERO
    }

    pub fn star(&self) -> PositionId {
        self.mk(&[PositionId::ZERO], &[PositionId::ZERO])
    }

    /// Nim heap of size `n`; `star_n(0)` is 0.
    pub fn star_n(&self, n: u32) -> PositionId {
        let mut heaps = vec![PositionId::ZERO];
        for _ in 0..n {
            let next = self.mk(&heaps, &heaps);
            heaps.push(next);
        }
        heaps[n as usize]
    }

    pub fn one(&self) -> PositionId {
        self.mk(&[PositionId::ZERO], &[])
    }

    pub fn one_bar(&self) -> PositionId {
        self.mk(&[], &[PositionId::ZERO])
    }

    pub fn sigma(&self) -> PositionId {
        self.left_of(self.star())
    }

    pub fn sigma_bar(&self) -> PositionId {
        self.right_of(self.star())
    }

    pub fn rho(&self) -> PositionId {
        self.mk(&[self.star()], &[PositionId::ZERO])
    }

    pub fn rho_bar(&self) -> PositionId {
        self.mk(&[PositionId::ZERO], &[self.star()])
    }

    pub fn tau(&self) -> PositionId {
        self.tau_n(1)
    }

    pub fn tau_n(&self, n: u32) -> PositionId {
        let mut t = self.star();
        for _ in 0..n {
            t = self.mk(&[t], &[t]);
        }
        t
    }

    pub fn eta(&self) -> PositionId {
        let inner = self.mk(&[PositionId::ZERO], &[self.rho()]);
        self.mk(&[inner], &[self.star()])
    }

    pub fn theta(&self) -> PositionId {
        let l = self.mk(&[self.star()], &[self.rho()]);
        let r = self.mk(&[self.rho_bar()], &[self.star()]);
        self.mk(&[l], &[r])
    }

    /// `L(x) = {x|·}`
    pub fn left_of(&self, x: PositionId) -> PositionId {
        self.mk(&[x], &[])
    }

    /// `R(x) = {·|x}`
    pub fn right_of(&self, x: PositionId) -> PositionId {
        self.mk(&[], &[x])
    }

    pub fn named(&self, name: Name, k: Option<u32>) -> Result<PositionId> {
        let need_k = |k: Option<u32>| k.ok_or_else(|| Error::InvalidArgument(format!("{name:?} needs an index")));
        let no_k = |k: Option<u32>| match k {
            Some(_) => Err(Error::InvalidArgument(format!("{name:?} takes no index"))),
            None => Ok(()),
        };
        Ok(match name {
            Name::StarN => {
                let k = need_k(k)?;
                if k == 0 {
                    return Err(Error::InvalidArgument("star_n needs k >= 1".into()));
                }
                self.star_n(k)
            }
            Name::TauN => self.tau_n(need_k(k)?),
            other => {
                no_k(k)?;
                match other {
                    Name::Zero => self.zero(),
                    Name::Star => self.star(),
                    Name::One => self.one(),
                    Name::OneBar => self.one_bar(),
                    Name::Sigma => self.sigma(),
                    Name::SigmaBar => self.sigma_bar(),
                    Name::Rho => self.rho(),
                    Name::RhoBar => self.rho_bar(),
                    Name::Tau => self.tau(),
                    Name::Eta => self.eta(),
                    Name::Theta => self.theta(),
                    Name::StarN | Name::TauN => unreachable!(),
                }
            }
        })
    }

    pub fn conjugate(&self, p: PositionId) -> PositionId {
        if let Some(c) = self.conjugates.get(&p).map(|c| *c) {
            return c;
        }
        let node = self.node(p);
        let left: Vec<_> = node.right.iter().map(|&o| self.conjugate(o)).collect();
        let right: Vec<_> = node.left.iter().map(|&o| self.conjugate(o)).collect();
        let c = self.mk(&left, &right);
        self.conjugates.insert(p, c);
        self.conjugates.insert(c, p);
        c
    }

    pub fn adjoint(&self, p: PositionId) -> PositionId {
        if let Some(a) = self.adjoints.get(&p).map(|a| *a) {
            return a;
        }
        let node = self.node(p);
        let a = if node.is_zero() {
            self.star()
        } else {
            let from_right: Vec<_> = node.right.iter().map(|&o| self.adjoint(o)).collect();
            let from_left: Vec<_> = node.left.iter().map(|&o| self.adjoint(o)).collect();
            if node.left.is_empty() {
                self.mk(&from_right, &[PositionId::ZERO])
            } else if node.right.is_empty() {
                self.mk(&[PositionId::ZERO], &from_left)
            } else {
                self.mk(&from_right, &from_left)
            }
        };
        self.adjoints.insert(p, a);
        a
    }

    fn raw_profile(&self, p: PositionId) -> RawProfile {
        if let Some(r) = self.profiles.get(&p).map(|r| *r) {
            return r;
        }
        let node = self.node(p);
        let mut r = RawProfile {
            impartial: node.left == node.right,
            all_small: node.left.is_empty() == node.right.is_empty(),
            binary: node.left.len() <= 1 && node.right.len() <= 1,
            alt_left: 0,
            alt_right: 0,
            rank: 0,
        };
        for &o in node.left.iter() {
            let c = self.raw_profile(o);
            r.alt_left = r.alt_left.max(1 + c.alt_right);
        }
        for &o in node.right.iter() {
            let c = self.raw_profile(o);
            r.alt_right = r.alt_right.max(1 + c.alt_left);
        }
        r.rank = r.alt_left.max(r.alt_right);
        for &o in node.left.iter().chain(node.right.iter()) {
            let c = self.raw_profile(o);
            r.impartial &= c.impartial;
            r.all_small &= c.all_small;
            r.binary &= c.binary;
            r.rank = r.rank.max(c.rank);
        }
        self.profiles.insert(p, r);
        r
    }

    pub fn profile(&self, p: PositionId) -> StructuralProfile {
        let raw = self.raw_profile(p);
        let node = self.node(p);
        StructuralProfile {
            birthday: node.birthday,
            impartial: raw.impartial,
            all_small: raw.all_small,
            binary: raw.binary,
            ab_rank: (raw.all_small && raw.binary).then_some(raw.rank),
            left_end: node.left.is_empty(),
            right_end: node.right.is_empty(),
        }
    }

    pub fn is_all_small(&self, p: PositionId) -> bool {
        self.raw_profile(p).all_small
    }

    pub fn is_impartial(&self, p: PositionId) -> bool {
        self.raw_profile(p).impartial
    }

    /// Compiles a binary alternative sum into a plain position.
    pub fn alt_sum(&self, kind: SumKind, a: PositionId, b: PositionId) -> Result<PositionId> {
        if kind == SumKind::Disjunctive {
            return Err(Error::InvalidArgument(
                "disjunctive sums are SumPositions; use compile_sum for a tree".into(),
            ));
        }
        Ok(self.alt_sum_inner(kind, a, b))
    }

    fn alt_sum_inner(&self, kind: SumKind, a: PositionId, b: PositionId) -> PositionId {
        if let Some(p) = self.alt_sums.get(&(kind, a, b)).map(|p| *p) {
            return p;
        }
        let na = self.node(a);
        let nb = self.node(b);
        let side_options = |side: Side| -> Vec<PositionId> {
            let (xa, xb) = (na.options(side), nb.options(side));
            let mut out = Vec::new();
            match kind {
                SumKind::And => {
                    for &x in xa {
                        for &y in xb {
                            out.push(self.alt_sum_inner(kind, x, y));
                        }
                    }
                }
                SumKind::Or => {
                    if !xa.is_empty() && !xb.is_empty() {
                        for &x in xa {
                            out.push(self.alt_sum_inner(kind, x, b));
                            for &y in xb {
                                out.push(self.alt_sum_inner(kind, x, y));
                            }
                        }
                        for &y in xb {
                            out.push(self.alt_sum_inner(kind, a, y));
                        }
                    }
                }
                SumKind::Disand | SumKind::Disor => {
                    if xa.is_empty() {
                        out.extend_from_slice(xb);
                    } else if xb.is_empty() {
                        out.extend_from_slice(xa);
                    } else {
                        for &x in xa {
                            for &y in xb {
                                out.push(self.alt_sum_inner(kind, x, y));
                            }
                        }
                        if kind == SumKind::Disor {
                            for &x in xa {
                                out.push(self.alt_sum_inner(kind, x, b));
                            }
                            for &y in xb {
                                out.push(self.alt_sum_inner(kind, a, y));
                            }
                        }
                    }
                }
                SumKind::Seqjoin => {
                    if xa.is_empty() {
                        out.extend_from_slice(xb);
                    } else {
                        for &x in xa {
                            out.push(self.alt_sum_inner(kind, x, b));
                        }
                    }
                }
                SumKind::Ordinal => {
                    out.extend_from_slice(xa);
                    for &y in xb {
                        out.push(self.alt_sum_inner(kind, a, y));
                    }
                }
                SumKind::Disjunctive => unreachable!(),
            }
            out
        };
        let left = side_options(Side::Left);
        let right = side_options(Side::Right);
        let p = self.mk(&left, &right);
        self.alt_sums.insert((kind, a, b), p);
        p
    }

    /// The game tree of a disjunctive sum, as a single position.
    pub fn compile_sum(&self, s: &SumPosition) -> PositionId {
        match s.components() {
            [] => return PositionId::ZERO,
            [p] => return *p,
            _ => {}
        }
        if let Some(p) = self.compiled_sums.get(s).map(|p| *p) {
            return p;
        }
        let mut sides = [Vec::new(), Vec::new()];
        for (k, side) in [Side::Left, Side::Right].into_iter().enumerate() {
            for next in self.sum_options(s, side) {
                sides[k].push(self.compile_sum(&next));
            }
        }
        let p = self.mk(&sides[0], &sides[1]);
        self.compiled_sums.insert(s.clone(), p);
        p
    }

    /// All positions reachable from `roots`, including the roots, ascending by id.
    pub fn subpositions(&self, roots: &[PositionId]) -> Vec<PositionId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<_> = roots.to_vec();
        while let Some(p) = stack.pop() {
            if seen.insert(p) {
                let node = self.node(p);
                stack.extend(node.left.iter().chain(node.right.iter()).copied());
            }
        }
        seen.into_iter().collect()
    }

    pub fn to_dot(&self, p: PositionId) -> String {
        let mut out = String::from("digraph game {\n");
        for q in self.subpositions(&[p]) {
            let label = self.format_position(q);
            let label = if label.len() <= 24 { label } else { q.to_string() };
            out.push_str(&format!("  n{} [label=\"{}\"];\n", q.0, label.replace('"', "\\\"")));
        }
        for q in self.subpositions(&[p]) {
            let node = self.node(q);
            for &o in node.left.iter() {
                out.push_str(&format!("  n{} -> n{} [label=\"L\"];\n", q.0, o.0));
            }
            for &o in node.right.iter() {
                out.push_str(&format!("  n{} -> n{} [label=\"R\"];\n", q.0, o.0));
            }
        }
        out.push_str("}\n");
        out
    }

    /// `k` with `p = *k`, if `p` is a nim heap.
    pub fn nim_index(&self, p: PositionId) -> Option<u32> {
        let node = self.node(p);
        if node.left != node.right {
            return None;
        }
        let mut seen: Vec<u32> = Vec::with_capacity(node.left.len());
        for &o in node.left.iter() {
            seen.push(self.nim_index(o)?);
        }
        seen.sort_unstable();
        seen.iter().enumerate().all(|(i, &v)| i as u32 == v).then_some(seen.len() as u32)
    }

    /// `k` with `p = τᵏ`.
    pub fn tau_index(&self, p: PositionId) -> Option<u32> {
        let node = self.node(p);
        if node.left.len() != 1 || node.left != node.right {
            return None;
        }
        if node.left[0] == PositionId::ZERO {
            return Some(0);
        }
        self.tau_index(node.left[0]).map(|k| k + 1)
    }
}
