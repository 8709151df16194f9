//! Bounded indistinguishability quotients and their partial orders.
//!
//! Elements and contexts are multisets over a finite base, written as sorted
//! vectors of base indices. Two elements fall into one class when their outcome
//! agrees against every context up to the context bound.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::{Comparison, Outcome, SumPosition};
use crate::position::{Engine, PositionId};

pub const DEFAULT_SUM_BOUND: usize = 6;
pub const DEFAULT_CONTEXT_BOUND: usize = 6;

pub const CERTIFICATE_NOTE: &str = "empirical: classes and relations are verified only against contexts up to \
     context_bound and elements up to sum_bound; this is not a proof";

pub type Word = Vec<u16>;

/// Misère outcome of a multiset over a fixed base.
pub trait SumOracle: Sync {
    fn base_len(&self) -> usize;
    fn outcome(&self, word: &[u16]) -> Outcome;
    fn label(&self, index: usize) -> String;
}

/// All multisets over `k` symbols of size at most `max_size`, by size then lexicographically.
pub fn multisets(k: usize, max_size: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    if k == 0 {
        return out;
    }
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for w in &layer {
            let from = w.last().copied().unwrap_or(0);
            for s in from..k as u16 {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn merge(a: &[u16], b: &[u16]) -> Word {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort_unstable();
    v
}

pub fn symbol(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("x{index}")
    }
}

/// `a^2b` style rendering of a word; the empty word is `1`.
pub fn format_word(word: &[u16], symbols: &[String]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        out.push_str(&symbols[word[i] as usize]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuotientStatus {
    FiniteVerifiedAtBound,
    NotStabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSymbol {
    pub symbol: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub index: usize,
    pub word: String,
    pub representative: Word,
    pub outcome: Outcome,
    pub members_at_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: String,
    pub rhs: String,
    pub lhs_word: Word,
    pub rhs_class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub classes: (usize, usize),
    pub context: Word,
    pub context_word: String,
    pub outcomes: (Outcome, Outcome),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub base: Vec<BaseSymbol>,
    pub classes: Vec<ClassInfo>,
    pub relations: Vec<Relation>,
    pub tetrapartition: BTreeMap<Outcome, Vec<usize>>,
    pub status: QuotientStatus,
    pub sum_bound: usize,
    pub context_bound: usize,
    pub layer_class_counts: Vec<usize>,
    pub congruence_closed: bool,
    pub witnesses: Vec<Witness>,
    pub certificate: String,
}

/// A quotient together with the data needed to place further elements into classes.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub report: QuotientReport,
    pub contexts: Vec<Word>,
    pub class_profiles: Vec<Vec<Outcome>>,
    index: HashMap<Vec<Outcome>, usize>,
}

impl Quotient {
    pub fn len(&self) -> usize {
        self.report.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.report.classes.is_empty()
    }

    pub fn profile<O: SumOracle + ?Sized>(&self, oracle: &O, word: &[u16]) -> Vec<Outcome> {
        self.contexts.iter().map(|c| oracle.outcome(&merge(word, c))).collect()
    }

    /// Class of an arbitrary element, if its profile matches a known class.
    pub fn class_of<O: SumOracle + ?Sized>(&self, oracle: &O, word: &[u16]) -> Option<usize> {
        self.index.get(&self.profile(oracle, word)).copied()
    }

    pub fn class_outcome(&self, class: usize) -> Outcome {
        self.report.classes[class].outcome
    }

    pub fn representative(&self, class: usize) -> &[u16] {
        &self.report.classes[class].representative
    }

    pub fn symbols(&self) -> Vec<String> {
        self.report.base.iter().map(|b| b.symbol.clone()).collect()
    }
}

pub fn compute_quotient_with<O: SumOracle + ?Sized>(oracle: &O, sum_bound: usize, context_bound: usize) -> Result<Quotient> {
    if sum_bound == 0 || context_bound == 0 {
        return Err(Error::InvalidArgument("bounds must be at least 1".into()));
    }
    let k = oracle.base_len();
    let symbols: Vec<String> = (0..k).map(symbol).collect();
    let base = (0..k).map(|i| BaseSymbol { symbol: symbols[i].clone(), label: oracle.label(i) }).collect();
    let elements = multisets(k, sum_bound);
    let contexts = multisets(k, context_bound);
    let profiles: Vec<Vec<Outcome>> = elements
        .par_iter()
        .map(|e| contexts.iter().map(|c| oracle.outcome(&merge(e, c))).collect())
        .collect();

    let mut index: HashMap<Vec<Outcome>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(elements.len());
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    let mut layer_class_counts = vec![0; sum_bound + 1];
    for (i, prof) in profiles.iter().enumerate() {
        let next = index.len();
        let c = *index.entry(prof.clone()).or_insert(next);
        if c == next {
            reps.push(i);
            members.push(0);
        }
        members[c] += 1;
        class_of.push(c);
        layer_class_counts[elements[i].len()] = index.len();
    }
    for s in 1..=sum_bound {
        layer_class_counts[s] = layer_class_counts[s].max(layer_class_counts[s - 1]);
    }

    let class_profiles: Vec<Vec<Outcome>> = reps.iter().map(|&r| profiles[r].clone()).collect();
    let classes: Vec<ClassInfo> = reps
        .iter()
        .enumerate()
        .map(|(c, &r)| ClassInfo {
            index: c,
            word: format_word(&elements[r], &symbols),
            representative: elements[r].clone(),
            outcome: profiles[r][0],
            members_at_bound: members[c],
        })
        .collect();

    let congruence_closed = reps.par_iter().all(|&r| {
        (0..k as u16).all(|s| {
            let w = merge(&elements[r], &[s]);
            let prof: Vec<Outcome> = contexts.iter().map(|c| oracle.outcome(&merge(&w, c))).collect();
            index.contains_key(&prof)
        })
    });
    let stable = layer_class_counts[sum_bound] == layer_class_counts[sum_bound - 1];
    let status = if stable && congruence_closed {
        QuotientStatus::FiniteVerifiedAtBound
    } else {
        QuotientStatus::NotStabilized
    };

    let position: HashMap<&Word, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let is_normal = |i: usize| reps[class_of[i]] == i;
    let mut relations = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        if is_normal(i) {
            continue;
        }
        let divisors_normal = (0..e.len()).all(|j| {
            let mut d = e.clone();
            d.remove(j);
            is_normal(position[&d])
        });
        if divisors_normal {
            let c = class_of[i];
            relations.push(Relation {
                lhs: format_word(e, &symbols),
                rhs: classes[c].word.clone(),
                lhs_word: e.clone(),
                rhs_class: c,
            });
        }
    }

    let mut tetrapartition: BTreeMap<Outcome, Vec<usize>> = Outcome::ALL.iter().map(|&o| (o, Vec::new())).collect();
    for c in &classes {
        tetrapartition.get_mut(&c.outcome).unwrap().push(c.index);
    }

    let mut witnesses = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let z = (0..contexts.len())
                .find(|&z| class_profiles[a][z] != class_profiles[b][z])
                .expect("distinct classes have distinct profiles");
            witnesses.push(Witness {
                classes: (a, b),
                context: contexts[z].clone(),
                context_word: format_word(&contexts[z], &symbols),
                outcomes: (class_profiles[a][z], class_profiles[b][z]),
            });
        }
    }

    let index = class_profiles.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Ok(Quotient {
        report: QuotientReport {
            base,
            classes,
            relations,
            tetrapartition,
            status,
            sum_bound,
            context_bound,
            layer_class_counts,
            congruence_closed,
            witnesses,
            certificate: CERTIFICATE_NOTE.into(),
        },
        contexts,
        class_profiles,
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncomparabilityKind {
    /// some context sends one side to N and the other to P
    NpSplit,
    /// two contexts order the pair in opposite directions
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incomparability {
    pub classes: (usize, usize),
    pub kind: IncomparabilityKind,
    pub contexts: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetReport {
    /// strict pairs `(greater, lesser)`
    pub order: Vec<(usize, usize)>,
    pub covers: Vec<(usize, usize)>,
    pub incomparable: Vec<Incomparability>,
    pub down_directed: bool,
    pub up_directed: bool,
    pub lattice: bool,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

impl PosetReport {
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.order.contains(&(a, b))
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.greater(a, b) || self.greater(b, a)
    }

    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("  c{i} [label=\"{l}\"];\n"));
        }
        for &(hi, lo) in &self.covers {
            out.push_str(&format!("  c{lo} -> c{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Partial order of the classes against the tested contexts, regardless of stabilization.
pub fn poset_at_bound(q: &Quotient) -> PosetReport {
    let n = q.len();
    let prof = &q.class_profiles;
    let mut geq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            geq[a][b] = prof[a].iter().zip(&prof[b]).all(|(x, y)| Outcome::ge(*x, *y));
        }
    }
    let mut order = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && geq[a][b] {
                order.push((a, b));
            }
        }
    }
    let covers = order
        .iter()
        .copied()
        .filter(|&(a, b)| !(0..n).any(|c| c != a && c != b && geq[a][c] && geq[c][b]))
        .collect();

    let mut incomparable = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if geq[a][b] || geq[b][a] {
                continue;
            }
            let mut up = None;
            let mut down = None;
            let mut found = None;
            for (z, ctx) in q.contexts.iter().enumerate() {
                let (x, y) = (prof[a][z], prof[b][z]);
                match x.compare(y) {
                    Comparison::Incomparable => {
                        found = Some(Incomparability {
                            classes: (a, b),
                            kind: IncomparabilityKind::NpSplit,
                            contexts: vec![ctx.clone()],
                        });
                    }
                    Comparison::Greater if up.is_none() => up = Some(z),
                    Comparison::Less if down.is_none() => down = Some(z),
                    _ => {}
                }
                if found.is_none() {
                    if let (Some(u), Some(d)) = (up, down) {
                        found = Some(Incomparability {
                            classes: (a, b),
                            kind: IncomparabilityKind::Crossing,
                            contexts: vec![q.contexts[u].clone(), q.contexts[d].clone()],
                        });
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            incomparable.push(found.expect("incomparable classes have a witness"));
        }
    }

    let lower_bound = |a: usize, b: usize| (0..n).any(|c| geq[a][c] && geq[b][c]);
    let upper_bound = |a: usize, b: usize| (0..n).any(|c| geq[c][a] && geq[c][b]);
    let down_directed = (0..n).all(|a| (0..n).all(|b| lower_bound(a, b)));
    let up_directed = (0..n).all(|a| (0..n).all(|b| upper_bound(a, b)));
    let bottom = (0..n).find(|&c| (0..n).all(|x| geq[x][c]));
    let top = (0..n).find(|&c| (0..n).all(|x| geq[c][x]));
    let has_join = |a: usize, b: usize| {
        let ups: Vec<usize> = (0..n).filter(|&c| geq[c][a] && geq[c][b]).collect();
        ups.iter().any(|&u| ups.iter().all(|&v| geq[v][u]))
    };
    let has_meet = |a: usize, b: usize| {
        let downs: Vec<usize> = (0..n).filter(|&c| geq[a][c] && geq[b][c]).collect();
        downs.iter().any(|&u| downs.iter().all(|&v| geq[u][v]))
    };
    let lattice = (0..n).all(|a| (0..n).all(|b| has_join(a, b) && has_meet(a, b)));
    PosetReport { order, covers, incomparable, down_directed, up_directed, lattice, bottom, top }
}

pub fn compute_poset(q: &Quotient) -> Result<PosetReport> {
    if q.report.status != QuotientStatus::FiniteVerifiedAtBound {
        return Err(Error::Unsupported("the quotient did not stabilize at its bound".into()));
    }
    Ok(poset_at_bound(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureBase {
    pub generators: Vec<PositionId>,
    /// option closed, contains 0, ordered by birthday then id
    pub base: Vec<PositionId>,
}

impl ClosureBase {
    pub fn nonzero(&self) -> &[PositionId] {
        &self.base[1..]
    }

    pub fn contains(&self, p: PositionId) -> bool {
        self.base.contains(&p)
    }

    /// Base-index word of a sum whose components all lie in the base.
    pub fn word_of(&self, s: &SumPosition) -> Option<Word> {
        let mut w = Vec::with_capacity(s.len());
        for c in s.components() {
            w.push(self.nonzero().iter().position(|b| b == c)? as u16);
        }
        w.sort_unstable();
        Some(w)
    }

    pub fn sum_of(&self, word: &[u16]) -> SumPosition {
        word.iter().map(|&i| self.nonzero()[i as usize]).collect()
    }
}

pub struct ClosureOracle<'a> {
    pub engine: &'a Engine,
    pub closure: &'a ClosureBase,
}

impl SumOracle for ClosureOracle<'_> {
    fn base_len(&self) -> usize {
        self.closure.nonzero().len()
    }

    fn outcome(&self, word: &[u16]) -> Outcome {
        self.engine.misere_outcome(&self.closure.sum_of(word))
    }

    fn label(&self, index: usize) -> String {
        self.engine.format_position(self.closure.nonzero()[index])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result", content = "context")]
pub enum RelationCheck {
    HoldsAtBound,
    Refuted(SumPosition),
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        matches!(self, RelationCheck::HoldsAtBound)
    }
}

/// A quotient over the closure of a set of positions.
pub struct PositionQuotient {
    pub closure: ClosureBase,
    pub quotient: Quotient,
}

impl PositionQuotient {
    pub fn report(&self) -> &QuotientReport {
        &self.quotient.report
    }

    pub fn class_count(&self) -> usize {
        self.quotient.len()
    }

    pub fn representative(&self, class: usize) -> SumPosition {
        self.closure.sum_of(self.quotient.representative(class))
    }

    pub fn class_of(&self, engine: &Engine, s: &SumPosition) -> Option<usize> {
        let w = self.closure.word_of(s)?;
        self.quotient.class_of(&ClosureOracle { engine, closure: &self.closure }, &w)
    }
}

impl Engine {
    pub fn option_closure(&self, generators: &[PositionId]) -> ClosureBase {
        let mut base = self.subpositions(generators);
        if !base.contains(&PositionId::ZERO) {
            base.push(PositionId::ZERO);
        }
        base.sort_by_key(|&p| (self.birthday(p), p));
        ClosureBase { generators: generators.to_vec(), base }
    }

    /// First context over the base on which `a` and `b` have different outcomes.
    pub fn distinguish(
        &self,
        a: &SumPosition,
        b: &SumPosition,
        base: &ClosureBase,
        context_bound: usize,
    ) -> Option<SumPosition> {
        multisets(base.nonzero().len(), context_bound).into_iter().map(|w| base.sum_of(&w)).find(|z| {
            self.misere_outcome(&a.add(z)) != self.misere_outcome(&b.add(z))
        })
    }

    pub fn verify_relation(
        &self,
        lhs: &SumPosition,
        rhs: &SumPosition,
        base: &ClosureBase,
        context_bound: usize,
    ) -> RelationCheck {
        match self.distinguish(lhs, rhs, base, context_bound) {
            None => RelationCheck::HoldsAtBound,
            Some(z) => RelationCheck::Refuted(z),
        }
    }

    pub fn compute_quotient(
        &self,
        generators: &[PositionId],
        sum_bound: usize,
        context_bound: usize,
    ) -> Result<PositionQuotient> {
        let closure = self.option_closure(generators);
        let quotient = compute_quotient_with(&ClosureOracle { engine: self, closure: &closure }, sum_bound, context_bound)?;
        Ok(PositionQuotient { closure, quotient })
    }

    /// Does conjugation reverse the bounded order of the classes?
    pub fn conjugate_order_check(&self, q: &PositionQuotient) -> Result<bool> {
        let gens = &q.closure.generators;
        if !gens.iter().all(|&g| gens.contains(&self.conjugate(g)) || self.conjugate(g) == g) {
            return Err(Error::Precondition("generator set is not closed under conjugation".into()));
        }
        let poset = poset_at_bound(&q.quotient);
        let n = q.class_count();
        let mut image = Vec::with_capacity(n);
        for c in 0..n {
            let rep = q.representative(c);
            let conj: SumPosition = rep.components().iter().map(|&p| self.conjugate(p)).collect();
            image.push(q.class_of(self, &conj));
        }
        for a in 0..n {
            for b in 0..n {
                let (Some(ca), Some(cb)) = (image[a], image[b]) else { continue };
                if a == b {
                    continue;
                }
                if poset.greater(a, b) && !poset.greater(cb, ca) {
                    return Ok(false);
                }
                if !poset.comparable(a, b) && poset.comparable(ca, cb) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
