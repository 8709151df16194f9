//! Partizan subtraction games played on several heaps.
//!
//! A position is a vector `(x₁, …, xₙ)` counting heaps of each size. Vectors
//! are iterated in colexicographic order: the first coordinate varies fastest.

use std::fmt;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::position::{Engine, PositionId, Side};
use crate::quotient::{compute_quotient_with, symbol, Quotient, SumOracle, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubtractionGameSpec {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub max_heap: u32,
}

impl SubtractionGameSpec {
    pub fn new(left: &[u32], right: &[u32], max_heap: u32) -> Result<SubtractionGameSpec> {
        let clean = |v: &[u32]| -> Result<Vec<u32>> {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() || v[0] == 0 {
                return Err(Error::InvalidArgument("subtraction sets must be nonempty and positive".into()));
            }
            Ok(v)
        };
        if max_heap == 0 {
            return Err(Error::InvalidArgument("max_heap must be positive".into()));
        }
        Ok(SubtractionGameSpec { left: clean(left)?, right: clean(right)?, max_heap })
    }

    pub fn subtractions(&self, side: Side) -> &[u32] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn name(&self) -> String {
        let j = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("L({})/R({})", j(&self.left), j(&self.right))
    }
}

/// Heap counts `(x₁, …, xₙ)` with trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeapVector(Vec<u32>);

impl HeapVector {
    pub fn new(mut counts: Vec<u32>) -> HeapVector {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        HeapVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, size: usize) -> u32 {
        self.0.get(size - 1).copied().unwrap_or(0)
    }

    pub fn tokens(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum()
    }

    pub fn heaps(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Colexicographic comparison: the rightmost differing coordinate decides.
    pub fn colex_cmp(&self, other: &HeapVector) -> std::cmp::Ordering {
        let n = self.0.len().max(other.0.len());
        for i in (1..=n).rev() {
            match self.get(i).cmp(&other.get(i)) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for HeapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// All vectors with `xᵢ ≤ maxes[i-1]`, in colexicographic order.
pub fn colex_box(maxes: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; maxes.len()];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == maxes.len() {
                return out;
            }
            if cur[i] < maxes[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Memoized outcomes for one subtraction game.
pub struct HeapGame {
    pub spec: SubtractionGameSpec,
    memo: DashMap<HeapVector, Outcome>,
}

impl HeapGame {
    pub fn new(spec: SubtractionGameSpec) -> HeapGame {
        HeapGame { spec, memo: DashMap::new() }
    }

    pub fn options(&self, v: &HeapVector, side: Side) -> Vec<HeapVector> {
        let mut out = Vec::new();
        for (i, &x) in v.counts().iter().enumerate() {
            let k = i as u32 + 1;
            if x == 0 {
                continue;
            }
            for &s in self.spec.subtractions(side) {
                if s > k {
                    continue;
                }
                let mut c = v.counts().to_vec();
                c[i] -= 1;
                if k > s {
                    c[(k - s - 1) as usize] += 1;
                }
                out.push(HeapVector::new(c));
            }
        }
        out
    }

    pub fn outcome(&self, v: &HeapVector) -> Result<Outcome> {
        if v.counts().len() > self.spec.max_heap as usize {
            return Err(Error::Precondition(format!("{v} has a heap larger than max_heap {}", self.spec.max_heap)));
        }
        Ok(self.outcome_unchecked(v))
    }

    pub fn outcome_of(&self, counts: &[u32]) -> Result<Outcome> {
        self.outcome(&HeapVector::new(counts.to_vec()))
    }

    fn outcome_unchecked(&self, v: &HeapVector) -> Outcome {
        if let Some(o) = self.memo.get(v).map(|o| *o) {
            return o;
        }
        let wins = |side: Side| {
            let opts = self.options(v, side);
            opts.is_empty() || opts.iter().any(|o| self.outcome_unchecked(o).second_player_wins(side))
        };
        let o = Outcome::from_wins(wins(Side::Left), wins(Side::Right));
        self.memo.insert(v.clone(), o);
        o
    }

    pub fn outcome_table(&self, maxes: &[u32]) -> Result<OutcomeTable> {
        let cells = colex_box(maxes)
            .into_iter()
            .map(|c| {
                let v = HeapVector::new(c);
                self.outcome(&v).map(|o| (v, o))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutcomeTable { game: self.spec.name(), dims: maxes.to_vec(), cells })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeTable {
    pub game: String,
    pub dims: Vec<u32>,
    pub cells: Vec<(HeapVector, Outcome)>,
}

impl OutcomeTable {
    pub fn get(&self, counts: &[u32]) -> Option<Outcome> {
        let v = HeapVector::new(counts.to_vec());
        self.cells.iter().find(|(w, _)| *w == v).map(|(_, o)| *o)
    }

    /// Rows indexed by `x₂`, columns by `x₁`, one block per value of the higher coordinates.
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.game);
        if self.dims.is_empty() {
            out.push_str(&format!("() {}\n", self.cells[0].1));
            return out;
        }
        let w = self.dims[0] as usize + 1;
        let rows: Vec<&[(HeapVector, Outcome)]> = self.cells.chunks(w).collect();
        let row_len = if self.dims.len() > 1 { self.dims[1] as usize + 1 } else { 1 };
        for (r, row) in rows.iter().enumerate() {
            if r % row_len == 0 {
                let higher: Vec<String> = self.dims.iter().enumerate().skip(2).map(|(i, _)| {
                    format!("x{}={}", i + 1, row[0].0.get(i + 1))
                }).collect();
                if !higher.is_empty() {
                    out.push_str(&format!("[{}]\n", higher.join(", ")));
                }
                let header: Vec<String> = (0..w).map(|x| format!("{x:>2}")).collect();
                out.push_str(&format!("{:>8} |{}\n", "x1=", header.join("")));
            }
            let label = if self.dims.len() > 1 { format!("x2={}", row[0].0.get(2)) } else { String::new() };
            let cells: Vec<String> = row.iter().map(|(_, o)| format!("{:>2}", o.symbol())).collect();
            out.push_str(&format!("{label:>8} |{}\n", cells.join("")));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityBounds {
    pub max_preperiod: u32,
    pub max_period: u32,
    /// condition (2) is checked for `0 ≤ u ≤ max_u`
    pub max_u: u32,
    /// extra room past `rⱼ + dⱼ` for the lower coordinates
    pub slack: u32,
    /// box size for coordinates without a detected period
    pub fallback_box: u32,
}

impl Default for PeriodicityBounds {
    fn default() -> Self {
        PeriodicityBounds { max_preperiod: 6, max_period: 6, max_u: 4, slack: 2, fallback_box: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoordinateStatus {
    Found,
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinatePeriod {
    pub heap: u32,
    pub status: CoordinateStatus,
    pub r: Option<u32>,
    pub d: Option<u32>,
    /// `Rᵢ` and `Dᵢ`; empty when not found
    pub pre_period: Vec<u32>,
    pub period: Vec<u32>,
    pub verified: bool,
    pub checked_u: u32,
    pub lower_box: Vec<u32>,
    /// a shift vector preserving every outcome in the box, e.g. `(1,1)`
    pub diagonal: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub game: String,
    pub coordinates: Vec<CoordinatePeriod>,
    /// `hᵢ^(rᵢ+dᵢ) = hᵢ^rᵢ` per found coordinate, plus diagonal relations
    pub candidate_relations: Vec<String>,
    pub bounds: PeriodicityBounds,
}

impl PeriodicityReport {
    pub fn found(&self) -> impl Iterator<Item = &CoordinatePeriod> {
        self.coordinates.iter().filter(|c| c.status == CoordinateStatus::Found)
    }

    /// Outcome predicted by folding every found coordinate back into its period.
    pub fn reduce(&self, counts: &[u32]) -> Vec<u32> {
        let mut c = counts.to_vec();
        for p in self.found() {
            let i = p.heap as usize - 1;
            if i >= c.len() {
                continue;
            }
            let (r, d) = (p.r.unwrap(), p.d.unwrap());
            if c[i] >= r + d {
                c[i] = r + (c[i] - r) % d;
            }
        }
        c
    }
}

fn with(lower: &[u32], x: u32) -> Vec<u32> {
    let mut v = lower.to_vec();
    v.push(x);
    v
}

impl HeapGame {
    pub fn detect_periodicity(&self, bounds: PeriodicityBounds) -> PeriodicityReport {
        let mut coordinates: Vec<CoordinatePeriod> = Vec::new();
        let mut candidate_relations = Vec::new();
        for i in 1..=self.spec.max_heap {
            let lower_box: Vec<u32> = coordinates
                .iter()
                .map(|c| match (c.r, c.d) {
                    (Some(r), Some(d)) => r + d + bounds.slack,
                    _ => bounds.fallback_box,
                })
                .collect();
            let coord = (i - 1) as usize;
            // a candidate also has to leave every lower period intact
            let lower_ok = |r: u32, d: u32| {
                let mut boxed = lower_box.clone();
                boxed.push(r + d + bounds.slack);
                coordinates
                    .iter()
                    .enumerate()
                    .all(|(j, c)| self.period_holds_at(&boxed, j, c.r.unwrap(), c.d.unwrap(), bounds.max_u))
            };
            let mut found = None;
            'search: for r in 0..=bounds.max_preperiod {
                for d in 1..=bounds.max_period {
                    let mut boxed = lower_box.clone();
                    boxed.push(0);
                    if self.period_holds_at(&boxed, coord, r, d, bounds.max_u) && lower_ok(r, d) {
                        found = Some((r, d));
                        break 'search;
                    }
                }
            }
            let diagonal = if found.is_none() && i > 1 {
                let full = with(&lower_box, bounds.fallback_box);
                (0..coord).find_map(|j| {
                    let mut shift = vec![0u32; i as usize];
                    shift[j] = 1;
                    shift[coord] = 1;
                    let ok = colex_box(&full).iter().all(|v| {
                        let moved: Vec<u32> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        self.outcome_unchecked(&HeapVector::new(v.clone()))
                            == self.outcome_unchecked(&HeapVector::new(moved))
                    });
                    ok.then_some(shift)
                })
            } else {
                None
            };
            let entry = match found {
                Some((r, d)) => {
                    let mut pre: Vec<u32> = coordinates.last().map(|c| c.pre_period.clone()).unwrap_or_default();
                    let mut per: Vec<u32> = coordinates.last().map(|c| c.period.clone()).unwrap_or_default();
                    pre.push(r);
                    per.push(d);
                    let s = symbol(coord);
                    let pow = |n: u32| match n {
                        0 => "1".to_string(),
                        1 => s.clone(),
                        n => format!("{s}^{n}"),
                    };
                    candidate_relations.push(format!("{} = {}", pow(r + d), pow(r)));
                    CoordinatePeriod {
                        heap: i,
                        status: CoordinateStatus::Found,
                        r: Some(r),
                        d: Some(d),
                        pre_period: pre,
                        period: per,
                        verified: true,
                        checked_u: bounds.max_u,
                        lower_box: lower_box.clone(),
                        diagonal: None,
                    }
                }
                None => {
                    if let Some(shift) = &diagonal {
                        let w: String = shift
                            .iter()
                            .enumerate()
                            .filter(|(_, &x)| x > 0)
                            .map(|(j, _)| symbol(j))
                            .collect();
                        candidate_relations.push(format!("{w} = 1"));
                    }
                    CoordinatePeriod {
                        heap: i,
                        status: CoordinateStatus::NotFound,
                        r: None,
                        d: None,
                        pre_period: Vec::new(),
                        period: Vec::new(),
                        verified: false,
                        checked_u: bounds.max_u,
                        lower_box: lower_box.clone(),
                        diagonal,
                    }
                }
            };
            let stop = entry.status == CoordinateStatus::NotFound;
            coordinates.push(entry);
            if stop {
                break;
            }
        }
        PeriodicityReport { game: self.spec.name(), coordinates, candidate_relations, bounds }
    }

    fn period_holds_at(&self, full_box: &[u32], coord: usize, r: u32, d: u32, max_u: u32) -> bool {
        colex_box(full_box).iter().all(|v| {
            (0..=max_u).all(|u| {
                let mut a = v.clone();
                let mut b = v.clone();
                a[coord] = r + u;
                b[coord] = r + d + u;
                self.outcome_unchecked(&HeapVector::new(a)) == self.outcome_unchecked(&HeapVector::new(b))
            })
        })
    }
}

/// Multisets of heaps `h₁ … h_max` as a quotient base.
pub struct HeapOracle<'a> {
    pub game: &'a HeapGame,
}

impl HeapOracle<'_> {
    pub fn vector(&self, word: &[u16]) -> HeapVector {
        let mut c = vec![0u32; self.game.spec.max_heap as usize];
        for &i in word {
            c[i as usize] += 1;
        }
        HeapVector::new(c)
    }

    pub fn word(&self, counts: &[u32]) -> Word {
        let mut w = Vec::new();
        for (i, &x) in counts.iter().enumerate() {
            w.extend(std::iter::repeat_n(i as u16, x as usize));
        }
        w
    }
}

impl SumOracle for HeapOracle<'_> {
    fn base_len(&self) -> usize {
        self.game.spec.max_heap as usize
    }

    fn outcome(&self, word: &[u16]) -> Outcome {
        self.game.outcome_unchecked(&self.vector(word))
    }

    fn label(&self, index: usize) -> String {
        format!("h{}", index + 1)
    }
}

pub struct HeapQuotient<'a> {
    pub oracle: HeapOracle<'a>,
    pub quotient: Quotient,
}

impl HeapQuotient<'_> {
    pub fn class_of(&self, counts: &[u32]) -> Option<usize> {
        self.quotient.class_of(&self.oracle, &self.oracle.word(counts))
    }
}

impl HeapGame {
    pub fn heap_quotient(&self, sum_bound: usize, context_bound: usize) -> Result<HeapQuotient<'_>> {
        let oracle = HeapOracle { game: self };
        let quotient = compute_quotient_with(&oracle, sum_bound, context_bound)?;
        Ok(HeapQuotient { oracle, quotient })
    }
}

impl Engine {
    /// A single heap of size `n` as a plain position.
    pub fn compile_heap_position(&self, spec: &SubtractionGameSpec, n: u32) -> Result<PositionId> {
        if n > spec.max_heap {
            return Err(Error::Precondition(format!("heap {n} exceeds max_heap {}", spec.max_heap)));
        }
        let mut heaps = vec![PositionId::ZERO];
        for k in 1..=n {
            let opts = |side: Side| -> Vec<PositionId> {
                spec.subtractions(side).iter().filter(|&&s| s <= k).map(|&s| heaps[(k - s) as usize]).collect()
            };
            let p = self.build(&opts(Side::Left), &opts(Side::Right))?;
            heaps.push(p);
        }
        Ok(heaps[n as usize])
    }
}
