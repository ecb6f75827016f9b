//! Order-property rank: the longest staircase (half graph) across a
//! threshold pair, and the defect profile over all entry-value thresholds.
//!
//! The search runs over row sequences in lexicographic order. Once the rows
//! `i_1..i_k` are fixed, the admissible columns for position `q` form a set
//! `C_q` that is determined by the rows alone, and the sets for different
//! positions are disjoint (a cell cannot be both low and high). So a row
//! sequence extends to a staircase iff every `C_q` is non-empty, and the
//! canonical witness takes `min C_q` for each position.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::Rational;
use crate::witness::{Orientation, StaircaseWitness, ThresholdPair};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRankResult {
    pub rank: usize,
    pub witness: Option<StaircaseWitness>,
    /// True iff the search proved that no longer staircase exists up to the cap.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Low/high indicator rows of a matrix at one threshold pair.
#[derive(Debug, Clone)]
pub(crate) struct LevelMasks {
    pub hi: Vec<FixedBitSet>,
    pub lo: Vec<FixedBitSet>,
    pub cols: usize,
}

impl LevelMasks {
    pub fn new(m: &EvalMatrix, t: &ThresholdPair) -> Self {
        let mut hi = Vec::with_capacity(m.rows());
        let mut lo = Vec::with_capacity(m.rows());
        for row in m.entries() {
            let mut h = FixedBitSet::with_capacity(m.cols());
            let mut l = FixedBitSet::with_capacity(m.cols());
            for (j, v) in row.iter().enumerate() {
                h.set(j, t.is_high(v));
                l.set(j, t.is_low(v));
            }
            hi.push(h);
            lo.push(l);
        }
        Self {
            hi,
            lo,
            cols: m.cols(),
        }
    }

    fn rows(&self) -> usize {
        self.hi.len()
    }
}

pub(crate) enum SearchOutcome {
    Found { rows: Vec<usize>, cols: Vec<usize> },
    Absent,
    BudgetExceeded,
}

pub(crate) struct NodeCounter {
    pub used: u64,
    pub budget: u64,
}

impl NodeCounter {
    pub fn new(budget: u64) -> Self {
        Self { used: 0, budget }
    }

    /// Records one node; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.budget
    }
}

/// Lexicographically least staircase of exactly length `k`.
pub(crate) fn find_staircase(
    masks: &LevelMasks,
    k: usize,
    orientation: Orientation,
    counter: &mut NodeCounter,
) -> SearchOutcome {
    if k == 0 || k > masks.rows() || k > masks.cols {
        return SearchOutcome::Absent;
    }
    let mut future = FixedBitSet::with_capacity(masks.cols);
    future.insert_range(..);
    let mut search = StaircaseSearch {
        masks,
        k,
        orientation,
        counter,
        rows: Vec::with_capacity(k),
        used: FixedBitSet::with_capacity(masks.rows()),
        aborted: false,
    };
    match search.extend(&[], &future) {
        Some(col_sets) => SearchOutcome::Found {
            rows: search.rows.clone(),
            cols: col_sets
                .iter()
                .map(|s| s.ones().next().expect("non-empty column set"))
                .collect(),
        },
        None if search.aborted => SearchOutcome::BudgetExceeded,
        None => SearchOutcome::Absent,
    }
}

struct StaircaseSearch<'a> {
    masks: &'a LevelMasks,
    k: usize,
    orientation: Orientation,
    counter: &'a mut NodeCounter,
    rows: Vec<usize>,
    used: FixedBitSet,
    aborted: bool,
}

impl StaircaseSearch<'_> {
    /// Mask applied to already placed column sets when a row is appended.
    fn earlier_mask(&self, row: usize) -> &FixedBitSet {
        match self.orientation {
            Orientation::RowDominant => &self.masks.hi[row],
            Orientation::ColDominant => &self.masks.lo[row],
        }
    }

    /// Mask applied to the pool of columns for later positions.
    fn later_mask(&self, row: usize) -> &FixedBitSet {
        match self.orientation {
            Orientation::RowDominant => &self.masks.lo[row],
            Orientation::ColDominant => &self.masks.hi[row],
        }
    }

    /// Column sets after appending `row`, or `None` if one would be empty.
    fn step(
        &self,
        sets: &[FixedBitSet],
        future: &FixedBitSet,
        row: usize,
    ) -> Option<(Vec<FixedBitSet>, FixedBitSet)> {
        let earlier = self.earlier_mask(row);
        let mut next = Vec::with_capacity(sets.len() + 1);
        for s in sets {
            let mut t = s.clone();
            t.intersect_with(earlier);
            if t.is_clear() {
                return None;
            }
            next.push(t);
        }
        let mut own = future.clone();
        own.intersect_with(&self.masks.hi[row]);
        if own.is_clear() {
            return None;
        }
        next.push(own);
        let mut later = future.clone();
        later.intersect_with(self.later_mask(row));
        Some((next, later))
    }

    fn extend(&mut self, sets: &[FixedBitSet], future: &FixedBitSet) -> Option<Vec<FixedBitSet>> {
        let placed = self.rows.len();
        if placed == self.k {
            return Some(sets.to_vec());
        }
        let remaining_after = self.k - placed - 1;
        for row in 0..self.masks.rows() {
            if self.used.contains(row) {
                continue;
            }
            if !self.counter.tick() {
                self.aborted = true;
                return None;
            }
            let Some((next, later)) = self.step(sets, future, row) else {
                continue;
            };
            // Later columns are distinct members of `later`.
            if later.count_ones(..) < remaining_after {
                continue;
            }
            if remaining_after > 0 && !self.enough_rows(&next, &later, row, remaining_after) {
                continue;
            }
            self.rows.push(row);
            self.used.insert(row);
            let found = self.extend(&next, &later);
            if found.is_some() {
                return found;
            }
            self.rows.pop();
            self.used.set(row, false);
            if self.aborted {
                return None;
            }
        }
        None
    }

    /// At least `needed` unused rows besides `current` could be appended next.
    fn enough_rows(
        &self,
        sets: &[FixedBitSet],
        future: &FixedBitSet,
        current: usize,
        needed: usize,
    ) -> bool {
        let mut count = 0;
        for row in 0..self.masks.rows() {
            if row == current || self.used.contains(row) {
                continue;
            }
            let earlier = self.earlier_mask(row);
            let fits = sets.iter().all(|s| !s.is_disjoint(earlier))
                && !future.is_disjoint(&self.masks.hi[row]);
            if fits {
                count += 1;
                if count >= needed {
                    return true;
                }
            }
        }
        false
    }
}

fn check_cap(m: &EvalMatrix, k_max: usize) -> Result<()> {
    let cap = m.rows().min(m.cols());
    if k_max == 0 || k_max > cap {
        return Err(Error::OutOfRange(format!(
            "k_max = {k_max} must lie in 1..={cap}"
        )));
    }
    Ok(())
}

pub fn order_rank(m: &EvalMatrix, t: &ThresholdPair, k_max: usize) -> Result<OrderRankResult> {
    order_rank_with_budget(m, t, k_max, DEFAULT_NODE_BUDGET)
}

/// Largest `k <= k_max` with a staircase in either orientation.
///
/// Ties between orientations go to the lexicographically smaller
/// `(rows, cols)`, then to row-dominant.
pub fn order_rank_with_budget(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k_max: usize,
    budget: u64,
) -> Result<OrderRankResult> {
    check_cap(m, k_max)?;
    let masks = LevelMasks::new(m, t);
    let mut counter = NodeCounter::new(budget);
    let mut best: Option<StaircaseWitness> = None;
    let mut exhausted = true;

    'lengths: for k in 1..=k_max {
        let mut found_here: Option<StaircaseWitness> = None;
        for orientation in [Orientation::RowDominant, Orientation::ColDominant] {
            match find_staircase(&masks, k, orientation, &mut counter) {
                SearchOutcome::Found { rows, cols } => {
                    let w = StaircaseWitness::new(rows, cols, t.clone(), orientation)?;
                    found_here = Some(match found_here {
                        Some(prev) if (prev.rows(), prev.cols()) <= (w.rows(), w.cols()) => prev,
                        _ => w,
                    });
                }
                SearchOutcome::Absent => {}
                SearchOutcome::BudgetExceeded => {
                    exhausted = false;
                    if found_here.is_some() {
                        best = found_here;
                    }
                    break 'lengths;
                }
            }
        }
        match found_here {
            Some(w) => best = Some(w),
            None => break,
        }
    }

    Ok(OrderRankResult {
        rank: best.as_ref().map_or(0, StaircaseWitness::len),
        witness: best,
        exhausted,
        nodes: counter.used.min(counter.budget),
    })
}

/// Transports a length-`k` staircase of `M` at `(s, r)` to a length-`k-1`
/// row-dominant staircase of `-M` at `(-r, -s)`.
pub fn negation_transport(w: &StaircaseWitness) -> Option<StaircaseWitness> {
    let w = match w.orientation() {
        Orientation::RowDominant => w.clone(),
        Orientation::ColDominant => w.reversed(),
    };
    let k = w.len();
    if k < 2 {
        return None;
    }
    let rows = w.rows()[..k - 1].iter().rev().copied().collect();
    let cols = w.cols()[1..].iter().rev().copied().collect();
    StaircaseWitness::new(
        rows,
        cols,
        w.thresholds().negated(),
        Orientation::RowDominant,
    )
    .ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectEntry {
    pub k: usize,
    /// `None` when no threshold pair of entry values admits a length-`k` staircase.
    pub gap: Option<Rational>,
    pub witness: Option<StaircaseWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectProfile {
    pub entries: Vec<DefectEntry>,
    pub exhausted: bool,
}

impl DefectProfile {
    pub fn gap(&self, k: usize) -> Option<&Rational> {
        self.entries.get(k.checked_sub(1)?)?.gap.as_ref()
    }
}

/// Threshold pairs `(s, r)` with `s < r` drawn from entry values, widest
/// gap first, ties by smaller `s`.
pub fn candidate_pairs(m: &EvalMatrix) -> Vec<ThresholdPair> {
    let values = m.distinct_values();
    let mut pairs = Vec::new();
    for (a, s) in values.iter().enumerate() {
        for r in &values[a + 1..] {
            pairs.push(ThresholdPair::new(s.clone(), r.clone()).expect("sorted values"));
        }
    }
    pairs.sort_by(|x, y| y.gap().cmp(&x.gap()).then_with(|| x.s().cmp(y.s())));
    pairs
}

pub fn defect_profile(m: &EvalMatrix, k_max: usize) -> Result<DefectProfile> {
    defect_profile_with_budget(m, k_max, DEFAULT_NODE_BUDGET)
}

/// Largest gap `r - s` admitting a length-`k` staircase, for each `k`.
pub fn defect_profile_with_budget(
    m: &EvalMatrix,
    k_max: usize,
    budget: u64,
) -> Result<DefectProfile> {
    check_cap(m, k_max)?;
    let pairs = candidate_pairs(m);
    let mut ranks: Vec<Option<OrderRankResult>> = vec![None; pairs.len()];
    let mut exhausted = true;
    let mut entries = Vec::with_capacity(k_max);
    let mut start = 0;

    for k in 1..=k_max {
        let mut chosen = None;
        for idx in start..pairs.len() {
            if ranks[idx].is_none() {
                let r = order_rank_with_budget(m, &pairs[idx], k_max, budget)?;
                exhausted &= r.exhausted;
                ranks[idx] = Some(r);
            }
            if ranks[idx].as_ref().is_some_and(|r| r.rank >= k) {
                chosen = Some(idx);
                break;
            }
        }
        match chosen {
            Some(idx) => {
                start = idx;
                let canonical = order_rank_with_budget(m, &pairs[idx], k, budget)?;
                let witness = match canonical.witness {
                    Some(w) if w.len() == k => w,
                    _ => ranks[idx]
                        .as_ref()
                        .and_then(|r| r.witness.as_ref())
                        .expect("rank >= k has a witness")
                        .truncated(k)?,
                };
                entries.push(DefectEntry {
                    k,
                    gap: Some(pairs[idx].gap()),
                    witness: Some(witness),
                });
            }
            None => {
                start = pairs.len();
                entries.push(DefectEntry {
                    k,
                    gap: None,
                    witness: None,
                });
            }
        }
    }
    Ok(DefectProfile { entries, exhausted })
}
