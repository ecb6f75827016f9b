//! Independence (shattering) rank, the chain construction turning a
//! shattered family into a staircase, and the l1 lower-bound certificate.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::order::DEFAULT_NODE_BUDGET;
use crate::rational::Rational;
use crate::witness::{
    check_shatter, check_staircase, ChainWitness, Check, CoefVector, Level, Orientation,
    ShatterWitness, StaircaseWitness, ThresholdPair, MAX_SHATTER_ROWS,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceRankResult {
    pub rank: usize,
    pub witness: Option<ShatterWitness>,
    pub exhausted: bool,
}

pub fn independence_rank(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k_max: usize,
) -> Result<IndependenceRankResult> {
    independence_rank_with_budget(m, t, k_max, DEFAULT_NODE_BUDGET)
}

/// Largest `k <= k_max` such that some `k` rows are shattered at `t`.
///
/// Row sets are explored level by level; a `k`-set is only examined when
/// all of its `(k-1)`-subsets are shattered, and is rejected as soon as a
/// pattern is found with no realizing column. The budget counts cell reads.
pub fn independence_rank_with_budget(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k_max: usize,
    budget: u64,
) -> Result<IndependenceRankResult> {
    if k_max == 0 || k_max > m.rows() || k_max > MAX_SHATTER_ROWS {
        return Err(Error::OutOfRange(format!(
            "k_max = {k_max} must lie in 1..={}",
            m.rows().min(MAX_SHATTER_ROWS)
        )));
    }
    let levels: Vec<Vec<Option<Level>>> = m
        .entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    if t.is_low(v) {
                        Some(Level::Low)
                    } else if t.is_high(v) {
                        Some(Level::High)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let mut spent = 0u64;
    let mut exhausted = true;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];

    for k in 1..=k_max {
        if m.cols() < (1usize << k) {
            break;
        }
        let known: HashSet<&[usize]> = frontier.iter().map(Vec::as_slice).collect();
        let mut next: Vec<Vec<usize>> = Vec::new();
        let mut level_best: Option<(Vec<usize>, Vec<usize>)> = None;
        'sets: for base in &frontier {
            let start = base.last().map_or(0, |&x| x + 1);
            for extra in start..m.rows() {
                let mut set = base.clone();
                set.push(extra);
                if k > 1 && !all_faces_known(&set, &known) {
                    continue;
                }
                spent += (m.cols() * k) as u64;
                if spent > budget {
                    exhausted = false;
                    break 'sets;
                }
                if let Some(table) = pattern_table(&levels, &set) {
                    if level_best.is_none() {
                        level_best = Some((set.clone(), table));
                    }
                    next.push(set);
                }
            }
        }
        if let Some(found) = level_best {
            best = Some(found);
        }
        if !exhausted || next.is_empty() {
            break;
        }
        frontier = next;
    }

    let witness = match best {
        Some((rows, table)) => Some(ShatterWitness::from_table(rows, table, t.clone())?),
        None => None,
    };
    Ok(IndependenceRankResult {
        rank: witness.as_ref().map_or(0, ShatterWitness::len),
        witness,
        exhausted,
    })
}

fn all_faces_known(set: &[usize], known: &HashSet<&[usize]>) -> bool {
    (0..set.len()).all(|skip| {
        let face: Vec<usize> = set
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect();
        known.contains(face.as_slice())
    })
}

/// Least realizing column per pattern mask, if every pattern is realized.
fn pattern_table(levels: &[Vec<Option<Level>>], set: &[usize]) -> Option<Vec<usize>> {
    let patterns = 1usize << set.len();
    let cols = levels[set[0]].len();
    let mut table = vec![usize::MAX; patterns];
    let mut covered = FixedBitSet::with_capacity(patterns);
    'cols: for col in 0..cols {
        let mut mask = 0usize;
        for (p, &row) in set.iter().enumerate() {
            match levels[row][col] {
                Some(Level::Low) => mask |= 1 << p,
                Some(Level::High) => {}
                None => continue 'cols,
            }
        }
        if !covered.put(mask) {
            table[mask] = col;
            if covered.count_ones(..) == patterns {
                return Some(table);
            }
        }
    }
    None
}

/// Checks that `w.chain[t]` realizes `P_t`: positions `< t` low, the rest high.
pub fn check_chain(m: &EvalMatrix, w: &ChainWitness) -> Result<()> {
    let k = w.rows.len();
    if k == 0 || w.chain.len() != k + 1 {
        return Err(Error::MalformedWitness(format!(
            "chain over {k} rows needs {} columns, got {}",
            k + 1,
            w.chain.len()
        )));
    }
    for &i in &w.rows {
        m.check_row(i)?;
    }
    for (t, &col) in w.chain.iter().enumerate() {
        m.check_col(col)?;
        for (p, &row) in w.rows.iter().enumerate() {
            let v = m.entry(row, col);
            let ok = if p < t {
                w.thresholds.is_low(v)
            } else {
                w.thresholds.is_high(v)
            };
            if !ok {
                return Err(Error::InvalidWitness(format!(
                    "chain column {col} (subset P_{t}) fails at row {row}"
                )));
            }
        }
    }
    Ok(())
}

/// A shattered family of size `k` yields a row-dominant staircase of
/// length `k` on the chain columns witnessing `P_0, ..., P_{k-1}`.
pub fn ip_to_op(m: &EvalMatrix, w: &ShatterWitness) -> Result<StaircaseWitness> {
    if let Check::Violated(v) = check_shatter(m, w)? {
        return Err(Error::InvalidWitness(format!(
            "pattern {:#b} fails at row {} column {}",
            v.mask, v.row, v.col
        )));
    }
    let chain = w
        .chain()
        .ok_or_else(|| Error::InvalidWitness("missing chain subsets".into()))?;
    ip_to_op_chain(m, &chain)
}

/// [`ip_to_op`] from the relaxed chain-only witness.
pub fn ip_to_op_chain(m: &EvalMatrix, w: &ChainWitness) -> Result<StaircaseWitness> {
    check_chain(m, w)?;
    let k = w.rows.len();
    // f_p(x_{P_q}) is low iff p < q and high iff p >= q.
    let staircase = StaircaseWitness::new(
        w.rows.clone(),
        w.chain[..k].to_vec(),
        w.thresholds.clone(),
        Orientation::RowDominant,
    )?;
    if let Check::Violated(v) = check_staircase(m, &staircase)? {
        return Err(Error::CertificateFailure(format!(
            "chain staircase fails at cell ({}, {})",
            v.p, v.q
        )));
    }
    Ok(staircase)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L1Certificate {
    /// `((r - s) / 2) * sum |c_i|`.
    pub bound: Rational,
    /// Best centred value `|sum c_i (f_i(x) - (r + s) / 2)|` over the two sign columns.
    pub achieved: Rational,
    pub holds: bool,
    /// Columns witnessing `{i : c_i < 0}` and its complement.
    pub columns: (usize, usize),
}

/// Lower bound `||sum c_i f_i||_inf >= ((r - s)/2) sum |c_i|` on a shattered family.
pub fn l1_lower_cert(m: &EvalMatrix, w: &ShatterWitness, c: &CoefVector) -> Result<L1Certificate> {
    if let Check::Violated(v) = check_shatter(m, w)? {
        return Err(Error::InvalidWitness(format!(
            "pattern {:#b} fails at row {}",
            v.mask, v.row
        )));
    }
    let negative: Vec<usize> = c
        .iter()
        .filter(|(_, coef)| coef.is_negative())
        .map(|(i, _)| i)
        .collect();
    for &i in c.support() {
        if w.position(i).is_none() {
            return Err(Error::SupportOutsideWitness { row: i });
        }
    }
    let neg_mask = w.mask_of(&negative)?;
    let full = (1u64 << w.len()) - 1;
    let col_neg = w.column_for(neg_mask).ok_or(Error::MissingSubset { mask: neg_mask })?;
    let pos_mask = full ^ neg_mask;
    let col_pos = w.column_for(pos_mask).ok_or(Error::MissingSubset { mask: pos_mask })?;

    let t = w.thresholds();
    let mid = t.midpoint();
    let centred = |col: usize| -> Rational {
        c.iter()
            .map(|(i, coef)| coef * (m.entry(i, col) - &mid))
            .fold(Rational::zero(), |a, b| a + b)
            .abs()
    };
    let bound = t.gap() / Rational::from_integer(2.into()) * c.l1_norm();
    let achieved = centred(col_neg).max(centred(col_pos));
    Ok(L1Certificate {
        holds: achieved >= bound,
        bound,
        achieved,
        columns: (col_neg, col_pos),
    })
}

/// Per-sign independence ranks: of `M` at `t` and of `-M` at `(-r, -s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedIndependence {
    pub positive: IndependenceRankResult,
    pub negative: IndependenceRankResult,
}

impl SignedIndependence {
    pub fn rank(&self) -> usize {
        self.positive.rank.max(self.negative.rank)
    }

    pub fn exhausted(&self) -> bool {
        self.positive.exhausted && self.negative.exhausted
    }

    /// The witness realizing [`SignedIndependence::rank`], with a flag set
    /// when it comes from `-M`.
    pub fn best(&self) -> (Option<&ShatterWitness>, bool) {
        if self.negative.rank > self.positive.rank {
            (self.negative.witness.as_ref(), true)
        } else {
            (self.positive.witness.as_ref(), false)
        }
    }
}

pub fn signed_independence_rank(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k_max: usize,
    budget: u64,
) -> Result<SignedIndependence> {
    Ok(SignedIndependence {
        positive: independence_rank_with_budget(m, t, k_max, budget)?,
        negative: independence_rank_with_budget(&m.negate(), &t.negated(), k_max, budget)?,
    })
}
