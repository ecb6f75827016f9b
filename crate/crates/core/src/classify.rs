//! Finite-scale verdicts: stable and NIP at declared cutoffs, and the
//! Banach-space labels they correspond to.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::independence::{independence_rank_with_budget, IndependenceRankResult};
use crate::matrix::EvalMatrix;
use crate::order::{order_rank_with_budget, OrderRankResult, DEFAULT_NODE_BUDGET};
use crate::rational::{int, Rational};
use crate::witness::{
    check_shatter, check_staircase, ShatterWitness, StaircaseWitness, ThresholdPair,
    MAX_SHATTER_ROWS,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationParams {
    /// Pairs to scan; `None` scans every entry-value pair with gap `>= gap_min`.
    pub thresholds: Option<Vec<ThresholdPair>>,
    /// Stable at scale means every order rank is below this.
    pub k_stable: usize,
    /// NIP at scale means every independence rank is below this.
    pub d_nip: usize,
    /// Defaults to a quarter of the entry range.
    pub gap_min: Option<Rational>,
    /// Order-rank search cap; defaults to `min(rows, cols)`.
    pub k_max: Option<usize>,
    /// Independence-rank search cap; defaults to `min(rows, log2 cols)`.
    pub d_max: Option<usize>,
    pub budget: u64,
}

impl Default for ClassificationParams {
    fn default() -> Self {
        Self {
            thresholds: None,
            k_stable: 4,
            d_nip: 4,
            gap_min: None,
            k_max: None,
            d_max: None,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl ClassificationParams {
    pub fn with_cutoffs(k_stable: usize, d_nip: usize) -> Self {
        Self {
            k_stable,
            d_nip,
            ..Self::default()
        }
    }

    /// A shattered set of size `d` yields a staircase of size `d`, so
    /// stability at `k_stable` only implies NIP at `d_nip >= k_stable`.
    pub fn validate(&self) -> Result<()> {
        if self.k_stable == 0 || self.d_nip == 0 {
            return Err(Error::InvalidParameter("cutoffs must be >= 1".into()));
        }
        if self.d_nip < self.k_stable {
            return Err(Error::InvalidParameter(format!(
                "d_nip = {} must be at least k_stable = {}",
                self.d_nip, self.k_stable
            )));
        }
        if let Some(g) = &self.gap_min {
            if !g.is_positive() {
                return Err(Error::InvalidParameter("gap_min must be positive".into()));
            }
        }
        if self.k_max == Some(0) {
            return Err(Error::InvalidParameter("k_max must be >= 1".into()));
        }
        Ok(())
    }
}

/// Ranks at one threshold pair, each the larger of the values for `M` at
/// `(s, r)` and for `-M` at `(-r, -s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub thresholds: ThresholdPair,
    pub order_rank: usize,
    pub order_exhausted: bool,
    /// Witness for `order_rank`, on `-M` when `order_negated`.
    pub order_witness: Option<StaircaseWitness>,
    pub order_negated: bool,
    /// Whether `order_rank` is the true maximum rather than a capped value.
    pub order_certified: bool,
    pub independence_rank: usize,
    pub independence_exhausted: bool,
    pub independence_witness: Option<ShatterWitness>,
    pub independence_negated: bool,
    pub independence_certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub stable_at_scale: bool,
    pub nip_at_scale: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BanachLabels {
    pub reflexive_like: bool,
    pub rosenthal_like: bool,
    pub wsc_like: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub pairs: Vec<PairReport>,
    pub verdicts: Verdicts,
    pub labels: BanachLabels,
    pub gap_min: Rational,
    pub k_stable: usize,
    pub d_nip: usize,
    pub k_max: usize,
    pub d_max: usize,
    /// Some search stopped on its budget.
    pub budget_tripped: bool,
}

impl Report {
    pub fn max_order_rank(&self) -> usize {
        self.pairs.iter().map(|p| p.order_rank).max().unwrap_or(0)
    }

    pub fn max_independence_rank(&self) -> usize {
        self.pairs.iter().map(|p| p.independence_rank).max().unwrap_or(0)
    }

    /// Whether every verdict is settled, i.e. no search stopped early.
    pub fn is_conclusive(&self) -> bool {
        !self.budget_tripped
    }
}

impl BanachLabels {
    /// Reflexive with stable, Rosenthal with NIP; a weakly sequentially
    /// complete space is reflexive or contains l1, i.e. stable or not NIP.
    pub fn from_verdicts(v: Verdicts) -> Self {
        Self {
            reflexive_like: v.stable_at_scale,
            rosenthal_like: v.nip_at_scale,
            wsc_like: v.stable_at_scale || !v.nip_at_scale,
        }
    }
}

/// Candidate thresholds: pairs of entry values at least `gap_min` apart.
pub fn scan_pairs(m: &EvalMatrix, gap_min: &Rational) -> Vec<ThresholdPair> {
    let values = m.distinct_values();
    let mut out = Vec::new();
    for (a, s) in values.iter().enumerate() {
        for r in &values[a + 1..] {
            if &(r - s) >= gap_min {
                out.push(ThresholdPair::new(s.clone(), r.clone()).expect("sorted"));
            }
        }
    }
    out
}

pub fn default_gap_min(m: &EvalMatrix) -> Rational {
    let values = m.distinct_values();
    match (values.first(), values.last()) {
        (Some(lo), Some(hi)) if lo < hi => (hi - lo) / int(4),
        _ => int(1),
    }
}

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

fn signed_order(m: &EvalMatrix, neg: &EvalMatrix, t: &ThresholdPair, cap: usize, budget: u64) -> Result<(OrderRankResult, bool)> {
    let pos = order_rank_with_budget(m, t, cap, budget)?;
    let negr = order_rank_with_budget(neg, &t.negated(), cap, budget)?;
    let exhausted = pos.exhausted && negr.exhausted;
    Ok(if negr.rank > pos.rank {
        (OrderRankResult { exhausted, ..negr }, true)
    } else {
        (OrderRankResult { exhausted, ..pos }, false)
    })
}

fn signed_independence(
    m: &EvalMatrix,
    neg: &EvalMatrix,
    t: &ThresholdPair,
    cap: usize,
    budget: u64,
) -> Result<(IndependenceRankResult, bool)> {
    if cap == 0 {
        return Ok((
            IndependenceRankResult {
                rank: 0,
                witness: None,
                exhausted: true,
            },
            false,
        ));
    }
    let pos = independence_rank_with_budget(m, t, cap, budget)?;
    let negr = independence_rank_with_budget(neg, &t.negated(), cap, budget)?;
    let exhausted = pos.exhausted && negr.exhausted;
    Ok(if negr.rank > pos.rank {
        (IndependenceRankResult { exhausted, ..negr }, true)
    } else {
        (IndependenceRankResult { exhausted, ..pos }, false)
    })
}

pub fn classify(m: &EvalMatrix, p: &ClassificationParams) -> Result<Report> {
    p.validate()?;
    let order_natural = m.rows().min(m.cols());
    let indep_natural = m.rows().min(floor_log2(m.cols())).min(MAX_SHATTER_ROWS);
    let k_max = p.k_max.unwrap_or(order_natural).min(order_natural);
    let d_max = p.d_max.unwrap_or(indep_natural).min(indep_natural);
    let gap_min = p.gap_min.clone().unwrap_or_else(|| default_gap_min(m));
    let thresholds = match &p.thresholds {
        Some(t) => t.clone(),
        None => scan_pairs(m, &gap_min),
    };
    let neg = m.negate();

    let mut pairs = Vec::with_capacity(thresholds.len());
    for t in thresholds {
        let (ord, order_negated) = signed_order(m, &neg, &t, k_max, p.budget)?;
        let (ind, independence_negated) = signed_independence(m, &neg, &t, d_max, p.budget)?;
        if let Some(w) = &ord.witness {
            let target = if order_negated { &neg } else { m };
            if !check_staircase(target, w)?.is_valid() {
                return Err(Error::InvalidWitness("staircase failed re-verification".into()));
            }
        }
        if let Some(w) = &ind.witness {
            let target = if independence_negated { &neg } else { m };
            if !check_shatter(target, w)?.is_valid() {
                return Err(Error::InvalidWitness("shatter witness failed re-verification".into()));
            }
        }
        pairs.push(PairReport {
            order_certified: ord.exhausted && (ord.rank < k_max || k_max == order_natural),
            independence_certified: ind.exhausted && (ind.rank < d_max || d_max == indep_natural),
            thresholds: t,
            order_rank: ord.rank,
            order_exhausted: ord.exhausted,
            order_witness: ord.witness,
            order_negated,
            independence_rank: ind.rank,
            independence_exhausted: ind.exhausted,
            independence_witness: ind.witness,
            independence_negated,
        });
    }

    let below = |rank: usize, certified: bool, cutoff: usize| certified && rank < cutoff;
    let stable = pairs
        .iter()
        .all(|q| below(q.order_rank, q.order_certified, p.k_stable));
    let nip = pairs.iter().all(|q| {
        below(q.independence_rank, q.independence_certified, p.d_nip)
            || below(q.order_rank, q.order_certified, p.d_nip)
    });
    let verdicts = Verdicts {
        stable_at_scale: stable,
        nip_at_scale: nip,
    };
    let budget_tripped = pairs
        .iter()
        .any(|q| !q.order_exhausted || !q.independence_exhausted);
    Ok(Report {
        labels: BanachLabels::from_verdicts(verdicts),
        verdicts,
        pairs,
        gap_min,
        k_stable: p.k_stable,
        d_nip: p.d_nip,
        k_max,
        d_max,
        budget_tripped,
    })
}
