//! Finite extraction: homogeneous sets for 2-colorings of pairs, grid
//! pigeonhole for eps-Cauchy row subsequences, and the finite Rosenthal
//! dichotomy combining the latter with the shattering search.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::independence::independence_rank_with_budget;
use crate::matrix::EvalMatrix;
use crate::order::DEFAULT_NODE_BUDGET;
use crate::rational::Rational;
use crate::witness::{check_shatter, ShatterWitness, ThresholdPair, MAX_SHATTER_ROWS};

/// A 2-coloring of the pairs of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    /// Colors of `{i, j}`, `i < j`, in lexicographic order.
    colors: Vec<bool>,
}

impl PairColoring {
    /// `colors` lists `{1,2}, {1,3}, ..., {1,n}, {2,3}, ...`; each is 0 or 1.
    pub fn new(n: usize, colors: Vec<u8>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if colors.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "pair colors".into(),
                expected,
                found: colors.len(),
            });
        }
        if let Some(c) = colors.iter().find(|&&c| c > 1) {
            return Err(Error::InvalidParameter(format!("color {c} is not 0 or 1")));
        }
        Ok(Self {
            n,
            colors: colors.into_iter().map(|c| c == 1).collect(),
        })
    }

    /// Colors `{i, j}` (1-based, `i < j`) by `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                colors.push(f(i, j));
            }
        }
        Self::new(n, colors)
    }

    /// Bit `k` of `mask` colors the `k`-th pair in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        if pairs > 64 {
            return Err(Error::InvalidParameter("mask codes at most 64 pairs".into()));
        }
        Self::new(n, (0..pairs).map(|k| ((mask >> k) & 1) as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Color of `{i, j}` for distinct 1-based `i`, `j`.
    pub fn color(&self, i: usize, j: usize) -> u8 {
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        assert!(a != b && b < self.n, "pair out of range");
        let before = a * (2 * self.n - a - 1) / 2;
        self.colors[before + (b - a - 1)] as u8
    }

    pub fn is_homogeneous(&self, set: &[usize], color: u8) -> bool {
        set.iter().enumerate().all(|(k, &i)| {
            set[k + 1..]
                .iter()
                .all(|&j| i != j && self.color(i, j) == color)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyOutcome {
    /// `subset` is sorted, 1-based and has every pair colored `color`.
    Homogeneous { color: u8, subset: Vec<usize> },
    /// The largest homogeneous set found; `exhausted` means it is maximum.
    Failure {
        color: u8,
        largest: Vec<usize>,
        exhausted: bool,
    },
}

impl RamseyOutcome {
    pub fn subset(&self) -> Option<&[usize]> {
        match self {
            RamseyOutcome::Homogeneous { subset, .. } => Some(subset),
            RamseyOutcome::Failure { .. } => None,
        }
    }
}

pub fn ramsey_pairs(c: &PairColoring, m: usize) -> Result<RamseyOutcome> {
    ramsey_pairs_with_budget(c, m, DEFAULT_NODE_BUDGET)
}

/// Homogeneous set of size `m`: first by majority splitting, which is
/// guaranteed once `n >= 2^(2m-2)`, then by exact clique search.
pub fn ramsey_pairs_with_budget(c: &PairColoring, m: usize, budget: u64) -> Result<RamseyOutcome> {
    if m < 2 {
        return Err(Error::InvalidParameter("target size must be >= 2".into()));
    }
    let (color, greedy) = majority_split(c);
    if greedy.len() >= m {
        return Ok(homogeneous(c, color, greedy[..m].to_vec()));
    }

    let mut best = (color, greedy);
    let mut exhausted = true;
    for color in [0u8, 1] {
        let mut search = CliqueSearch::new(c, color, m, budget);
        search.run();
        exhausted &= search.exhausted;
        if search.best.len() >= m {
            return Ok(homogeneous(c, color, search.best));
        }
        if search.best.len() > best.1.len() {
            best = (color, search.best);
        }
    }
    if c.n == 1 {
        best.1 = vec![1];
    }
    assert!(c.is_homogeneous(&best.1, best.0));
    Ok(RamseyOutcome::Failure {
        color: best.0,
        largest: best.1,
        exhausted,
    })
}

fn homogeneous(c: &PairColoring, color: u8, mut subset: Vec<usize>) -> RamseyOutcome {
    subset.sort_unstable();
    assert!(c.is_homogeneous(&subset, color), "extracted set is not homogeneous");
    RamseyOutcome::Homogeneous { color, subset }
}

/// Pivot `v`, keep the larger color class of `v`'s neighbours, repeat.
/// Pivots sharing a split color form a homogeneous set.
fn majority_split(c: &PairColoring) -> (u8, Vec<usize>) {
    let mut pool: Vec<usize> = (1..=c.n).collect();
    let mut by_color: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    while let Some((&v, rest)) = pool.split_first() {
        if rest.is_empty() {
            // the last vertex extends either class
            by_color[0].push(v);
            by_color[1].push(v);
            break;
        }
        let (ones, zeros): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&u| c.color(v, u) == 1);
        let (color, next) = if ones.len() > zeros.len() { (1, ones) } else { (0, zeros) };
        by_color[color].push(v);
        pool = next;
    }
    if by_color[1].len() > by_color[0].len() {
        (1, std::mem::take(&mut by_color[1]))
    } else {
        (0, std::mem::take(&mut by_color[0]))
    }
}

struct CliqueSearch {
    adj: Vec<FixedBitSet>,
    target: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CliqueSearch {
    fn new(c: &PairColoring, color: u8, target: usize, budget: u64) -> Self {
        let adj = (1..=c.n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(c.n);
                for j in 1..=c.n {
                    if i != j && c.color(i, j) == color {
                        s.insert(j - 1);
                    }
                }
                s
            })
            .collect();
        Self {
            adj,
            target,
            best: Vec::new(),
            nodes: 0,
            budget,
            exhausted: true,
        }
    }

    fn run(&mut self) {
        let mut all = FixedBitSet::with_capacity(self.adj.len());
        all.insert_range(..);
        self.extend(&mut Vec::new(), all);
    }

    /// Extends `current` by vertices of `cand` larger than its last one.
    fn extend(&mut self, current: &mut Vec<usize>, cand: FixedBitSet) {
        if current.len() > self.best.len() {
            self.best = current.iter().map(|v| v + 1).collect();
        }
        if self.best.len() >= self.target {
            return;
        }
        if current.len() + cand.count_ones(..) <= self.best.len() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = false;
            return;
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            next.set_range(..v + 1, false);
            current.push(v);
            self.extend(current, next);
            current.pop();
            if self.best.len() >= self.target || !self.exhausted {
                return;
            }
        }
    }
}

/// Rows whose values are pairwise within `eps` at every column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchySubsequence {
    /// Strictly increasing row indices.
    pub indices: Vec<usize>,
    pub eps: Rational,
    /// Grid cells per coordinate, `ceil(2C / eps)`.
    pub cells_per_axis: BigInt,
}

impl CauchySubsequence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Largest bucket of the eps-grid on `[-C, C]^cols`; cells are half-open
/// except the top one, which is closed at `C`.
///
/// Its length is at least `rows / ceil(2C/eps)^cols`.
pub fn cauchy_subsequence(m: &EvalMatrix, eps: &Rational) -> Result<CauchySubsequence> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let c = m.bound();
    let cells = (Rational::from_integer(2.into()) * c / eps).ceil().to_integer();
    let top: BigInt = &cells - 1;
    let mut buckets: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for i in 0..m.rows() {
        let key = m
            .row(i)
            .iter()
            .map(|x| ((x + c) / eps).floor().to_integer().min(top.clone()))
            .collect();
        buckets.entry(key).or_default().push(i);
    }
    let indices = buckets
        .into_values()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .unwrap_or_default();
    let out = CauchySubsequence {
        indices,
        eps: eps.clone(),
        cells_per_axis: cells,
    };
    assert!(is_eps_cauchy(m, &out.indices, eps), "bucket exceeds eps");
    Ok(out)
}

/// Whether the rows are pairwise within `eps` at every column.
pub fn is_eps_cauchy(m: &EvalMatrix, rows: &[usize], eps: &Rational) -> bool {
    rows.iter().enumerate().all(|(k, &a)| {
        rows[k + 1..].iter().all(|&b| {
            m.row(a)
                .iter()
                .zip(m.row(b))
                .all(|(x, y)| &(x - y).abs() <= eps)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DichotomyResult {
    CauchyBranch(CauchySubsequence),
    IndependentBranch(ShatterWitness),
    Inconclusive {
        /// Length of the best eps-Cauchy bucket.
        cauchy_len: usize,
        /// Largest shattered row set found.
        independence_rank: usize,
        /// Whether the shattering search finished within budget.
        exhausted: bool,
    },
}

/// Tries for `want_cauchy` eps-close rows, then for `want_indep` rows
/// shattered at `t`.
pub fn rosenthal_dichotomy(
    m: &EvalMatrix,
    t: &ThresholdPair,
    eps: &Rational,
    want_cauchy: usize,
    want_indep: usize,
    budget: u64,
) -> Result<DichotomyResult> {
    if want_cauchy == 0 || want_indep == 0 {
        return Err(Error::InvalidParameter("target lengths must be >= 1".into()));
    }
    let cauchy = cauchy_subsequence(m, eps)?;
    if cauchy.len() >= want_cauchy {
        return Ok(DichotomyResult::CauchyBranch(cauchy));
    }
    let cap = want_indep.min(m.rows()).min(MAX_SHATTER_ROWS);
    let res = independence_rank_with_budget(m, t, cap, budget)?;
    if res.rank >= want_indep {
        let w = res.witness.expect("positive rank carries a witness");
        if !check_shatter(m, &w)?.is_valid() {
            return Err(Error::InvalidWitness("shatter witness failed re-verification".into()));
        }
        return Ok(DichotomyResult::IndependentBranch(w));
    }
    Ok(DichotomyResult::Inconclusive {
        cauchy_len: cauchy.len(),
        independence_rank: res.rank,
        exhausted: res.exhausted,
    })
}
