//! Threshold pairs, finite witnesses of the order and independence
//! properties, and their checkers.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::Rational;

/// Thresholds `s < r`: a value is *low* when `<= s` and *high* when `>= r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdPair {
    s: Rational,
    r: Rational,
}

impl ThresholdPair {
    pub fn new(s: Rational, r: Rational) -> Result<Self> {
        if s < r {
            Ok(Self { s, r })
        } else {
            Err(Error::InvalidThresholds {
                s: Box::new(s),
                r: Box::new(r),
            })
        }
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn is_low(&self, value: &Rational) -> bool {
        value <= &self.s
    }

    pub fn is_high(&self, value: &Rational) -> bool {
        value >= &self.r
    }

    pub fn gap(&self) -> Rational {
        &self.r - &self.s
    }

    pub fn midpoint(&self) -> Rational {
        (&self.r + &self.s) / Rational::from_integer(2.into())
    }

    /// The pair `(-r, -s)`, which swaps low and high under negation.
    pub fn negated(&self) -> Self {
        Self {
            s: -&self.r,
            r: -&self.s,
        }
    }

    /// Whether every witness valid at `self` stays valid at `other`.
    pub fn is_relaxed_by(&self, other: &ThresholdPair) -> bool {
        other.s >= self.s && other.r <= self.r
    }
}

/// Which side of the diagonal carries the high values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// High when `p >= q`, low when `p < q`.
    RowDominant,
    /// High when `p <= q`, low when `p > q`.
    ColDominant,
}

impl Orientation {
    pub fn wants_high(self, p: usize, q: usize) -> bool {
        match self {
            Orientation::RowDominant => p >= q,
            Orientation::ColDominant => p <= q,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::RowDominant => Orientation::ColDominant,
            Orientation::ColDominant => Orientation::RowDominant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Low,
    High,
}

/// Outcome of a witness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<V> {
    Valid,
    Violated(V),
}

impl<V> Check<V> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Check::Valid)
    }

    pub fn violation(&self) -> Option<&V> {
        match self {
            Check::Valid => None,
            Check::Violated(v) => Some(v),
        }
    }
}

/// Row/column sequences whose entries form a half graph across `(s, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseWitness {
    rows: Vec<usize>,
    cols: Vec<usize>,
    thresholds: ThresholdPair,
    orientation: Orientation,
}

/// First failing cell of a staircase, positions `p`, `q` are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellViolation {
    pub p: usize,
    pub q: usize,
    pub row: usize,
    pub col: usize,
    pub needed: Level,
}

impl StaircaseWitness {
    pub fn new(
        rows: Vec<usize>,
        cols: Vec<usize>,
        thresholds: ThresholdPair,
        orientation: Orientation,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::MalformedWitness("staircase needs k >= 1".into()));
        }
        if rows.len() != cols.len() {
            return Err(Error::MalformedWitness(format!(
                "staircase has {} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        ensure_distinct(&rows, "staircase rows")?;
        ensure_distinct(&cols, "staircase columns")?;
        Ok(Self {
            rows,
            cols,
            thresholds,
            orientation,
        })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn thresholds(&self) -> &ThresholdPair {
        &self.thresholds
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Same cells, other orientation: both sequences reversed.
    pub fn reversed(&self) -> Self {
        Self {
            rows: self.rows.iter().rev().copied().collect(),
            cols: self.cols.iter().rev().copied().collect(),
            thresholds: self.thresholds.clone(),
            orientation: self.orientation.flipped(),
        }
    }

    /// The witness read on the transposed matrix.
    pub fn transposed(&self) -> Self {
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            thresholds: self.thresholds.clone(),
            orientation: self.orientation.flipped(),
        }
    }

    /// Keeps the first `k` rows and columns, which stays valid.
    pub fn truncated(&self, k: usize) -> Result<Self> {
        let k = k.min(self.len());
        Self::new(
            self.rows[..k].to_vec(),
            self.cols[..k].to_vec(),
            self.thresholds.clone(),
            self.orientation,
        )
    }

    pub fn with_thresholds(&self, thresholds: ThresholdPair) -> Self {
        Self {
            thresholds,
            ..self.clone()
        }
    }

    pub fn map_indices(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: self.rows.iter().map(|&i| rows[i]).collect(),
            cols: self.cols.iter().map(|&j| cols[j]).collect(),
            ..self.clone()
        }
    }
}

fn ensure_distinct(indices: &[usize], what: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(indices.len());
    for &i in indices {
        if !seen.insert(i) {
            return Err(Error::MalformedWitness(format!("{what} repeat index {i}")));
        }
    }
    Ok(())
}

/// Checks every `(p, q)` cell in row-major order.
pub fn check_staircase(m: &EvalMatrix, w: &StaircaseWitness) -> Result<Check<CellViolation>> {
    for &i in &w.rows {
        m.check_row(i)?;
    }
    for &j in &w.cols {
        m.check_col(j)?;
    }
    let t = &w.thresholds;
    for (p, &row) in w.rows.iter().enumerate() {
        for (q, &col) in w.cols.iter().enumerate() {
            let value = m.entry(row, col);
            let needed = if w.orientation.wants_high(p, q) {
                Level::High
            } else {
                Level::Low
            };
            let ok = match needed {
                Level::High => t.is_high(value),
                Level::Low => t.is_low(value),
            };
            if !ok {
                return Ok(Check::Violated(CellViolation {
                    p,
                    q,
                    row,
                    col,
                    needed,
                }));
            }
        }
    }
    Ok(Check::Valid)
}

/// A set of rows with one column per low/high pattern.
///
/// Patterns are bit masks over positions in `rows`: bit `p` set means
/// `rows[p]` must be low at the column, clear means high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterWitness {
    rows: Vec<usize>,
    columns: BTreeMap<u64, usize>,
    thresholds: ThresholdPair,
}

pub const MAX_SHATTER_ROWS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternViolation {
    pub mask: u64,
    pub row: usize,
    pub col: usize,
    pub needed: Level,
}

impl ShatterWitness {
    pub fn new(
        rows: Vec<usize>,
        columns: BTreeMap<u64, usize>,
        thresholds: ThresholdPair,
    ) -> Result<Self> {
        if rows.len() > MAX_SHATTER_ROWS {
            return Err(Error::MalformedWitness(format!(
                "at most {MAX_SHATTER_ROWS} shattered rows are supported"
            )));
        }
        ensure_distinct(&rows, "shattered rows")?;
        let limit = 1u64 << rows.len();
        if let Some((&mask, _)) = columns.iter().find(|(&mask, _)| mask >= limit) {
            return Err(Error::MalformedWitness(format!(
                "pattern mask {mask:#b} exceeds {} rows",
                rows.len()
            )));
        }
        Ok(Self {
            rows,
            columns,
            thresholds,
        })
    }

    /// Builds a witness from a dense table indexed by mask.
    pub fn from_table(rows: Vec<usize>, table: Vec<usize>, thresholds: ThresholdPair) -> Result<Self> {
        if rows.len() > MAX_SHATTER_ROWS || table.len() != 1usize << rows.len() {
            return Err(Error::MalformedWitness(format!(
                "pattern table of {} rows needs {} columns",
                rows.len(),
                1u64.checked_shl(rows.len() as u32).unwrap_or(0)
            )));
        }
        let columns = table
            .into_iter()
            .enumerate()
            .map(|(mask, col)| (mask as u64, col))
            .collect();
        Self::new(rows, columns, thresholds)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn columns(&self) -> &BTreeMap<u64, usize> {
        &self.columns
    }

    pub fn thresholds(&self) -> &ThresholdPair {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_for(&self, mask: u64) -> Option<usize> {
        self.columns.get(&mask).copied()
    }

    /// Mask of the given set of witness rows (by matrix index).
    pub fn mask_of(&self, low_rows: &[usize]) -> Result<u64> {
        low_rows.iter().try_fold(0u64, |mask, row| {
            self.position(*row)
                .map(|p| mask | (1 << p))
                .ok_or(Error::SupportOutsideWitness { row: *row })
        })
    }

    pub fn position(&self, row: usize) -> Option<usize> {
        self.rows.iter().position(|&r| r == row)
    }

    /// Witness for the sub-family at the given positions: hereditary shattering.
    pub fn restrict(&self, positions: &[usize]) -> Result<Self> {
        ensure_distinct(positions, "restricted positions")?;
        if let Some(&p) = positions.iter().find(|&&p| p >= self.rows.len()) {
            return Err(Error::MalformedWitness(format!("position {p} out of range")));
        }
        let rows: Vec<usize> = positions.iter().map(|&p| self.rows[p]).collect();
        let mut columns = BTreeMap::new();
        for sub in 0..(1u64 << positions.len()) {
            // Rows outside the restriction are taken high.
            let mut full = 0u64;
            for (bit, &p) in positions.iter().enumerate() {
                if sub & (1 << bit) != 0 {
                    full |= 1 << p;
                }
            }
            let col = self.column_for(full).ok_or(Error::MissingSubset { mask: full })?;
            columns.insert(sub, col);
        }
        Self::new(rows, columns, self.thresholds.clone())
    }

    /// The chain sub-witness, if every chain subset has a column.
    pub fn chain(&self) -> Option<ChainWitness> {
        let chain = (0..=self.len())
            .map(|t| self.column_for(ChainWitness::chain_mask(t)))
            .collect::<Option<Vec<_>>>()?;
        Some(ChainWitness {
            rows: self.rows.clone(),
            chain,
            thresholds: self.thresholds.clone(),
        })
    }

    pub fn map_indices(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: self.rows.iter().map(|&i| rows[i]).collect(),
            columns: self.columns.iter().map(|(&m, &c)| (m, cols[c])).collect(),
            thresholds: self.thresholds.clone(),
        }
    }
}

/// Checks every subset in increasing mask order, rows in position order.
pub fn check_shatter(m: &EvalMatrix, w: &ShatterWitness) -> Result<Check<PatternViolation>> {
    for &i in &w.rows {
        m.check_row(i)?;
    }
    for &c in w.columns.values() {
        m.check_col(c)?;
    }
    let k = w.rows.len();
    for mask in 0..(1u64 << k) {
        let col = w.column_for(mask).ok_or(Error::MissingSubset { mask })?;
        for (p, &row) in w.rows.iter().enumerate() {
            let needed = if mask & (1 << p) != 0 {
                Level::Low
            } else {
                Level::High
            };
            let value = m.entry(row, col);
            let ok = match needed {
                Level::Low => w.thresholds.is_low(value),
                Level::High => w.thresholds.is_high(value),
            };
            if !ok {
                return Ok(Check::Violated(PatternViolation {
                    mask,
                    row,
                    col,
                    needed,
                }));
            }
        }
    }
    Ok(Check::Valid)
}

/// Only the chain subsets `P_t = {rows at positions < t}`, `t = 0..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub rows: Vec<usize>,
    /// `chain[t]` witnesses `P_t`.
    pub chain: Vec<usize>,
    pub thresholds: ThresholdPair,
}

impl ChainWitness {
    pub fn chain_mask(t: usize) -> u64 {
        (1u64 << t) - 1
    }
}

/// Coefficients on a set of rows; the convex flavour has non-negative
/// weights summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefVector {
    support: Vec<usize>,
    coefficients: Vec<Rational>,
}

impl CoefVector {
    pub fn new(support: Vec<usize>, coefficients: Vec<Rational>) -> Result<Self> {
        if support.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                what: "coefficients".into(),
                expected: support.len(),
                found: coefficients.len(),
            });
        }
        ensure_distinct(&support, "coefficient support")?;
        Ok(Self {
            support,
            coefficients,
        })
    }

    pub fn convex(support: Vec<usize>, coefficients: Vec<Rational>) -> Result<Self> {
        let v = Self::new(support, coefficients)?;
        if !v.is_convex() {
            return Err(Error::InvalidParameter(
                "convex coefficients must be >= 0 and sum to 1".into(),
            ));
        }
        Ok(v)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.support.iter().copied().zip(self.coefficients.iter())
    }

    pub fn is_convex(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
            && self.coefficients.iter().sum::<Rational>().is_one()
    }

    pub fn l1_norm(&self) -> Rational {
        self.coefficients.iter().map(Signed::abs).sum()
    }

    /// `sum_i c_i * row_i` over all columns.
    pub fn combine(&self, m: &EvalMatrix) -> Result<Vec<Rational>> {
        for &i in &self.support {
            m.check_row(i)?;
        }
        Ok((0..m.cols())
            .map(|j| {
                self.iter()
                    .map(|(i, c)| c * m.entry(i, j))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect())
    }
}
