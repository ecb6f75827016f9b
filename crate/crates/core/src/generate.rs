//! Deterministic matrix families: the linear order (order property), the
//! full shatter family (independence property), seeded random matrices and
//! comonotone step families.

use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::{int, ratio, Rational};
use crate::witness::MAX_SHATTER_ROWS;

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn positive(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(format!("{name} must be >= 1")))
    } else {
        Ok(())
    }
}

/// `L_n`: entry 1 when row >= column, else 0.
pub fn linear_order(n: usize) -> Result<EvalMatrix> {
    positive("n", n)?;
    EvalMatrix::new(
        labels("a", n),
        labels("b", n),
        (0..n)
            .map(|i| (0..n).map(|j| int((i >= j) as i64)).collect())
            .collect(),
        int(1),
    )
}

/// `d` rows and one column per subset: column `c` has row `i` at 0 (low)
/// when bit `i` of `c` is set, and at 1 (high) otherwise.
pub fn shatter(d: usize) -> Result<EvalMatrix> {
    positive("d", d)?;
    if d > 20.min(MAX_SHATTER_ROWS) {
        return Err(Error::InvalidParameter(format!("shatter degree {d} is too large")));
    }
    let cols = 1usize << d;
    EvalMatrix::new(
        labels("f", d),
        (0..cols).map(|c| format!("x{c}")).collect(),
        (0..d)
            .map(|i| (0..cols).map(|c| int((c & (1 << i) == 0) as i64)).collect())
            .collect(),
        int(1),
    )
}

pub fn constant(rows: usize, cols: usize, value: Rational) -> Result<EvalMatrix> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    let bound = if value.is_zero() {
        int(1)
    } else {
        num_traits::Signed::abs(&value)
    };
    EvalMatrix::new(
        labels("a", rows),
        labels("b", cols),
        vec![vec![value; cols]; rows],
        bound,
    )
}

/// Value distribution for [`random`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dist {
    /// `k / q` with `k` uniform in `-q..=q`.
    Grid(u32),
    /// Uniform on `{0, 1}`.
    Binary,
}

impl Default for Dist {
    fn default() -> Self {
        Dist::Grid(4)
    }
}

impl FromStr for Dist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Dist::Binary),
            "uniform" => Ok(Dist::default()),
            _ => {
                let q = s
                    .strip_prefix("grid:")
                    .and_then(|q| q.parse::<u32>().ok())
                    .filter(|&q| q > 0)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "unknown distribution `{s}` (binary, uniform, grid:<q>)"
                        ))
                    })?;
                Ok(Dist::Grid(q))
            }
        }
    }
}

impl std::fmt::Display for Dist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dist::Grid(q) => write!(f, "grid:{q}"),
            Dist::Binary => f.write_str("binary"),
        }
    }
}

pub fn random_value<R: Rng>(rng: &mut R, dist: Dist) -> Rational {
    match dist {
        Dist::Grid(q) => {
            let q = i64::from(q);
            ratio(rng.gen_range(-q..=q), q)
        }
        Dist::Binary => int(rng.gen_range(0..=1)),
    }
}

/// Seed-pinned random matrix with entries in `[-1, 1]`.
pub fn random(rows: usize, cols: usize, seed: u64, dist: Dist) -> Result<EvalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with(rows, cols, &mut rng, dist)
}

pub fn random_with<R: Rng>(rows: usize, cols: usize, rng: &mut R, dist: Dist) -> Result<EvalMatrix> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_value(rng, dist)).collect())
        .collect();
    EvalMatrix::new(labels("a", rows), labels("b", cols), entries, int(1))
}

/// Rows are nondecreasing staircases on a common column order: row `i`
/// climbs from 0 to 1 in `i + 1` equal steps.
pub fn monotone_family(rows: usize, cols: usize) -> Result<EvalMatrix> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    let entries = (0..rows)
        .map(|i| {
            let steps = (i + 1) as i64;
            (0..cols)
                .map(|j| {
                    if cols == 1 {
                        int(0)
                    } else {
                        let level = (j as i64 * steps) / (cols as i64 - 1);
                        ratio(level, steps)
                    }
                })
                .collect()
        })
        .collect();
    EvalMatrix::new(labels("a", rows), labels("b", cols), entries, int(1))
}

/// Random comonotone family: every row is a sorted sample from the grid
/// `{0, 1/q, ..., 1}`, so all rows are nondecreasing in the column index.
pub fn random_monotone_family<R: Rng>(rows: usize, cols: usize, q: u32, rng: &mut R) -> Result<EvalMatrix> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    if q == 0 {
        return Err(Error::InvalidParameter("grid resolution must be >= 1".into()));
    }
    let q = i64::from(q);
    let entries = (0..rows)
        .map(|_| {
            let mut levels: Vec<i64> = (0..cols).map(|_| rng.gen_range(0..=q)).collect();
            levels.sort_unstable();
            levels.into_iter().map(|k| ratio(k, q)).collect()
        })
        .collect();
    EvalMatrix::new(labels("a", rows), labels("b", cols), entries, int(1))
}

/// Random convex weights on a random non-empty subset of `0..n`.
pub fn random_convex_weights<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, Rational)> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let take = rng.gen_range(1..=n.clamp(1, 3));
    let mut chosen: Vec<usize> = idx.into_iter().take(take).collect();
    chosen.sort_unstable();
    let raw: Vec<i64> = chosen.iter().map(|_| rng.gen_range(1..=8)).collect();
    let total: i64 = raw.iter().sum();
    chosen
        .into_iter()
        .zip(raw)
        .map(|(i, w)| (i, ratio(w, total)))
        .collect()
}
