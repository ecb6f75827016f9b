//! Uniform approximation of a target column function through finitely many
//! feature rows and a monotone lookup table.
//!
//! Features are picked adversarially: while two columns look alike to the
//! chosen features (within `eps`) but the target separates them by more
//! than `3 eps`, a new feature row is added that tells them apart. The
//! approximant is then `h(F(x))` with `g(u) = max{target(x) : F(x) <= u}`
//! and `h(u) = g(u + eps)`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::{int, Rational};

/// How a feature row was admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    /// Within `eps` of the target at every recorded column.
    CloseToTarget,
    /// Separates every recorded pair by more than `3 eps`.
    SeparatesAll,
    /// Separates the newest pair by more than `eps`.
    SeparatesNewest,
}

/// Recorded pairs `(x_n, y_n)` and the feature chosen after each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transcript {
    pub pairs: Vec<(usize, usize)>,
    pub features: Vec<usize>,
    pub admissions: Vec<Admission>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    NoAdmissibleRow,
    CapReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureFailure {
    pub transcript: Transcript,
    pub reason: FailureReason,
    /// `separation[n][i] = f_i(x_n) - f_i(y_n)` over all candidate rows `i`
    /// (in `A` order), so each line shows which rows split pair `n`.
    pub separation: Vec<Vec<Rational>>,
    /// `target(x_n) - target(y_n)`.
    pub target_gaps: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelectOptions {
    /// Iterations before giving up; defaults to the number of ordered
    /// column pairs.
    pub cap: Option<usize>,
    /// Accept a row that only separates the newest pair by more than `eps`
    /// when no row passes the two stricter tests. A target averaging
    /// several candidate rows usually needs this: no single row has to
    /// split every recorded pair, but some row in its support splits each.
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    Selected(Transcript),
    Failed(FeatureFailure),
}

fn check_inputs(m: &EvalMatrix, a_rows: &[usize], target: &[Rational], eps: &Rational) -> Result<()> {
    if target.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            what: "target".into(),
            expected: m.cols(),
            found: target.len(),
        });
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if a_rows.is_empty() {
        return Err(Error::InvalidParameter("candidate rows must be non-empty".into()));
    }
    for &i in a_rows {
        m.check_row(i)?;
    }
    Ok(())
}

fn close(m: &EvalMatrix, features: &[usize], x: usize, y: usize, eps: &Rational) -> bool {
    features
        .iter()
        .all(|&f| &(m.entry(f, x) - m.entry(f, y)).abs() <= eps)
}

/// Least pair `x < y` that the features cannot tell apart but the target can.
pub fn violating_pair(
    m: &EvalMatrix,
    features: &[usize],
    target: &[Rational],
    eps: &Rational,
) -> Option<(usize, usize)> {
    let three = eps * int(3);
    (0..m.cols())
        .flat_map(|x| (x + 1..m.cols()).map(move |y| (x, y)))
        .find(|&(x, y)| (&target[x] - &target[y]).abs() > three && close(m, features, x, y, eps))
}

pub fn select_features(
    m: &EvalMatrix,
    a_rows: &[usize],
    target: &[Rational],
    eps: &Rational,
    opts: SelectOptions,
) -> Result<Selection> {
    check_inputs(m, a_rows, target, eps)?;
    let cap = opts.cap.unwrap_or(m.cols() * m.cols().saturating_sub(1));
    let three = eps * int(3);
    let mut t = Transcript::default();
    let fail = |t: Transcript, reason| {
        let separation = t
            .pairs
            .iter()
            .map(|&(x, y)| a_rows.iter().map(|&i| m.entry(i, x) - m.entry(i, y)).collect())
            .collect();
        let target_gaps = t.pairs.iter().map(|&(x, y)| &target[x] - &target[y]).collect();
        Ok(Selection::Failed(FeatureFailure {
            transcript: t,
            reason,
            separation,
            target_gaps,
        }))
    };

    while let Some((x, y)) = violating_pair(m, &t.features, target, eps) {
        if t.pairs.len() >= cap {
            return fail(t, FailureReason::CapReached);
        }
        t.pairs.push((x, y));
        let near_target = |i: usize| {
            t.pairs.iter().all(|&(a, b)| {
                &(m.entry(i, a) - &target[a]).abs() <= eps && &(m.entry(i, b) - &target[b]).abs() <= eps
            })
        };
        let splits_all = |i: usize| {
            t.pairs
                .iter()
                .all(|&(a, b)| (m.entry(i, a) - m.entry(i, b)).abs() > three)
        };
        let splits_newest = |i: usize| &(m.entry(i, x) - m.entry(i, y)).abs() > eps;
        let pick = a_rows
            .iter()
            .find(|&&i| near_target(i))
            .map(|&i| (i, Admission::CloseToTarget))
            .or_else(|| a_rows.iter().find(|&&i| splits_all(i)).map(|&i| (i, Admission::SeparatesAll)))
            .or_else(|| {
                opts.fallback
                    .then(|| a_rows.iter().find(|&&i| splits_newest(i)))
                    .flatten()
                    .map(|&i| (i, Admission::SeparatesNewest))
            });
        match pick {
            Some((i, how)) => {
                t.features.push(i);
                t.admissions.push(how);
            }
            None => return fail(t, FailureReason::NoAdmissibleRow),
        }
    }
    Ok(Selection::Selected(t))
}

/// `h` tabulated on the observed feature vectors `F(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneTable {
    pub features: Vec<usize>,
    pub eps: Rational,
    /// Value of `g` on an empty set.
    pub floor: Rational,
    /// Distinct observed vectors, sorted.
    pub keys: Vec<Vec<Rational>>,
    pub g: Vec<Rational>,
    pub h: Vec<Rational>,
    /// `F(x)` for every column `x`.
    columns: Vec<Vec<Rational>>,
    target: Vec<Rational>,
}

impl MonotoneTable {
    /// `g(u) = max{target(x) : F(x) <= u}`, or the floor if no column fits.
    pub fn g_at(&self, u: &[Rational]) -> Rational {
        self.columns
            .iter()
            .zip(&self.target)
            .filter(|(v, _)| v.iter().zip(u).all(|(a, b)| a <= b))
            .map(|(_, t)| t.clone())
            .max()
            .unwrap_or_else(|| self.floor.clone())
    }

    pub fn h_at(&self, u: &[Rational]) -> Rational {
        let shifted: Vec<Rational> = u.iter().map(|v| v + &self.eps).collect();
        self.g_at(&shifted)
    }

    pub fn lookup(&self, u: &[Rational]) -> Option<&Rational> {
        self.keys.binary_search_by(|k| k.as_slice().cmp(u)).ok().map(|i| &self.h[i])
    }

    /// `h(u) <= h(v)` whenever `u <= v` coordinatewise, over all key pairs.
    pub fn is_monotone(&self) -> bool {
        self.keys.iter().zip(&self.h).all(|(u, hu)| {
            self.keys
                .iter()
                .zip(&self.h)
                .all(|(v, hv)| !u.iter().zip(v).all(|(a, b)| a <= b) || hu <= hv)
        })
    }

    /// `g(u) <= h(u) <= g(u + eps)` at every key.
    pub fn sandwich_holds(&self) -> bool {
        self.keys.iter().zip(&self.g).zip(&self.h).all(|((u, g), h)| {
            let up: Vec<Rational> = u.iter().map(|v| v + &self.eps).collect();
            g <= h && h <= &self.g_at(&up)
        })
    }
}

pub fn build_monotone_table(
    m: &EvalMatrix,
    features: &[usize],
    target: &[Rational],
    eps: &Rational,
) -> Result<MonotoneTable> {
    if features.is_empty() {
        return Err(Error::InvalidParameter("features must be non-empty".into()));
    }
    check_inputs(m, features, target, eps)?;
    let columns: Vec<Vec<Rational>> = (0..m.cols())
        .map(|x| features.iter().map(|&f| m.entry(f, x).clone()).collect())
        .collect();
    let mut keys = columns.clone();
    keys.sort();
    keys.dedup();
    let mut table = MonotoneTable {
        features: features.to_vec(),
        eps: eps.clone(),
        floor: -m.bound().clone(),
        keys,
        g: Vec::new(),
        h: Vec::new(),
        columns,
        target: target.to_vec(),
    };
    table.g = table.keys.iter().map(|u| table.g_at(u)).collect();
    table.h = table.keys.iter().map(|u| table.h_at(u)).collect();
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub features: Vec<usize>,
    pub transcript: Transcript,
    pub table: MonotoneTable,
    pub approximant: Vec<Rational>,
    /// `max_x |target(x) - approximant(x)|`.
    pub err: Rational,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproxOutcome {
    Approximated(ApproxResult),
    Failed(FeatureFailure),
}

impl ApproxOutcome {
    pub fn result(&self) -> Option<&ApproxResult> {
        match self {
            ApproxOutcome::Approximated(r) => Some(r),
            ApproxOutcome::Failed(_) => None,
        }
    }
}

/// Selects features, tabulates `h` and evaluates it at every column.
///
/// When the target is already `3 eps`-flat no pair ever violates; the
/// least candidate row is then used as the single feature.
pub fn approximate(
    m: &EvalMatrix,
    a_rows: &[usize],
    target: &[Rational],
    eps: &Rational,
    opts: SelectOptions,
) -> Result<ApproxOutcome> {
    let transcript = match select_features(m, a_rows, target, eps, opts)? {
        Selection::Selected(t) => t,
        Selection::Failed(f) => return Ok(ApproxOutcome::Failed(f)),
    };
    let mut features = transcript.features.clone();
    if features.is_empty() {
        features.push(a_rows[0]);
    }
    let table = build_monotone_table(m, &features, target, eps)?;
    let approximant: Vec<Rational> = table
        .columns
        .iter()
        .map(|u| table.lookup(u).expect("observed vector").clone())
        .collect();
    let err = approximant
        .iter()
        .zip(target)
        .map(|(a, t)| (a - t).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(ApproxOutcome::Approximated(ApproxResult {
        iterations: transcript.pairs.len(),
        features,
        transcript,
        table,
        approximant,
        err,
    }))
}
