//! The evaluation matrix: values `phi(a_i, b_j)` of one formula, with rows
//! indexing the functions and columns indexing the points.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{Axis, Error, Result};
use crate::rational::{parse_rational, Rational};

/// A checked, immutable rational matrix with labels and a declared sup bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalMatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Vec<Rational>>,
    bound: Rational,
}

/// Parses raw text entries and checks every matrix invariant.
pub fn validate_matrix<S: AsRef<str>>(
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    raw_entries: &[Vec<S>],
    bound: Rational,
) -> Result<EvalMatrix> {
    check_labels(&row_labels, Axis::Row)?;
    check_labels(&col_labels, Axis::Col)?;
    check_shape(row_labels.len(), col_labels.len(), raw_entries)?;
    let entries = raw_entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| {
                    parse_rational(cell.as_ref()).map_err(|source| Error::BadEntry {
                        row: i,
                        col: j,
                        source,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EvalMatrix::new(row_labels, col_labels, entries, bound)
}

fn check_labels(labels: &[String], axis: Axis) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyLabels { axis });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel {
                axis,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

fn check_shape<T>(rows: usize, cols: usize, entries: &[Vec<T>]) -> Result<()> {
    if entries.len() != rows {
        return Err(Error::DimensionMismatch {
            what: "entry rows".into(),
            expected: rows,
            found: entries.len(),
        });
    }
    for (i, row) in entries.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                what: format!("row {i}"),
                expected: cols,
                found: row.len(),
            });
        }
    }
    Ok(())
}

impl EvalMatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<Rational>>,
        bound: Rational,
    ) -> Result<Self> {
        check_labels(&row_labels, Axis::Row)?;
        check_labels(&col_labels, Axis::Col)?;
        check_shape(row_labels.len(), col_labels.len(), &entries)?;
        if !bound.is_positive() {
            return Err(Error::NonPositiveBound(Box::new(bound)));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                if value.abs() > bound {
                    return Err(Error::EntryExceedsBound {
                        row: i,
                        col: j,
                        value: Box::new(value.clone()),
                        bound: Box::new(bound),
                    });
                }
            }
        }
        Ok(Self {
            row_labels,
            col_labels,
            entries,
            bound,
        })
    }

    /// Builds a matrix with labels `r0, r1, ...` / `c0, c1, ...` and the
    /// tightest bound (1 when every entry is zero).
    pub fn from_grid(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let bound = crate::rational::max_abs(entries.iter().flatten());
        let bound = if bound.is_zero() {
            Rational::from_integer(1.into())
        } else {
            bound
        };
        Self::new(default_labels("r", rows), default_labels("c", cols), entries, bound)
    }

    /// Like [`EvalMatrix::from_grid`] but with an explicit bound.
    pub fn from_grid_with_bound(entries: Vec<Vec<Rational>>, bound: Rational) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        Self::new(default_labels("r", rows), default_labels("c", cols), entries, bound)
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        self.entries.iter().map(|r| r[col].clone()).collect()
    }

    pub fn check_row(&self, row: usize) -> Result<()> {
        if row < self.rows() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                axis: Axis::Row,
                index: row,
                len: self.rows(),
            })
        }
    }

    pub fn check_col(&self, col: usize) -> Result<()> {
        if col < self.cols() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                axis: Axis::Col,
                index: col,
                len: self.cols(),
            })
        }
    }

    /// Distinct entry values in increasing order.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut values: Vec<Rational> = self.entries.iter().flatten().cloned().collect();
        values.sort();
        values.dedup();
        values
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols()).map(|j| self.column(j)).collect();
        Self {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
            bound: self.bound.clone(),
        }
    }

    /// The matrix of `-phi`.
    pub fn negate(&self) -> Self {
        Self {
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect(),
            bound: self.bound.clone(),
        }
    }

    /// Restriction to the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &i in rows {
            self.check_row(i)?;
        }
        for &j in cols {
            self.check_col(j)?;
        }
        Self::new(
            rows.iter().map(|&i| self.row_labels[i].clone()).collect(),
            cols.iter().map(|&j| self.col_labels[j].clone()).collect(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
            self.bound.clone(),
        )
    }

    /// Appends rows; labels must stay unique and entries within the bound.
    pub fn with_extra_rows(&self, labels: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut row_labels = self.row_labels.clone();
        row_labels.extend(labels);
        let mut entries = self.entries.clone();
        entries.extend(rows);
        Self::new(row_labels, self.col_labels.clone(), entries, self.bound.clone())
    }
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
