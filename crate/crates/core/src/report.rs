//! JSON form of a classification report. Rationals are written as `p/q`
//! strings and witnesses as index arrays, so a report file can be checked
//! against its matrix again after reading it back.

use serde::{Deserialize, Serialize};

use crate::classify::{ClassificationParams, Report};
use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::witness::{
    check_shatter, check_staircase, Orientation, ShatterWitness, StaircaseWitness, ThresholdPair,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub matrix: MatrixInfo,
    pub params: ParamsInfo,
    pub ranks: Vec<RankEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub verdicts: VerdictsInfo,
    pub banach_labels: LabelsInfo,
    pub budget_flags: BudgetFlags,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixInfo {
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsInfo {
    pub k_stable: usize,
    pub d_nip: usize,
    pub gap_min: String,
    pub k_max: usize,
    pub d_max: usize,
    pub budget: u64,
    /// Thresholds given explicitly, or `None` for the entry-value scan.
    pub thresholds: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub s: String,
    pub r: String,
    pub order_rank: usize,
    pub order_exhausted: bool,
    pub order_certified: bool,
    pub independence_rank: usize,
    pub independence_exhausted: bool,
    pub independence_certified: bool,
}

/// `negated` marks a witness on `-M`; `s` and `r` are the thresholds the
/// witness itself uses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessEntry {
    Staircase {
        pair: usize,
        s: String,
        r: String,
        negated: bool,
        orientation: Orientation,
        rows: Vec<usize>,
        cols: Vec<usize>,
    },
    Shatter {
        pair: usize,
        s: String,
        r: String,
        negated: bool,
        rows: Vec<usize>,
        /// Column realizing each low-set mask, indexed by mask.
        columns: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsInfo {
    pub stable_at_scale: bool,
    pub nip_at_scale: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelsInfo {
    pub reflexive_like: bool,
    pub rosenthal_like: bool,
    pub wsc_like: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetFlags {
    pub budget: u64,
    pub tripped: bool,
    /// Indices into `ranks` whose searches stopped early.
    pub inconclusive_pairs: Vec<usize>,
}

fn rat(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::MalformedWitness(format!("`{s}`: {e}")))
}

fn pair(s: &str, r: &str) -> Result<ThresholdPair> {
    ThresholdPair::new(rat(s)?, rat(r)?)
}

impl ReportFile {
    pub fn new(m: &EvalMatrix, params: &ClassificationParams, report: &Report) -> Self {
        let mut witnesses = Vec::new();
        for (k, p) in report.pairs.iter().enumerate() {
            if let Some(w) = &p.order_witness {
                witnesses.push(WitnessEntry::Staircase {
                    pair: k,
                    s: format_rational(w.thresholds().s()),
                    r: format_rational(w.thresholds().r()),
                    negated: p.order_negated,
                    orientation: w.orientation(),
                    rows: w.rows().to_vec(),
                    cols: w.cols().to_vec(),
                });
            }
            if let Some(w) = &p.independence_witness {
                witnesses.push(WitnessEntry::Shatter {
                    pair: k,
                    s: format_rational(w.thresholds().s()),
                    r: format_rational(w.thresholds().r()),
                    negated: p.independence_negated,
                    rows: w.rows().to_vec(),
                    columns: w.columns().values().copied().collect(),
                });
            }
        }
        ReportFile {
            matrix: MatrixInfo {
                rows: m.rows(),
                cols: m.cols(),
                row_labels: m.row_labels().to_vec(),
                col_labels: m.col_labels().to_vec(),
                bound: format_rational(m.bound()),
            },
            params: ParamsInfo {
                k_stable: report.k_stable,
                d_nip: report.d_nip,
                gap_min: format_rational(&report.gap_min),
                k_max: report.k_max,
                d_max: report.d_max,
                budget: params.budget,
                thresholds: params.thresholds.as_ref().map(|ts| {
                    ts.iter()
                        .map(|t| [format_rational(t.s()), format_rational(t.r())])
                        .collect()
                }),
            },
            ranks: report
                .pairs
                .iter()
                .map(|p| RankEntry {
                    s: format_rational(p.thresholds.s()),
                    r: format_rational(p.thresholds.r()),
                    order_rank: p.order_rank,
                    order_exhausted: p.order_exhausted,
                    order_certified: p.order_certified,
                    independence_rank: p.independence_rank,
                    independence_exhausted: p.independence_exhausted,
                    independence_certified: p.independence_certified,
                })
                .collect(),
            witnesses,
            verdicts: VerdictsInfo {
                stable_at_scale: report.verdicts.stable_at_scale,
                nip_at_scale: report.verdicts.nip_at_scale,
            },
            banach_labels: LabelsInfo {
                reflexive_like: report.labels.reflexive_like,
                rosenthal_like: report.labels.rosenthal_like,
                wsc_like: report.labels.wsc_like,
            },
            budget_flags: BudgetFlags {
                budget: params.budget,
                tripped: report.budget_tripped,
                inconclusive_pairs: report
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.order_exhausted || !p.independence_exhausted)
                    .map(|(k, _)| k)
                    .collect(),
            },
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Checks every embedded witness against `m`, or against `-m` for
    /// negated ones.
    pub fn verify(&self, m: &EvalMatrix) -> Result<()> {
        let neg = m.negate();
        for entry in &self.witnesses {
            let ok = match entry {
                WitnessEntry::Staircase {
                    s,
                    r,
                    negated,
                    orientation,
                    rows,
                    cols,
                    ..
                } => {
                    let w = StaircaseWitness::new(rows.clone(), cols.clone(), pair(s, r)?, *orientation)?;
                    check_staircase(if *negated { &neg } else { m }, &w)?.is_valid()
                }
                WitnessEntry::Shatter {
                    s,
                    r,
                    negated,
                    rows,
                    columns,
                    ..
                } => {
                    let w = ShatterWitness::from_table(rows.clone(), columns.clone(), pair(s, r)?)?;
                    check_shatter(if *negated { &neg } else { m }, &w)?.is_valid()
                }
            };
            if !ok {
                return Err(Error::InvalidWitness(format!("{entry:?}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line() as u64,
            column: e.column(),
            message: e.to_string(),
        })
    }
}
