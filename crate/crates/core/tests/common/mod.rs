//! Brute-force oracles, independent of the library's search code. They only
//! read raw matrix entries and thresholds.

#![allow(dead_code)]

pub mod lin;

use dichotomy_lab::{EvalMatrix, Rational, ThresholdPair};

fn high(t: &ThresholdPair, v: &Rational) -> bool {
    v >= t.r()
}

fn low(t: &ThresholdPair, v: &Rational) -> bool {
    v <= t.s()
}

/// All injective sequences of length `k` from `0..n`.
pub fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    injections(n, k)
        .into_iter()
        .filter(|s| s.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// Is there a length-`k` half graph, in either orientation, by enumeration
/// of every row sequence and every column sequence?
pub fn has_staircase(m: &EvalMatrix, t: &ThresholdPair, k: usize) -> bool {
    let row_seqs = injections(m.rows(), k);
    let col_seqs = injections(m.cols(), k);
    for rows in &row_seqs {
        for cols in &col_seqs {
            let fits = |dominant_rows: bool| {
                (0..k).all(|p| {
                    (0..k).all(|q| {
                        let v = m.entry(rows[p], cols[q]);
                        let want_high = if dominant_rows { p >= q } else { p <= q };
                        if want_high {
                            high(t, v)
                        } else {
                            low(t, v)
                        }
                    })
                })
            };
            if fits(true) || fits(false) {
                return true;
            }
        }
    }
    false
}

pub fn brute_order_rank(m: &EvalMatrix, t: &ThresholdPair, k_max: usize) -> usize {
    (1..=k_max)
        .rev()
        .find(|&k| has_staircase(m, t, k))
        .unwrap_or(0)
}

pub fn is_shattered(m: &EvalMatrix, t: &ThresholdPair, rows: &[usize]) -> bool {
    let k = rows.len();
    (0..(1u64 << k)).all(|mask| {
        (0..m.cols()).any(|c| {
            rows.iter().enumerate().all(|(p, &i)| {
                let v = m.entry(i, c);
                if mask & (1 << p) != 0 {
                    low(t, v)
                } else {
                    high(t, v)
                }
            })
        })
    })
}

pub fn brute_independence_rank(m: &EvalMatrix, t: &ThresholdPair, k_max: usize) -> usize {
    (1..=k_max)
        .rev()
        .find(|&k| subsets(m.rows(), k).iter().any(|s| is_shattered(m, t, s)))
        .unwrap_or(0)
}

/// Threshold pairs from distinct entry values.
pub fn value_pairs(m: &EvalMatrix) -> Vec<ThresholdPair> {
    let mut vals: Vec<Rational> = m.entries().iter().flatten().cloned().collect();
    vals.sort();
    vals.dedup();
    let mut out = Vec::new();
    for a in 0..vals.len() {
        for b in a + 1..vals.len() {
            out.push(ThresholdPair::new(vals[a].clone(), vals[b].clone()).unwrap());
        }
    }
    out
}

/// Whether subsets `A_1 ⊊ ... ⊊ A_len` of `0..n` exist with each `A_k`
/// containing some member (all sets as bit masks).
pub fn brute_chain_exists(n: usize, members: &[u32], len: usize) -> bool {
    fn extend(a: u32, left: usize, full: u32) -> bool {
        left == 0
            || (0..=full)
                .filter(|&b| b & a == a && b != a)
                .any(|b| extend(b, left - 1, full))
    }
    let full = (1u32 << n) - 1;
    (0..=full)
        .filter(|&a| members.iter().any(|&f| f & a == f))
        .any(|a| extend(a, len - 1, full))
}
