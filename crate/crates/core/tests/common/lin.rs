//! Exact dense linear algebra and vertex enumeration, used as LP oracles.

use dichotomy_lab::Rational;
use num_traits::{Signed, Zero};

/// Unique solution of a square system, or `None` when singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `g . x <= h`, or `g . x = h` for equality rows.
pub type Row = (Vec<Rational>, Rational);

/// Minimum of `objective . x` over a pointed polyhedron, by solving every
/// square system of the equalities plus enough tight inequalities.
/// `None` when no vertex is feasible.
pub fn vertex_min(num_vars: usize, objective: &[Rational], ineq: &[Row], eq: &[Row]) -> Option<Rational> {
    let need = num_vars.checked_sub(eq.len())?;
    let mut best: Option<Rational> = None;
    for tight in combinations(ineq.len(), need) {
        let mut a: Vec<Vec<Rational>> = eq.iter().map(|(g, _)| g.clone()).collect();
        let mut b: Vec<Rational> = eq.iter().map(|(_, h)| h.clone()).collect();
        for &k in &tight {
            a.push(ineq[k].0.clone());
            b.push(ineq[k].1.clone());
        }
        let Some(x) = solve(a, b) else { continue };
        let feasible = ineq.iter().all(|(g, h)| {
            let lhs: Rational = g.iter().zip(&x).map(|(u, v)| u * v).sum();
            &lhs <= h
        });
        if feasible {
            let value: Rational = objective.iter().zip(&x).map(|(u, v)| u * v).sum();
            if best.as_ref().map_or(true, |v| &value < v) {
                best = Some(value);
            }
        }
    }
    best
}

fn unit(n: usize, i: usize, v: i64) -> Vec<Rational> {
    let mut g = vec![Rational::zero(); n];
    g[i] = Rational::from_integer(v.into());
    g
}

/// `min t` over `{mu in simplex(n), mu(F) <= t for all F}`.
pub fn ptak_vertex_value(n: usize, members: &[Vec<usize>]) -> Rational {
    if members.is_empty() {
        return Rational::zero();
    }
    let one = Rational::from_integer(1.into());
    let mut ineq: Vec<Row> = (0..n).map(|i| (unit(n + 1, i, -1), Rational::zero())).collect();
    for f in members {
        let mut g = unit(n + 1, n, -1);
        for &i in f {
            g[i] = one.clone();
        }
        ineq.push((g, Rational::zero()));
    }
    let mut eq = vec![one.clone(); n + 1];
    eq[n] = Rational::zero();
    vertex_min(n + 1, &unit(n + 1, n, 1), &ineq, &[(eq, one)]).expect("bounded LP has a vertex")
}

/// `min d` over convex weights `c` with `|sum c_i rows_i - target| <= d`.
pub fn chebyshev_vertex_value(rows: &[Vec<Rational>], target: &[Rational]) -> Rational {
    let p = rows.len();
    let one = Rational::from_integer(1.into());
    let mut ineq: Vec<Row> = (0..p).map(|i| (unit(p + 1, i, -1), Rational::zero())).collect();
    for (x, tx) in target.iter().enumerate() {
        let mut up: Vec<Rational> = rows.iter().map(|r| r[x].clone()).collect();
        up.push(-one.clone());
        let mut down: Vec<Rational> = rows.iter().map(|r| -r[x].clone()).collect();
        down.push(-one.clone());
        ineq.push((up, tx.clone()));
        ineq.push((down, -tx.clone()));
    }
    let mut eq = vec![one.clone(); p + 1];
    eq[p] = Rational::zero();
    vertex_min(p + 1, &unit(p + 1, p, 1), &ineq, &[(eq, one)]).expect("bounded LP has a vertex")
}

/// Least `sum |c_i|` with `sum c_i g_i = w`, or `None` outside the span.
pub fn gauge_vertex_value(generators: &[Vec<Rational>], w: &[Rational]) -> Option<Rational> {
    let m = generators.len();
    let ineq: Vec<Row> = (0..2 * m).map(|i| (unit(2 * m, i, -1), Rational::zero())).collect();
    let eq: Vec<Row> = w
        .iter()
        .enumerate()
        .map(|(d, wd)| {
            let mut g: Vec<Rational> = generators.iter().map(|v| v[d].clone()).collect();
            g.extend(generators.iter().map(|v| -v[d].clone()));
            (g, wd.clone())
        })
        .collect();
    let objective = vec![Rational::from_integer(1.into()); 2 * m];
    // drop dependent equality rows so the square systems can be regular
    let mut independent: Vec<Row> = Vec::new();
    for row in eq {
        let mut trial: Vec<Vec<Rational>> = independent.iter().map(|(g, _)| g.clone()).collect();
        trial.push(row.0.clone());
        if rank(&trial) == trial.len() {
            independent.push(row);
        } else {
            let mut aug: Vec<Vec<Rational>> = independent
                .iter()
                .map(|(g, h)| g.iter().cloned().chain(std::iter::once(h.clone())).collect())
                .collect();
            aug.push(row.0.iter().cloned().chain(std::iter::once(row.1.clone())).collect());
            if rank(&aug) == aug.len() {
                return None;
            }
        }
    }
    vertex_min(2 * m, &objective, &ineq, &independent)
}

/// Row rank by exact elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `max_i |v_i|`.
pub fn sup_norm(v: &[Rational]) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}
