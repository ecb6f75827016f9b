//! Exact rational linear programming.
//!
//! Dense two-phase simplex over [`Rational`] with Bland's rule. Every
//! verdict carries a certificate that is re-checked before it is returned:
//! optimal solutions come with dual multipliers (zero duality gap),
//! infeasible systems with a Farkas vector, unbounded ones with a ray.
//!
//! All variables are non-negative; split free variables before calling.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    /// One multiplier per constraint. For maximization they satisfy
    /// `A^T y >= c` with `y >= 0` on `<=` rows and `y <= 0` on `>=` rows;
    /// for minimization `A^T y <= c` with the signs reversed.
    pub duals: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// `y` with `y^T A <= 0` columnwise, `y <= 0` on `<=` rows, `y >= 0` on
    /// `>=` rows and `y^T b > 0`.
    Infeasible { farkas: Vec<Rational> },
    /// Feasible `point` plus non-negative `ray` improving the objective.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense, objective: Vec<Rational>) -> Self {
        Self {
            num_vars,
            sense,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                what: "objective".into(),
                expected: self.num_vars,
                found: self.objective.len(),
            });
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(Error::DimensionMismatch {
                    what: format!("constraint {i}"),
                    expected: self.num_vars,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    fn row_value(&self, i: usize, x: &[Rational]) -> Rational {
        dot(&self.constraints[i].coeffs, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self
                .constraints
                .iter()
                .enumerate()
                .all(|(i, c)| c.relation.holds(&self.row_value(i, x), &c.rhs))
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(u, v)| u * v)
        .fold(Rational::zero(), |acc, t| acc + t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Original,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    /// Column that was basic for each row initially (holds `B^{-1}`).
    initial: Vec<usize>,
    /// Row sign applied to make the right-hand side non-negative.
    signs: Vec<Rational>,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let one = Rational::from_integer(1.into());
        let mut kinds = vec![ColKind::Original; n];
        let mut extra: Vec<(usize, Rational, ColKind)> = Vec::new();
        let mut signs = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut initial = Vec::with_capacity(m);

        for (i, c) in lp.constraints.iter().enumerate() {
            let flip = c.rhs.is_negative();
            let sign = if flip { -one.clone() } else { one.clone() };
            let relation = if flip { c.relation.flipped() } else { c.relation };
            rows.push(c.coeffs.iter().map(|a| a * &sign).collect::<Vec<_>>());
            rhs.push(&c.rhs * &sign);
            signs.push(sign);
            let col = n + extra.len();
            match relation {
                Relation::Le => {
                    extra.push((i, one.clone(), ColKind::Slack));
                    initial.push(col);
                }
                Relation::Ge => {
                    extra.push((i, -one.clone(), ColKind::Slack));
                    extra.push((i, one.clone(), ColKind::Artificial));
                    initial.push(col + 1);
                }
                Relation::Eq => {
                    extra.push((i, one.clone(), ColKind::Artificial));
                    initial.push(col);
                }
            }
        }
        let total = n + extra.len();
        for row in &mut rows {
            row.resize(total, Rational::zero());
        }
        for (k, (i, coef, kind)) in extra.into_iter().enumerate() {
            rows[i][n + k] = coef;
            kinds.push(kind);
        }
        Self {
            rows,
            rhs,
            basis: initial.clone(),
            kinds,
            initial,
            signs,
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in &mut self.rows[r] {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, costs: &[Rational], j: usize) -> Rational {
        let mut d = costs[j].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() && !self.rows[r][j].is_zero() {
                d -= &costs[b] * &self.rows[r][j];
            }
        }
        d
    }

    /// Maximizes `costs` with Bland's rule over the allowed columns.
    fn run(&mut self, costs: &[Rational], allowed: impl Fn(ColKind) -> bool) -> Phase {
        loop {
            let entering = (0..self.width()).find(|&j| {
                allowed(self.kinds[j])
                    && !self.basis.contains(&j)
                    && self.reduced_cost(costs, j).is_positive()
            });
            let Some(j) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return Phase::Unbounded(j),
            }
        }
    }

    /// `c_B^T B^{-1}` mapped back to the caller's row signs.
    fn multipliers(&self, costs: &[Rational]) -> Vec<Rational> {
        (0..self.rows.len())
            .map(|i| {
                let col = self.initial[i];
                let y = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| !costs[b].is_zero())
                    .fold(Rational::zero(), |acc, (r, &b)| acc + &costs[b] * &self.rows[r][col]);
                y * &self.signs[i]
            })
            .collect()
    }

    fn values(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.width()];
        for (r, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[r].clone();
        }
        x
    }
}

/// Solves `lp` exactly and verifies the returned certificate.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars;
    let mut tab = Tableau::build(lp);

    if tab.kinds.contains(&ColKind::Artificial) {
        let phase1: Vec<Rational> = tab
            .kinds
            .iter()
            .map(|k| match k {
                ColKind::Artificial => Rational::from_integer((-1).into()),
                _ => Rational::zero(),
            })
            .collect();
        // Phase one is bounded above by zero.
        let _ = tab.run(&phase1, |_| true);
        let infeasibility: Rational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(&b, _)| tab.kinds[b] == ColKind::Artificial)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            let farkas: Vec<Rational> = tab.multipliers(&phase1).into_iter().map(|y| -y).collect();
            verify_farkas(lp, &farkas)?;
            return Ok(LpOutcome::Infeasible { farkas });
        }
        for r in 0..tab.rows.len() {
            if tab.kinds[tab.basis[r]] != ColKind::Artificial {
                continue;
            }
            if let Some(j) = (0..tab.width())
                .find(|&j| tab.kinds[j] != ColKind::Artificial && !tab.rows[r][j].is_zero())
            {
                tab.pivot(r, j);
            }
        }
    }

    let mut costs = vec![Rational::zero(); tab.width()];
    for (j, c) in lp.objective.iter().enumerate() {
        costs[j] = match lp.sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c.clone(),
        };
    }
    match tab.run(&costs, |k| k != ColKind::Artificial) {
        Phase::Unbounded(j) => {
            let point = tab.values()[..n].to_vec();
            let mut ray = vec![Rational::zero(); tab.width()];
            ray[j] = Rational::from_integer(1.into());
            for (r, &b) in tab.basis.iter().enumerate() {
                ray[b] = -tab.rows[r][j].clone();
            }
            ray.truncate(n);
            verify_ray(lp, &point, &ray)?;
            Ok(LpOutcome::Unbounded { point, ray })
        }
        Phase::Optimal => {
            let x = tab.values()[..n].to_vec();
            let mut duals = tab.multipliers(&costs);
            if lp.sense == Sense::Minimize {
                for y in &mut duals {
                    *y = -y.clone();
                }
            }
            let solution = LpSolution {
                value: lp.objective_value(&x),
                x,
                duals,
            };
            verify_optimal(lp, &solution)?;
            Ok(LpOutcome::Optimal(solution))
        }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::CertificateFailure(msg.into())
}

fn column_dot(lp: &LinearProgram, y: &[Rational], j: usize) -> Rational {
    lp.constraints
        .iter()
        .zip(y)
        .fold(Rational::zero(), |acc, (c, yi)| acc + &c.coeffs[j] * yi)
}

/// Primal feasibility, dual feasibility and zero duality gap.
pub fn verify_optimal(lp: &LinearProgram, s: &LpSolution) -> Result<()> {
    if !lp.is_feasible(&s.x) {
        return Err(fail("primal solution is infeasible"));
    }
    let max = lp.sense == Sense::Maximize;
    for (c, y) in lp.constraints.iter().zip(&s.duals) {
        let ok = match (c.relation, max) {
            (Relation::Eq, _) => true,
            (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative(),
            (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive(),
        };
        if !ok {
            return Err(fail("dual multiplier has the wrong sign"));
        }
    }
    for j in 0..lp.num_vars {
        let lhs = column_dot(lp, &s.duals, j);
        let ok = if max {
            lhs >= lp.objective[j]
        } else {
            lhs <= lp.objective[j]
        };
        if !ok {
            return Err(fail(format!("dual constraint {j} is violated")));
        }
    }
    let dual_value = lp
        .constraints
        .iter()
        .zip(&s.duals)
        .fold(Rational::zero(), |acc, (c, y)| acc + &c.rhs * y);
    if dual_value != s.value {
        return Err(fail(format!(
            "duality gap: primal {} vs dual {dual_value}",
            s.value
        )));
    }
    Ok(())
}

pub fn verify_farkas(lp: &LinearProgram, y: &[Rational]) -> Result<()> {
    for (c, yi) in lp.constraints.iter().zip(y) {
        let ok = match c.relation {
            Relation::Le => !yi.is_positive(),
            Relation::Ge => !yi.is_negative(),
            Relation::Eq => true,
        };
        if !ok {
            return Err(fail("Farkas multiplier has the wrong sign"));
        }
    }
    if (0..lp.num_vars).any(|j| column_dot(lp, y, j).is_positive()) {
        return Err(fail("Farkas combination has a positive column"));
    }
    let rhs = lp
        .constraints
        .iter()
        .zip(y)
        .fold(Rational::zero(), |acc, (c, yi)| acc + &c.rhs * yi);
    if !rhs.is_positive() {
        return Err(fail("Farkas combination does not separate"));
    }
    Ok(())
}

pub fn verify_ray(lp: &LinearProgram, point: &[Rational], ray: &[Rational]) -> Result<()> {
    if !lp.is_feasible(point) {
        return Err(fail("unbounded base point is infeasible"));
    }
    if ray.iter().any(Signed::is_negative) {
        return Err(fail("ray leaves the orthant"));
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let d = lp.row_value(i, ray);
        let ok = match c.relation {
            Relation::Le => !d.is_positive(),
            Relation::Ge => !d.is_negative(),
            Relation::Eq => d.is_zero(),
        };
        if !ok {
            return Err(fail(format!("ray violates constraint {i}")));
        }
    }
    let gain = lp.objective_value(ray);
    let improving = match lp.sense {
        Sense::Maximize => gain.is_positive(),
        Sense::Minimize => gain.is_negative(),
    };
    if !improving {
        return Err(fail("ray does not improve the objective"));
    }
    Ok(())
}
