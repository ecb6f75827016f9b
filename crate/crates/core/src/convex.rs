//! Convex means, the point-versus-set covering game, Chebyshev averaging of
//! row tails, the gauge norm of `conv(±generators)` and the convex-hull
//! stability probe. Everything is solved with the exact LP kernel.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generate::random_convex_weights;
use crate::lp::{lp_solve, LinearProgram, LpOutcome, Relation, Sense};
use crate::matrix::EvalMatrix;
use crate::order::{order_rank_with_budget, OrderRankResult, DEFAULT_NODE_BUDGET};
use crate::rational::{int, Rational};
use crate::witness::{CoefVector, ThresholdPair};

/// Finitely supported probability weights on ground indices.
///
/// Zero weights are allowed so that LP vertices can be stored as is;
/// [`ConvexMean::strict_support`] recovers the positive support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexMean {
    support: Vec<usize>,
    weights: Vec<Rational>,
}

impl ConvexMean {
    pub fn new(support: Vec<usize>, weights: Vec<Rational>) -> Result<Self> {
        let v = CoefVector::convex(support, weights)?;
        Ok(Self {
            support: v.support().to_vec(),
            weights: v.coefficients().to_vec(),
        })
    }

    pub fn point_mass(point: usize) -> Self {
        Self {
            support: vec![point],
            weights: vec![int(1)],
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> Rational {
        self.support
            .iter()
            .position(|&p| p == point)
            .map_or_else(Rational::zero, |i| self.weights[i].clone())
    }

    /// `mu(F) = sum of weights over F`.
    pub fn measure(&self, set: &[usize]) -> Rational {
        set.iter().map(|&p| self.weight(p)).sum()
    }

    /// Points with strictly positive weight.
    pub fn strict_support(&self) -> Vec<(usize, Rational)> {
        self.support
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| w.is_positive())
            .map(|(&p, w)| (p, w.clone()))
            .collect()
    }
}

/// A finite ground set `B` and members `F_1, ..., F_m` contained in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground: Vec<usize>, members: Vec<Vec<usize>>) -> Result<Self> {
        let set: HashSet<usize> = ground.iter().copied().collect();
        if set.len() != ground.len() {
            return Err(Error::InvalidParameter("ground set has repeated points".into()));
        }
        for (k, f) in members.iter().enumerate() {
            let distinct: HashSet<usize> = f.iter().copied().collect();
            if distinct.len() != f.len() {
                return Err(Error::InvalidParameter(format!("member {k} repeats a point")));
            }
            if let Some(p) = f.iter().find(|p| !set.contains(p)) {
                return Err(Error::InvalidParameter(format!(
                    "member {k} contains {p}, which is not in the ground set"
                )));
            }
        }
        Ok(Self { ground, members })
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn with_member(&self, member: Vec<usize>) -> Result<Self> {
        let mut members = self.members.clone();
        members.push(member);
        Self::new(self.ground.clone(), members)
    }

    pub fn with_point(&self, point: usize) -> Result<Self> {
        let mut ground = self.ground.clone();
        ground.push(point);
        Self::new(ground, self.members.clone())
    }
}

/// Optimal mixed strategies of the covering game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    /// `min_mu max_F mu(F)`.
    pub value: Rational,
    pub primal: ConvexMean,
    /// Probability weights over members, aligned with `SetFamily::members`.
    pub dual: Vec<Rational>,
    /// `max_F primal(F)`, recomputed.
    pub primal_max: Rational,
    /// `min_i sum_{F containing i} dual_F`, recomputed.
    pub dual_min: Rational,
}

impl GameSolution {
    /// Whether `M_B(F, eps)` is non-empty; `primal` is then a member.
    pub fn admits_small_mean(&self, eps: &Rational) -> bool {
        &self.value < eps
    }
}

/// Value of the game where one player spreads a convex mean over the
/// ground set and the other picks the member with the largest mass.
pub fn ptak_value(fam: &SetFamily) -> Result<GameSolution> {
    let n = fam.ground.len();
    if n == 0 {
        return Err(Error::InvalidParameter("ground set must be non-empty".into()));
    }
    if fam.members.is_empty() {
        // max over no members is taken as 0
        return Ok(GameSolution {
            value: Rational::zero(),
            primal: ConvexMean::point_mass(fam.ground[0]),
            dual: Vec::new(),
            primal_max: Rational::zero(),
            dual_min: Rational::zero(),
        });
    }
    let pos: Vec<Vec<usize>> = fam
        .members
        .iter()
        .map(|f| {
            f.iter()
                .map(|p| fam.ground.iter().position(|g| g == p).expect("validated"))
                .collect()
        })
        .collect();

    // variables: mu_0..mu_{n-1}, t
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = int(1);
    let mut lp = LinearProgram::new(n + 1, Sense::Minimize, objective);
    let mut simplex = vec![int(1); n + 1];
    simplex[n] = Rational::zero();
    lp.add(simplex, Relation::Eq, int(1));
    for f in &pos {
        let mut row = vec![Rational::zero(); n + 1];
        for &i in f {
            row[i] = int(1);
        }
        row[n] = int(-1);
        lp.add(row, Relation::Le, Rational::zero());
    }
    let sol = match lp_solve(&lp)? {
        LpOutcome::Optimal(s) => s,
        other => {
            return Err(Error::CertificateFailure(format!(
                "covering game LP is always feasible and bounded, got {other:?}"
            )))
        }
    };

    let primal = ConvexMean::new(fam.ground.clone(), sol.x[..n].to_vec())?;
    let mut dual: Vec<Rational> = sol.duals[1..].iter().map(|y| -y).collect();
    let total: Rational = dual.iter().sum();
    if total.is_positive() {
        for d in &mut dual {
            *d /= &total;
        }
    } else {
        let m = dual.len() as i64;
        dual = vec![Rational::new(1.into(), m.into()); dual.len()];
    }

    let primal_max = fam
        .members
        .iter()
        .map(|f| primal.measure(f))
        .max()
        .unwrap_or_else(Rational::zero);
    let dual_min = (0..n)
        .map(|i| {
            pos.iter()
                .zip(&dual)
                .filter(|(f, _)| f.contains(&i))
                .map(|(_, d)| d.clone())
                .sum::<Rational>()
        })
        .min()
        .unwrap_or_else(Rational::zero);
    if primal_max != sol.value || dual_min != sol.value {
        return Err(Error::CertificateFailure(format!(
            "game value {} but primal max {primal_max} and dual min {dual_min}",
            sol.value
        )));
    }
    Ok(GameSolution {
        value: sol.value,
        primal,
        dual,
        primal_max,
        dual_min,
    })
}

/// A strictly increasing chain `A_1 ⊂ ... ⊂ A_L` with `F_n ⊆ A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtakChain {
    pub sets: Vec<Vec<usize>>,
    /// Index into `SetFamily::members` of `F_n` for each `n`.
    pub members: Vec<usize>,
}

impl PtakChain {
    pub fn verify(&self, fam: &SetFamily) -> bool {
        let as_sets: Vec<HashSet<usize>> = self
            .sets
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        let ground: HashSet<usize> = fam.ground.iter().copied().collect();
        self.sets.len() == self.members.len()
            && as_sets.iter().all(|s| s.is_subset(&ground))
            && as_sets
                .windows(2)
                .all(|w| w[0].is_subset(&w[1]) && w[0].len() < w[1].len())
            && self.members.iter().zip(&as_sets).all(|(&k, a)| {
                fam.members
                    .get(k)
                    .is_some_and(|f| f.iter().all(|p| a.contains(p)))
            })
    }
}

/// Finds a chain of length `len`, or `None` when none exists.
///
/// `|A_L| >= |A_1| + L - 1 >= |F_1| + L - 1`, so a chain exists iff some
/// member has `|F| + L - 1 <= |B|`; the construction starts from the
/// smallest such member and adds the least unused ground point each step.
pub fn ptak_chain_search(fam: &SetFamily, len: usize) -> Result<Option<PtakChain>> {
    if len == 0 {
        return Err(Error::InvalidParameter("chain length must be >= 1".into()));
    }
    let Some((_, first)) = fam
        .members
        .iter()
        .enumerate()
        .min_by_key(|(k, f)| (f.len(), *k))
    else {
        return Ok(None);
    };
    if first.len() + len - 1 > fam.ground.len() {
        return Ok(None);
    }
    let mut current: Vec<usize> = fam
        .ground
        .iter()
        .copied()
        .filter(|p| first.contains(p))
        .collect();
    let mut spare = fam.ground.iter().copied().filter(|p| !first.contains(p));
    let mut sets = Vec::with_capacity(len);
    let mut members = Vec::with_capacity(len);
    for step in 0..len {
        if step > 0 {
            let p = spare.next().expect("enough ground points");
            current.push(p);
            current.sort_by_key(|x| fam.ground.iter().position(|g| g == x));
        }
        let k = fam
            .members
            .iter()
            .position(|f| f.iter().all(|p| current.contains(p)))
            .expect("the starting member is contained");
        sets.push(current.clone());
        members.push(k);
    }
    let chain = PtakChain { sets, members };
    if !chain.verify(fam) {
        return Err(Error::CertificateFailure("constructed chain does not verify".into()));
    }
    Ok(Some(chain))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazurResult {
    /// Convex weights over the tail rows.
    pub coefficients: CoefVector,
    /// `min over the simplex of ||sum c_i row_i - target||_inf`.
    pub distance: Rational,
}

/// Best uniform approximation of `target` by a convex combination of the
/// rows `seq[tail..]`.
pub fn mazur_approx(
    m: &EvalMatrix,
    seq: &[usize],
    target: &[Rational],
    tail: usize,
) -> Result<MazurResult> {
    if target.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            what: "target".into(),
            expected: m.cols(),
            found: target.len(),
        });
    }
    for &i in seq {
        m.check_row(i)?;
    }
    if tail >= seq.len() {
        return Err(Error::InvalidParameter(format!(
            "empty tail: start {tail} with {} rows",
            seq.len()
        )));
    }
    let mut rows: Vec<usize> = Vec::new();
    for &i in &seq[tail..] {
        if !rows.contains(&i) {
            rows.push(i);
        }
    }
    let p = rows.len();
    // variables: c_0..c_{p-1}, d
    let mut objective = vec![Rational::zero(); p + 1];
    objective[p] = int(1);
    let mut lp = LinearProgram::new(p + 1, Sense::Minimize, objective);
    for (x, tx) in target.iter().enumerate() {
        let mut below: Vec<Rational> = rows.iter().map(|&i| m.entry(i, x).clone()).collect();
        let mut above = below.clone();
        below.push(int(-1));
        above.push(int(1));
        lp.add(below, Relation::Le, tx.clone());
        lp.add(above, Relation::Ge, tx.clone());
    }
    let mut simplex = vec![int(1); p + 1];
    simplex[p] = Rational::zero();
    lp.add(simplex, Relation::Eq, int(1));

    let sol = lp_solve(&lp)?
        .optimal()
        .ok_or_else(|| Error::CertificateFailure("Chebyshev LP must be solvable".into()))?;
    let coefficients = CoefVector::convex(rows, sol.x[..p].to_vec())?;
    let distance = sup_distance(&coefficients.combine(m)?, target);
    if distance != sol.value {
        return Err(Error::CertificateFailure(format!(
            "LP distance {} but recomputed {distance}",
            sol.value
        )));
    }
    Ok(MazurResult {
        coefficients,
        distance,
    })
}

pub fn sup_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeNorm {
    pub value: Rational,
    /// A minimal representation `w = sum c_i g_i`.
    pub coefficients: Vec<Rational>,
}

/// Minkowski gauge of `w` for the body `conv(±generators)`: the least
/// `sum |c_i|` over exact representations `w = sum c_i g_i`.
pub fn gauge_norm(generators: &[Vec<Rational>], w: &[Rational]) -> Result<GaugeNorm> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidParameter("no generators".into()));
    };
    let dim = first.len();
    for (k, g) in generators.iter().enumerate() {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                what: format!("generator {k}"),
                expected: dim,
                found: g.len(),
            });
        }
    }
    if w.len() != dim {
        return Err(Error::DimensionMismatch {
            what: "target".into(),
            expected: dim,
            found: w.len(),
        });
    }
    let count = generators.len();
    // variables: p_0..p_{m-1}, q_0..q_{m-1}; c = p - q
    let mut lp = LinearProgram::new(2 * count, Sense::Minimize, vec![int(1); 2 * count]);
    for (d, wd) in w.iter().enumerate() {
        let mut row: Vec<Rational> = generators.iter().map(|g| g[d].clone()).collect();
        row.extend(generators.iter().map(|g| -g[d].clone()));
        lp.add(row, Relation::Eq, wd.clone());
    }
    let sol = match lp_solve(&lp)? {
        LpOutcome::Optimal(s) => s,
        LpOutcome::Infeasible { .. } => return Err(Error::OutsideSpan),
        LpOutcome::Unbounded { .. } => {
            return Err(Error::CertificateFailure("gauge LP is bounded below by 0".into()))
        }
    };
    let coefficients: Vec<Rational> = (0..count)
        .map(|i| &sol.x[i] - &sol.x[count + i])
        .collect();
    let rebuilt: Vec<Rational> = (0..dim)
        .map(|d| {
            generators
                .iter()
                .zip(&coefficients)
                .map(|(g, c)| &g[d] * c)
                .sum()
        })
        .collect();
    let l1: Rational = coefficients.iter().map(Signed::abs).sum();
    if rebuilt != w || l1 != sol.value {
        return Err(Error::CertificateFailure("gauge representation does not verify".into()));
    }
    Ok(GaugeNorm {
        value: sol.value,
        coefficients,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub base: OrderRankResult,
    pub extended: OrderRankResult,
    /// Whether some sampled combination lengthened the longest staircase.
    pub extension_found: bool,
    /// Weights of every appended row; row `base_rows + k` uses `samples[k]`.
    pub samples: Vec<CoefVector>,
    pub base_rows: usize,
    /// The matrix with the sampled rows appended.
    pub matrix: EvalMatrix,
}

/// Appends `samples` seeded random convex combinations of rows and checks
/// whether the order rank at `t` (capped at `k`) grows.
pub fn conv_stability_probe(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    conv_stability_probe_with_budget(m, t, k, samples, seed, DEFAULT_NODE_BUDGET)
}

pub fn conv_stability_probe_with_budget(
    m: &EvalMatrix,
    t: &ThresholdPair,
    k: usize,
    samples: usize,
    seed: u64,
    budget: u64,
) -> Result<ProbeReport> {
    if samples == 0 || k == 0 {
        return Err(Error::InvalidParameter("samples and k must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let existing: HashSet<&str> = m.row_labels().iter().map(String::as_str).collect();
    let mut labels = Vec::with_capacity(samples);
    let mut rows = Vec::with_capacity(samples);
    let mut weights = Vec::with_capacity(samples);
    for s in 0..samples {
        let mut label = format!("conv{s}");
        while existing.contains(label.as_str()) {
            label.push('\'');
        }
        let picks = random_convex_weights(m.rows(), &mut rng);
        let (support, coefs): (Vec<usize>, Vec<Rational>) = picks.into_iter().unzip();
        let c = CoefVector::convex(support, coefs)?;
        rows.push(c.combine(m)?);
        labels.push(label);
        weights.push(c);
    }
    let extended_matrix = m.with_extra_rows(labels, rows)?;
    let base = order_rank_with_budget(m, t, k.min(m.rows()).min(m.cols()), budget)?;
    let extended = order_rank_with_budget(
        &extended_matrix,
        t,
        k.min(extended_matrix.rows()).min(m.cols()),
        budget,
    )?;
    Ok(ProbeReport {
        extension_found: extended.rank > base.rank,
        base,
        extended,
        samples: weights,
        base_rows: m.rows(),
        matrix: extended_matrix,
    })
}
