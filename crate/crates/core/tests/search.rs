mod common;

use dichotomy_lab::generate::{self, Dist};
use dichotomy_lab::independence::{independence_rank, ip_to_op, l1_lower_cert};
use dichotomy_lab::order::{defect_profile, negation_transport, order_rank};
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::{
    check_shatter, check_staircase, CoefVector, EvalMatrix, Rational, ShatterWitness,
    ThresholdPair,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero_one() -> ThresholdPair {
    ThresholdPair::new(int(0), int(1)).unwrap()
}

fn small_matrix() -> impl Strategy<Value = EvalMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r).prop_map(|rows| {
            EvalMatrix::from_grid_with_bound(
                rows.into_iter()
                    .map(|row| row.into_iter().map(|v| ratio(v, 2)).collect())
                    .collect(),
                int(1),
            )
            .unwrap()
        })
    })
}

fn permuted(m: &EvalMatrix, rows: &[usize], cols: &[usize]) -> EvalMatrix {
    m.submatrix(rows, cols).unwrap()
}

#[test]
fn order_rank_matches_enumeration_on_examples() {
    let l5 = generate::linear_order(5).unwrap();
    assert_eq!(common::brute_order_rank(&l5, &zero_one(), 5), 5);
    assert_eq!(order_rank(&l5, &zero_one(), 5).unwrap().rank, 5);

    let s3 = generate::shatter(3).unwrap();
    let res = order_rank(&s3, &zero_one(), 3).unwrap();
    assert!(res.rank >= 3);
    assert!(check_staircase(&s3, res.witness.as_ref().unwrap()).unwrap().is_valid());
}

#[test]
fn independence_rank_of_linear_order_is_one() {
    let l5 = generate::linear_order(5).unwrap();
    assert_eq!(common::brute_independence_rank(&l5, &zero_one(), 5), 1);
    assert_eq!(independence_rank(&l5, &zero_one(), 5).unwrap().rank, 1);
}

#[test]
fn defect_profile_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(1..=4);
        let m = generate::random_with(n, n, &mut rng, Dist::Grid(2)).unwrap();
        let profile = defect_profile(&m, n).unwrap();
        for k in 1..=n {
            let expected = common::value_pairs(&m)
                .into_iter()
                .filter(|t| common::has_staircase(&m, t, k))
                .map(|t| t.gap())
                .max();
            assert_eq!(profile.gap(k).cloned(), expected, "k = {k}");
        }
        let gaps: Vec<_> = profile.entries.iter().map(|e| e.gap.clone()).collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn negation_changes_rank_by_at_most_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let m = generate::random_with(4, 4, &mut rng, Dist::Grid(2)).unwrap();
        for t in common::value_pairs(&m) {
            let pos = order_rank(&m, &t, 4).unwrap();
            let neg = order_rank(&m.negate(), &t.negated(), 4).unwrap();
            assert!(pos.rank.abs_diff(neg.rank) <= 1);
            if let Some(w) = &pos.witness {
                if let Some(moved) = negation_transport(w) {
                    assert_eq!(moved.len(), w.len() - 1);
                    assert!(check_staircase(&m.negate(), &moved).unwrap().is_valid());
                }
            }
        }
    }
}

/// A `d`-row system shattered at `(0, 1)` with values spread inside the
/// low and high ranges, patterns in shuffled column order plus noise columns.
fn random_shattered(d: usize, rng: &mut ChaCha8Rng) -> EvalMatrix {
    let mut cols: Vec<Vec<Rational>> = (0..(1u64 << d))
        .map(|mask| {
            (0..d)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        ratio(-rng.gen_range(0..=4), 4)
                    } else {
                        ratio(4 + rng.gen_range(0..=4), 4)
                    }
                })
                .collect()
        })
        .collect();
    for _ in 0..3 {
        cols.push((0..d).map(|_| ratio(rng.gen_range(-4..=8), 4)).collect());
    }
    cols.shuffle(rng);
    let entries = (0..d)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    EvalMatrix::from_grid_with_bound(entries, int(2)).unwrap()
}

#[test]
fn chain_transport_on_random_shattered_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let m = random_shattered(5, &mut rng);
        let res = independence_rank(&m, &zero_one(), 5).unwrap();
        assert_eq!(res.rank, 5);
        let w = res.witness.unwrap();
        let s = ip_to_op(&m, &w).unwrap();
        assert_eq!(s.len(), 5);
        assert!(check_staircase(&m, &s).unwrap().is_valid());
    }
}

#[test]
fn l1_certificate_on_random_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let m = random_shattered(6, &mut rng);
    let w = independence_rank(&m, &zero_one(), 6).unwrap().witness.unwrap();
    for _ in 0..100 {
        let coefs: Vec<Rational> = (0..6)
            .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7)))
            .collect();
        let c = CoefVector::new(w.rows().to_vec(), coefs).unwrap();
        let cert = l1_lower_cert(&m, &w, &c).unwrap();
        assert!(cert.holds, "{cert:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_rank_agrees_with_enumeration(m in small_matrix()) {
        let cap = m.rows().min(m.cols());
        for t in common::value_pairs(&m) {
            let res = order_rank(&m, &t, cap).unwrap();
            prop_assert_eq!(res.rank, common::brute_order_rank(&m, &t, cap));
            prop_assert!(res.exhausted);
            if let Some(w) = &res.witness {
                prop_assert!(check_staircase(&m, w).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn independence_rank_agrees_with_enumeration(m in small_matrix()) {
        for t in common::value_pairs(&m) {
            let res = independence_rank(&m, &t, m.rows()).unwrap();
            prop_assert_eq!(res.rank, common::brute_independence_rank(&m, &t, m.rows()));
            if let Some(w) = &res.witness {
                prop_assert!(check_shatter(&m, w).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn ranks_are_permutation_invariant(m in small_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        let mut cols: Vec<usize> = (0..m.cols()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let p = permuted(&m, &rows, &cols);
        let cap = m.rows().min(m.cols());
        for t in common::value_pairs(&m) {
            let a = order_rank(&m, &t, cap).unwrap();
            let b = order_rank(&p, &t, cap).unwrap();
            prop_assert_eq!(a.rank, b.rank);
            // the relabeled witness checks on the relabeled matrix
            if let Some(w) = &a.witness {
                let inv_rows: Vec<usize> = (0..m.rows()).map(|i| rows.iter().position(|&x| x == i).unwrap()).collect();
                let inv_cols: Vec<usize> = (0..m.cols()).map(|j| cols.iter().position(|&x| x == j).unwrap()).collect();
                prop_assert!(check_staircase(&p, &w.map_indices(&inv_rows, &inv_cols)).unwrap().is_valid());
            }
            prop_assert_eq!(
                independence_rank(&m, &t, m.rows()).unwrap().rank,
                independence_rank(&p, &t, m.rows()).unwrap().rank
            );
        }
    }

    #[test]
    fn submatrix_rank_is_smaller(m in small_matrix(), drop_row in any::<prop::sample::Index>()) {
        prop_assume!(m.rows() > 1);
        let skip = drop_row.index(m.rows());
        let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != skip).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        let sub = m.submatrix(&rows, &cols).unwrap();
        let cap = sub.rows().min(sub.cols());
        for t in common::value_pairs(&m) {
            let full = order_rank(&m, &t, m.rows().min(m.cols())).unwrap().rank;
            prop_assert!(order_rank(&sub, &t, cap).unwrap().rank <= full);
        }
    }

    #[test]
    fn witnesses_survive_transpose_and_relaxation(m in small_matrix()) {
        let cap = m.rows().min(m.cols());
        for t in common::value_pairs(&m) {
            let Some(w) = order_rank(&m, &t, cap).unwrap().witness else { continue };
            prop_assert!(check_staircase(&m.transpose(), &w.transposed()).unwrap().is_valid());
            let relaxed = ThresholdPair::new(
                t.s() + t.gap() / Rational::from_integer(4.into()),
                t.r() - t.gap() / Rational::from_integer(4.into()),
            ).unwrap();
            prop_assert!(t.is_relaxed_by(&relaxed));
            prop_assert!(check_staircase(&m, &w.with_thresholds(relaxed)).unwrap().is_valid());
        }
    }

    #[test]
    fn independence_never_exceeds_order(m in small_matrix()) {
        let cap = m.rows().min(m.cols());
        for t in common::value_pairs(&m) {
            let ind = independence_rank(&m, &t, m.rows()).unwrap();
            let ord = order_rank(&m, &t, cap).unwrap();
            prop_assert!(ind.rank <= ord.rank);
            if let Some(w) = &ind.witness {
                let s = ip_to_op(&m, w).unwrap();
                prop_assert_eq!(s.len(), w.len());
            }
        }
    }

    #[test]
    fn shattering_is_hereditary(d in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_shattered(d, &mut rng);
        let w: ShatterWitness = independence_rank(&m, &zero_one(), d).unwrap().witness.unwrap();
        for mask in 1u32..(1 << d) {
            let positions: Vec<usize> = (0..d).filter(|p| mask & (1 << p) != 0).collect();
            let sub = w.restrict(&positions).unwrap();
            prop_assert!(check_shatter(&m, &sub).unwrap().is_valid());
        }
    }
}
