//! Longest staircase in the linear order and in a random matrix.

use dichotomy_lab::generate::{self, Dist};
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::{check_staircase, order_rank, ThresholdPair};

fn main() -> dichotomy_lab::Result<()> {
    let l6 = generate::linear_order(6)?;
    let t = ThresholdPair::new(int(0), int(1))?;
    let res = order_rank(&l6, &t, 6)?;
    let w = res.witness.expect("L_6 has a staircase");
    println!("L_6 at (0, 1): rank {} ({} nodes)", res.rank, res.nodes);
    println!("  rows {:?} cols {:?} {:?}", w.rows(), w.cols(), w.orientation());
    assert!(check_staircase(&l6, &w)?.is_valid());

    let m = generate::random(7, 7, 42, Dist::Grid(4))?;
    for (s, r) in [(ratio(-1, 2), ratio(1, 2)), (int(0), ratio(1, 4))] {
        let t = ThresholdPair::new(s, r)?;
        let res = order_rank(&m, &t, 7)?;
        println!("random 7x7 at ({}, {}): rank {}, exhausted {}", t.s(), t.r(), res.rank, res.exhausted);
    }
    Ok(())
}
