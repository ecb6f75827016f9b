//! A shattered row set, the staircase it yields, and the l1 lower bound
//! for combinations of its rows.

use dichotomy_lab::generate;
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::{
    check_staircase, independence_rank, ip_to_op, l1_lower_cert, order_rank, CoefVector,
    ThresholdPair,
};

fn main() -> dichotomy_lab::Result<()> {
    let m = generate::shatter(4)?;
    let t = ThresholdPair::new(int(0), int(1))?;

    let ind = independence_rank(&m, &t, 4)?;
    let w = ind.witness.expect("shatter(4) is shattered");
    println!("independence rank {} on rows {:?}", ind.rank, w.rows());

    let stair = ip_to_op(&m, &w)?;
    assert!(check_staircase(&m, &stair)?.is_valid());
    println!("transported staircase: rows {:?} cols {:?}", stair.rows(), stair.cols());
    println!("order rank {}", order_rank(&m, &t, 4)?.rank);

    let c = CoefVector::new(w.rows().to_vec(), vec![int(3), ratio(-1, 2), int(0), int(-2)])?;
    let cert = l1_lower_cert(&m, &w, &c)?;
    println!(
        "||sum c_i f_i|| >= {}: achieved {} at columns {:?}, holds {}",
        cert.bound, cert.achieved, cert.columns, cert.holds
    );
    Ok(())
}
