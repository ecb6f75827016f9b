//! Approximating an average of rows through a few feature rows and a
//! monotone table, and the transcript left when it cannot be done.

use dichotomy_lab::definable::{approximate, ApproxOutcome, SelectOptions};
use dichotomy_lab::generate;
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::{CoefVector, Rational};

fn main() -> dichotomy_lab::Result<()> {
    let m = generate::monotone_family(5, 12)?;
    let target = CoefVector::convex(vec![1, 4], vec![ratio(1, 3), ratio(2, 3)])?.combine(&m)?;
    let rows: Vec<usize> = (0..5).collect();
    let relaxed = SelectOptions { cap: None, fallback: true };
    for eps in [ratio(1, 2), ratio(1, 8), ratio(1, 32)] {
        if let ApproxOutcome::Approximated(r) = approximate(&m, &rows, &target, &eps, relaxed)? {
            println!(
                "eps {eps}: features {:?}, {} table keys, err {} (3 eps = {})",
                r.features,
                r.table.keys.len(),
                r.err,
                &eps * int(3)
            );
        }
    }

    let l8 = generate::linear_order(8)?;
    let alternating: Vec<Rational> = (0..8).map(|j| int(j % 2)).collect();
    let rows: Vec<usize> = (0..8).collect();
    match approximate(&l8, &rows, &alternating, &ratio(1, 4), SelectOptions::default())? {
        ApproxOutcome::Failed(f) => println!(
            "L_8, alternating target: {:?} after pairs {:?} with features {:?}",
            f.reason, f.transcript.pairs, f.transcript.features
        ),
        ApproxOutcome::Approximated(r) => println!("L_8: err {}", r.err),
    }
    Ok(())
}
