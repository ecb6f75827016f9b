//! Best uniform approximation of a target by averages of a tail of rows.

use dichotomy_lab::convex::mazur_approx;
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::EvalMatrix;
use num_traits::Zero;

fn main() -> dichotomy_lab::Result<()> {
    // rows v + w and v - w alternate; their midpoint is v
    let v = [ratio(1, 2), int(0), ratio(-1, 4)];
    let w = [ratio(1, 4), ratio(1, 2), ratio(1, 2)];
    let rows = (0..6)
        .map(|i| {
            v.iter()
                .zip(&w)
                .map(|(a, b)| if i % 2 == 0 { a + b } else { a - b })
                .collect()
        })
        .collect();
    let m = EvalMatrix::from_grid_with_bound(rows, int(1))?;
    let seq: Vec<usize> = (0..6).collect();
    for tail in [0, 3, 5] {
        let r = mazur_approx(&m, &seq, &v, tail)?;
        let coefs: Vec<String> = r
            .coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{i}:{c}"))
            .collect();
        println!("tail {tail}: distance {} via {}", r.distance, coefs.join(" "));
    }
    Ok(())
}
