//! Norm whose unit ball is the symmetric hull of a few vectors.

use dichotomy_lab::convex::gauge_norm;
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::Error;

fn main() -> dichotomy_lab::Result<()> {
    let axes = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
    let diag = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]];
    for w in [[int(1), int(1)], [int(2), ratio(-1, 2)], [int(0), int(3)]] {
        let a = gauge_norm(&axes, &w)?;
        let b = gauge_norm(&diag, &w)?;
        println!("({}, {}): axes {}, with diagonal {}", w[0], w[1], a.value, b.value);
    }
    let line = vec![vec![int(1), int(1)]];
    match gauge_norm(&line, &[int(1), int(0)]) {
        Err(Error::OutsideSpan) => println!("(1, 0) is outside the span of (1, 1)"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
