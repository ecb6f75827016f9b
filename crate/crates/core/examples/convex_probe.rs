//! Does closing a family under random convex combinations lengthen its
//! staircases?

use dichotomy_lab::convex::conv_stability_probe;
use dichotomy_lab::generate::{self, Dist};
use dichotomy_lab::rational::ratio;
use dichotomy_lab::ThresholdPair;

fn main() -> dichotomy_lab::Result<()> {
    let m = generate::random(5, 6, 8, Dist::Grid(4))?;
    let t = ThresholdPair::new(ratio(-1, 4), ratio(1, 4))?;
    let p = conv_stability_probe(&m, &t, 5, 40, 1)?;
    println!("base rank {}, with 40 averages {}", p.base.rank, p.extended.rank);
    if p.extension_found {
        let w = p.extended.witness.as_ref().expect("longer staircase");
        let labels: Vec<&str> = w.rows().iter().map(|&i| p.matrix.row_labels()[i].as_str()).collect();
        println!("longer staircase uses rows {labels:?}");
    }
    Ok(())
}
