//! Either many rows close together, or a shattered row set.

use dichotomy_lab::generate::{self, Dist};
use dichotomy_lab::order::DEFAULT_NODE_BUDGET;
use dichotomy_lab::ramsey::{cauchy_subsequence, rosenthal_dichotomy, DichotomyResult};
use dichotomy_lab::rational::{int, ratio};
use dichotomy_lab::ThresholdPair;

fn main() -> dichotomy_lab::Result<()> {
    let m = generate::random(200, 2, 5, Dist::Grid(8))?;
    let s = cauchy_subsequence(&m, &ratio(1, 2))?;
    println!("{} of 200 rows pairwise within 1/2 ({} cells per axis)", s.len(), s.cells_per_axis);

    let t = ThresholdPair::new(int(0), int(1))?;
    let cases = [
        ("shatter(3)", generate::shatter(3)?),
        ("constant", generate::constant(6, 4, int(0))?),
        ("L_8", generate::linear_order(8)?),
    ];
    for (name, m) in cases {
        let out = rosenthal_dichotomy(&m, &t, &ratio(1, 2), 4, 3, DEFAULT_NODE_BUDGET)?;
        match out {
            DichotomyResult::CauchyBranch(s) => println!("{name}: close rows {:?}", s.indices),
            DichotomyResult::IndependentBranch(w) => println!("{name}: shattered rows {:?}", w.rows()),
            DichotomyResult::Inconclusive { cauchy_len, independence_rank, .. } => {
                println!("{name}: neither (longest close run {cauchy_len}, independence {independence_rank})")
            }
        }
    }
    Ok(())
}
