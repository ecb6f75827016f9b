//! Convex means against a set family: the triangle needs mass 2/3 on some
//! member, and a chain of members covers the ground set.

use dichotomy_lab::convex::{ptak_chain_search, ptak_value, SetFamily};
use dichotomy_lab::rational::ratio;

fn main() -> dichotomy_lab::Result<()> {
    let tri = SetFamily::new(vec![1, 2, 3], vec![vec![1, 2], vec![1, 3], vec![2, 3]])?;
    let g = ptak_value(&tri)?;
    println!("value {} (primal max {}, dual min {})", g.value, g.primal_max, g.dual_min);
    for (p, w) in g.primal.strict_support() {
        println!("  mu({p}) = {w}");
    }
    for eps in [ratio(1, 2), ratio(3, 4)] {
        println!("mean with every member below {eps}: {}", g.admits_small_mean(&eps));
    }

    let fam = SetFamily::new(vec![1, 2, 3, 4], vec![vec![1], vec![1, 2, 3], vec![3, 4]])?;
    match ptak_chain_search(&fam, 3)? {
        Some(chain) => println!("chain {:?} through members {:?}", chain.sets, chain.members),
        None => println!("no chain of length 3"),
    }
    Ok(())
}
