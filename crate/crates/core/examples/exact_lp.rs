//! The simplex kernel: an optimum with duals, then an infeasible system
//! with its Farkas certificate.

use dichotomy_lab::lp::{lp_solve, verify_farkas, verify_optimal, LinearProgram, LpOutcome, Relation, Sense};
use dichotomy_lab::rational::{int, ratio};

fn main() -> dichotomy_lab::Result<()> {
    // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3
    let mut lp = LinearProgram::new(2, Sense::Maximize, vec![int(3), int(2)]);
    lp.add(vec![int(1), int(1)], Relation::Le, int(4));
    lp.add(vec![int(1), int(3)], Relation::Le, int(6));
    lp.add(vec![int(1), int(0)], Relation::Le, int(3));
    if let LpOutcome::Optimal(s) = lp_solve(&lp)? {
        verify_optimal(&lp, &s)?;
        println!("optimum {} at x = {:?}", s.value, fmt(&s.x));
        println!("duals {:?}", fmt(&s.duals));
    }

    let mut bad = LinearProgram::new(2, Sense::Minimize, vec![int(1), int(1)]);
    bad.add(vec![int(1), int(1)], Relation::Le, int(1));
    bad.add(vec![int(2), int(1)], Relation::Ge, ratio(5, 2));
    bad.add(vec![int(0), int(1)], Relation::Ge, int(1));
    if let LpOutcome::Infeasible { farkas } = lp_solve(&bad)? {
        verify_farkas(&bad, &farkas)?;
        println!("infeasible, certificate {:?}", fmt(&farkas));
    }
    Ok(())
}

fn fmt(v: &[dichotomy_lab::Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
