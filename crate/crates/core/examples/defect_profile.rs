//! Widest threshold gap admitting a staircase of each length.

use dichotomy_lab::defect_profile;
use dichotomy_lab::generate::{self, Dist};

fn main() -> dichotomy_lab::Result<()> {
    let m = generate::random(6, 6, 3, Dist::Grid(4))?;
    let profile = defect_profile(&m, 6)?;
    for e in &profile.entries {
        match (&e.gap, &e.witness) {
            (Some(gap), Some(w)) => println!(
                "k = {}: gap {gap} at ({}, {})",
                e.k,
                w.thresholds().s(),
                w.thresholds().r()
            ),
            _ => println!("k = {}: none", e.k),
        }
    }
    Ok(())
}
