//! Monochromatic triples in pair colorings.

use dichotomy_lab::ramsey::{ramsey_pairs, PairColoring, RamseyOutcome};

fn main() -> dichotomy_lab::Result<()> {
    let mut found = 0;
    for mask in 0u64..1 << 15 {
        let c = PairColoring::from_mask(6, mask)?;
        if ramsey_pairs(&c, 3)?.subset().is_some() {
            found += 1;
        }
    }
    println!("K6: {found} of 32768 colorings have a monochromatic triangle");

    let pentagon = PairColoring::from_fn(5, |i, j| u8::from(matches!(j - i, 1 | 4)))?;
    match ramsey_pairs(&pentagon, 3)? {
        RamseyOutcome::Homogeneous { color, subset } => println!("pentagon: {subset:?} in color {color}"),
        RamseyOutcome::Failure { color, largest, exhausted } => {
            println!("pentagon: none (largest {largest:?} in color {color}, exhausted {exhausted})")
        }
    }
    Ok(())
}
