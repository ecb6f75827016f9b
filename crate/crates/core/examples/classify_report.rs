//! Verdicts and Banach-space labels for three families, with the JSON
//! report of one of them.

use dichotomy_lab::generate;
use dichotomy_lab::rational::int;
use dichotomy_lab::report::ReportFile;
use dichotomy_lab::{classify, ClassificationParams};

fn main() -> dichotomy_lab::Result<()> {
    let params = ClassificationParams::with_cutoffs(3, 3);
    let cases = [
        ("L_8", generate::linear_order(8)?),
        ("shatter(5)", generate::shatter(5)?),
        ("constant", generate::constant(4, 4, int(1))?),
    ];
    for (name, m) in &cases {
        let r = classify(m, &params)?;
        println!(
            "{name:>10}: order {} independence {} | stable {} nip {} | reflexive {} rosenthal {} wsc {}",
            r.max_order_rank(),
            r.max_independence_rank(),
            r.verdicts.stable_at_scale,
            r.verdicts.nip_at_scale,
            r.labels.reflexive_like,
            r.labels.rosenthal_like,
            r.labels.wsc_like,
        );
    }

    let m = generate::linear_order(3)?;
    let file = ReportFile::new(&m, &params, &classify(&m, &params)?);
    file.verify(&m)?;
    print!("{}", file.to_json());
    Ok(())
}
