//! Reading a labelled matrix, normalizing its entries, and a parse error.

use dichotomy_lab::csv_io::{read_matrix, to_csv_string};

fn main() -> dichotomy_lab::Result<()> {
    let text = "\
,x0,x1,x2
p, 0.5, -2/4, 1
q, 3/9, 0.125, -1
";
    let m = read_matrix(text.as_bytes())?;
    println!("{} x {}, bound {}", m.rows(), m.cols(), m.bound());
    print!("{}", to_csv_string(&m));

    match read_matrix(",a,b\nr,1,two\n".as_bytes()) {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
