//! Matrix files: a header row holding an empty cell and the column labels,
//! then one row per function with its label followed by its entries.
//! Entries are integers, decimals or `p/q`. The bound of a parsed matrix is
//! its largest absolute entry (1 for the zero matrix).

use std::io::{Read, Write};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::EvalMatrix;
use crate::rational::{format_rational, int, max_abs, parse_rational};

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.kind() {
        csv::ErrorKind::Io(_) => Error::Io(e.to_string()),
        _ => Error::Parse {
            line,
            column: 0,
            message: e.to_string(),
        },
    }
}

pub fn read_matrix<R: Read>(reader: R) -> Result<EvalMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty matrix file".into(),
            })
        }
    };
    let col_labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();

    let mut row_labels = Vec::new();
    let mut entries = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != col_labels.len() + 1 {
            return Err(Error::Parse {
                line,
                column: record.len(),
                message: format!(
                    "expected a label and {} entries, found {} cells",
                    col_labels.len(),
                    record.len()
                ),
            });
        }
        row_labels.push(record[0].to_owned());
        let row = record
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, cell)| {
                parse_rational(cell).map_err(|e| Error::Parse {
                    line,
                    column: j + 2,
                    message: format!("`{cell}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let largest = max_abs(entries.iter().flatten());
    let bound = if largest.is_zero() { int(1) } else { largest };
    EvalMatrix::new(row_labels, col_labels, entries, bound)
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<EvalMatrix> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_matrix(file)
}

pub fn write_matrix<W: Write>(m: &EvalMatrix, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let header = std::iter::once("").chain(m.col_labels().iter().map(String::as_str));
    w.write_record(header).map_err(csv_error)?;
    for (label, row) in m.row_labels().iter().zip(m.entries()) {
        let cells = std::iter::once(label.clone()).chain(row.iter().map(format_rational));
        w.write_record(cells).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(m: &EvalMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix(m, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}
