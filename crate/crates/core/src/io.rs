//! CSV datasets: header `f0,...,f{d-1},label`, one row per sample. Features
//! are written in shortest round-trip decimal form, so reading back a
//! written file yields bit-identical values. Labels are opaque tokens.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub fn read_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    read_csv_from(BufReader::new(File::open(path)?))
}

/// Parse errors carry the 1-based line and column of the offending cell
/// (the header is line 1).
pub fn read_csv_from<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(h) => h?,
        None => return Err(Error::Shape("empty file".into())),
    };
    let n_cols = header.len();
    if n_cols < 2 {
        return Err(Error::Shape(format!(
            "need at least one feature column and a label column, header has {n_cols}"
        )));
    }
    let n_features = n_cols - 1;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != n_cols {
            return Err(Error::Shape(format!(
                "row {line} has {} cells, expected {n_cols}",
                rec.len()
            )));
        }
        for (c, cell) in rec.iter().take(n_features).enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: line,
                column: c + 1,
                message: format!("{cell:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    column: c + 1,
                    message: format!("{cell:?} is not finite"),
                });
            }
            features.push(v);
        }
        let label = &rec[n_features];
        if label.is_empty() {
            return Err(Error::Parse {
                row: line,
                column: n_cols,
                message: "empty label".into(),
            });
        }
        labels.push(label.to_owned());
    }
    Dataset::new(features, n_features, labels)
}

pub fn write_csv(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv_to(d, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_csv_to<W: Write>(d: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let mut header: Vec<String> = (0..d.n_features()).map(|i| format!("f{i}")).collect();
    header.push("label".into());
    w.write_record(&header)?;
    let mut record: Vec<String> = Vec::with_capacity(d.n_features() + 1);
    for i in 0..d.n_samples() {
        record.clear();
        record.extend(d.row(i).iter().map(|v| v.to_string()));
        record.push(d.label(i).to_owned());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// The bytes [`write_csv`] would produce.
pub fn to_csv_bytes(d: &Dataset) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv_to(d, &mut buf)?;
    Ok(buf)
}
