//! CSV with `#` comment headers. Numbers are written in the shortest form
//! that parses back to the same double.

use std::path::Path;

use burgers_core::grid::{Field1D, Grid1D};

use crate::error::CliError;

pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn to_csv(comments: &[String], header: &[&str], rows: &[Vec<f64>]) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    for c in comments {
        out.extend_from_slice(b"# ");
        out.extend_from_slice(c.as_bytes());
        out.push(b'\n');
    }
    let mut w = csv::Writer::from_writer(&mut out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_f64(*v))).map_err(io)?;
    }
    w.flush()?;
    drop(w);
    Ok(out)
}

/// Reads numeric rows, skipping `#` comments and the header line.
pub fn read_rows(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let bad = |msg: String| CliError::Validation(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let header = reader
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let row = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| bad(format!("row {}: `{s}` is not a number", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Reads a snapshot (`coordinate, omega`) and recovers its grid. The
/// coordinates must be exactly those of a symmetric uniform grid.
pub fn read_snapshot(path: &Path) -> Result<Field1D, CliError> {
    let bad = |msg: String| CliError::Validation(format!("{}: {msg}", path.display()));
    let (header, rows) = read_rows(path)?;
    if header.len() < 2 {
        return Err(bad("expected columns coordinate, omega".into()));
    }
    if rows.len() < 3 {
        return Err(bad("need at least 3 rows".into()));
    }
    let half_width = rows[rows.len() - 1][0];
    let grid = Grid1D::new(half_width, rows.len()).map_err(|e| bad(e.to_string()))?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() < 2 {
            return Err(bad(format!("row {} has fewer than 2 columns", i + 1)));
        }
        if row[0] != grid.coord(i) {
            return Err(bad(format!(
                "row {}: coordinate {} is not node {} of the uniform grid on [-{half_width}, {half_width}]",
                i + 1,
                row[0],
                i
            )));
        }
    }
    Field1D::new(grid, rows.iter().map(|r| r[1]).collect()).map_err(|e| bad(e.to_string()))
}
