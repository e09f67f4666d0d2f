use std::fs::File;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{Error, Result};
use crate::metrics::ErrorVector;

/// Paired predictions and observations, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct PairsTable {
    pub ids: Option<Vec<String>>,
    pub predicted: Vec<f64>,
    pub observed: Vec<f64>,
}

impl PairsTable {
    pub fn len(&self) -> usize {
        self.predicted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predicted.is_empty()
    }

    pub fn errors(&self) -> Result<ErrorVector> {
        ErrorVector::from_pairs(&self.predicted, &self.observed)
    }
}

/// Which layout an input file is read as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputKind {
    /// Decide from the header.
    #[default]
    Auto,
    Pairs,
    Errors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Pairs { id: bool },
    Errors,
}

struct Table {
    layout: Layout,
    rows: Vec<(u64, StringRecord)>,
}

fn format_err(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn read_table(path: &Path) -> Result<Table> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(Trim::All)
        .from_reader(file);

    let mut records = rdr.records();
    let header = match records.next() {
        None => return Err(format_err(path, 1, "missing header")),
        Some(rec) => rec.map_err(|e| csv_err(path, e))?,
    };
    let header_line = header.position().map_or(1, |p| p.line());
    let cols: Vec<&str> = header.iter().collect();
    let layout = match cols.as_slice() {
        ["predicted", "observed"] => Layout::Pairs { id: false },
        ["id", "predicted", "observed"] => Layout::Pairs { id: true },
        ["error"] => Layout::Errors,
        _ => {
            return Err(format_err(
                path,
                header_line,
                format!(
                    "unknown header `{}`; expected `predicted,observed`, `id,predicted,observed` or `error`",
                    cols.join(",")
                ),
            ))
        }
    };
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line());
        rows.push((line, rec));
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    Ok(Table { layout, rows })
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => format_err(
            path,
            line,
            format!("expected {expected_len} fields, found {len}"),
        ),
        other => format_err(path, line, format!("{other:?}")),
    }
}

fn number(path: &Path, line: u64, field: &str, column: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| format_err(path, line, format!("{column}: `{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(format_err(
            path,
            line,
            format!("{column}: `{field}` is not finite"),
        ));
    }
    Ok(v)
}

fn pairs_from(path: &Path, t: &Table, id: bool) -> Result<PairsTable> {
    let off = usize::from(id);
    let mut out = PairsTable {
        ids: id.then(Vec::new),
        predicted: Vec::with_capacity(t.rows.len()),
        observed: Vec::with_capacity(t.rows.len()),
    };
    for (line, rec) in &t.rows {
        if let Some(ids) = out.ids.as_mut() {
            ids.push(rec[0].to_string());
        }
        out.predicted
            .push(number(path, *line, &rec[off], "predicted")?);
        out.observed
            .push(number(path, *line, &rec[off + 1], "observed")?);
    }
    Ok(out)
}

fn errors_from(path: &Path, t: &Table) -> Result<ErrorVector> {
    let values = t
        .rows
        .iter()
        .map(|(line, rec)| number(path, *line, &rec[0], "error"))
        .collect::<Result<Vec<_>>>()?;
    ErrorVector::new(values)
}

/// Reads a `predicted,observed` (or `id,predicted,observed`) file.
pub fn load_pairs_csv(path: impl AsRef<Path>) -> Result<PairsTable> {
    let path = path.as_ref();
    let t = read_table(path)?;
    match t.layout {
        Layout::Pairs { id } => pairs_from(path, &t, id),
        Layout::Errors => Err(format_err(
            path,
            1,
            "expected a pairs file, found an `error` header",
        )),
    }
}

/// Reads a one-column `error` file.
pub fn load_errors_csv(path: impl AsRef<Path>) -> Result<ErrorVector> {
    let path = path.as_ref();
    let t = read_table(path)?;
    match t.layout {
        Layout::Errors => errors_from(path, &t),
        Layout::Pairs { .. } => Err(format_err(
            path,
            1,
            "expected an `error` header, found a pairs file",
        )),
    }
}

/// Reads either layout and returns the error vector.
pub fn load_input(path: impl AsRef<Path>, kind: InputKind) -> Result<ErrorVector> {
    let path = path.as_ref();
    match kind {
        InputKind::Pairs => load_pairs_csv(path)?.errors(),
        InputKind::Errors => load_errors_csv(path),
        InputKind::Auto => {
            let t = read_table(path)?;
            match t.layout {
                Layout::Pairs { id } => pairs_from(path, &t, id)?.errors(),
                Layout::Errors => errors_from(path, &t),
            }
        }
    }
}
