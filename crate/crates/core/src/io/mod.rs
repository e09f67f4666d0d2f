//! File formats and output.
//!
//! All text files are UTF-8 with `.` as the decimal separator; writers emit LF
//! line endings, readers accept LF or CRLF. Lines starting with `#` before the
//! header carry metadata. Machine formats print floats in shortest round-trip
//! form, so `load(write(x)) == x` bit for bit.
//!
//! | file | header |
//! |---|---|
//! | pairs | `predicted,observed` or `id,predicted,observed` |
//! | errors | `error` |
//! | histogram | `bin_lo,bin_hi,count` |
//! | summary | `n,mae,e_max,e_min,e_median,rmse,u_a,bias` |
//! | curves | `metric,n,value,lo,hi,sd` (long format, sorted by metric then n) |

mod curves;
mod read;
mod summary;
mod svg;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub use curves::{load_curves, write_curves, CurveMetric, CurveRow, CurvesTable};
pub use read::{load_errors_csv, load_input, load_pairs_csv, InputKind, PairsTable};
pub use summary::{format_sig, write_summary, SummaryFormat};
pub use svg::{render_svg, write_svg, SvgOptions};

use crate::distgen::Histogram;
use crate::error::{Error, Result};
use crate::metrics::ErrorVector;

/// Machine-readable output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DataFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for DataFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(DataFormat::Csv),
            "json" => Ok(DataFormat::Json),
            other => Err(Error::input(format!("unknown format `{other}`"))),
        }
    }
}

pub(crate) fn write_meta(w: &mut dyn Write, meta: &[(String, String)]) -> std::io::Result<()> {
    for (k, v) in meta {
        writeln!(w, "# {k}: {v}")?;
    }
    Ok(())
}

/// Error vector as a one-column CSV, optionally preceded by metadata comments.
pub fn write_errors_csv(
    w: &mut dyn Write,
    e: &ErrorVector,
    meta: &[(String, String)],
) -> std::io::Result<()> {
    write_meta(w, meta)?;
    writeln!(w, "error")?;
    for v in e.as_slice() {
        writeln!(w, "{v}")?;
    }
    Ok(())
}

pub fn write_histogram_csv(
    w: &mut dyn Write,
    h: &Histogram,
    meta: &[(String, String)],
) -> std::io::Result<()> {
    write_meta(w, meta)?;
    writeln!(w, "bin_lo,bin_hi,count")?;
    for (i, c) in h.counts.iter().enumerate() {
        writeln!(w, "{},{},{c}", h.bin_edges[i], h.bin_edges[i + 1])?;
    }
    Ok(())
}

/// Creates `path` and runs `f` against a buffered writer for it.
pub fn write_file(
    path: &Path,
    f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)
        .and_then(|()| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Metadata line identifying the producing library.
pub fn version_meta() -> (String, String) {
    (
        "sizetrend".to_string(),
        env!("CARGO_PKG_VERSION").to_string(),
    )
}
