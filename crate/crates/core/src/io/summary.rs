use std::io::Write;

use crate::error::{Error, Result};
use crate::metrics::MetricsSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SummaryFormat {
    /// Aligned table at 3 significant figures.
    #[default]
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for SummaryFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(SummaryFormat::Text),
            "csv" => Ok(SummaryFormat::Csv),
            "json" => Ok(SummaryFormat::Json),
            other => Err(Error::input(format!("unknown format `{other}`"))),
        }
    }
}

const TEXT_HEADERS: [&str; 8] = [
    "N", "MAE", "e_max", "e_min", "e_median", "RMSE", "U_A", "bias",
];
const CSV_HEADER: &str = "n,mae,e_max,e_min,e_median,rmse,u_a,bias";
const WIDTH: usize = 10;

/// `v` rounded to `sig` significant figures. Fixed notation in `[1e-3, 1e5)`,
/// scientific outside it.
pub fn format_sig(v: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if v == 0.0 {
        return "0".to_string();
    }
    let mag = v.abs();
    if !(1e-3..1e5).contains(&mag) {
        return format!("{:.*e}", sig - 1, v);
    }
    let exp = mag.log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    // Rounding may carry into a new leading digit (9.996 -> 10.00).
    let digits = s.trim_start_matches('-').replace('.', "");
    let significant = digits.trim_start_matches('0').len();
    if significant > sig && decimals > 0 {
        format!("{:.*}", decimals - 1, v)
    } else {
        s
    }
}

fn fields(s: &MetricsSummary) -> [f64; 7] {
    [s.mae, s.e_max, s.e_min, s.e_median, s.rmse, s.u_a, s.bias]
}

/// Writes one summary row. Text rounds to 3 significant figures; CSV and JSON
/// keep full precision.
pub fn write_summary(
    w: &mut dyn Write,
    s: &MetricsSummary,
    format: SummaryFormat,
) -> std::io::Result<()> {
    match format {
        SummaryFormat::Text => {
            let head: Vec<String> = TEXT_HEADERS
                .iter()
                .map(|h| format!("{h:>WIDTH$}"))
                .collect();
            writeln!(w, "{}", head.join(""))?;
            let mut row = format!("{:>WIDTH$}", s.n);
            for v in fields(s) {
                row.push_str(&format!("{:>WIDTH$}", format_sig(v, 3)));
            }
            writeln!(w, "{row}")
        }
        SummaryFormat::Csv => {
            writeln!(w, "{CSV_HEADER}")?;
            let vals: Vec<String> = fields(s).iter().map(|v| v.to_string()).collect();
            writeln!(w, "{},{}", s.n, vals.join(","))
        }
        SummaryFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, s)?;
            writeln!(w)
        }
    }
}
