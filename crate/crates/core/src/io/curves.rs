//! Long-format curve tables.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::{version_meta, write_meta, DataFormat};
use crate::error::{Error, Result};
use crate::sweep::SweepResult;
use crate::theory::{EnvelopeCurves, RangeCurve};

pub const CURVES_HEADER: &str = "metric,n,value,lo,hi,sd";

/// Curve identifiers. Declared in lexical order of their names so that the
/// derived `Ord` matches the written row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveMetric {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "f_mae")]
    FMae,
    #[serde(rename = "f_rmse")]
    FRmse,
    #[serde(rename = "f_ua")]
    FUa,
    #[serde(rename = "mae")]
    Mae,
    #[serde(rename = "rmse")]
    Rmse,
    #[serde(rename = "u_a")]
    UA,
}

impl CurveMetric {
    pub fn name(self) -> &'static str {
        match self {
            CurveMetric::D => "d",
            CurveMetric::FMae => "f_mae",
            CurveMetric::FRmse => "f_rmse",
            CurveMetric::FUa => "f_ua",
            CurveMetric::Mae => "mae",
            CurveMetric::Rmse => "rmse",
            CurveMetric::UA => "u_a",
        }
    }

    /// Human-facing label for legends.
    pub fn label(self) -> &'static str {
        match self {
            CurveMetric::D => "d",
            CurveMetric::FMae => "f_MAE",
            CurveMetric::FRmse => "f_RMSE",
            CurveMetric::FUa => "f_UA",
            CurveMetric::Mae => "MAE",
            CurveMetric::Rmse => "RMSE",
            CurveMetric::UA => "U_A",
        }
    }
}

impl fmt::Display for CurveMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => CurveMetric::D,
            "f_mae" => CurveMetric::FMae,
            "f_rmse" => CurveMetric::FRmse,
            "f_ua" => CurveMetric::FUa,
            "mae" => CurveMetric::Mae,
            "rmse" => CurveMetric::Rmse,
            "u_a" => CurveMetric::UA,
            other => return Err(Error::input(format!("unknown curve metric `{other}`"))),
        })
    }
}

/// One point. `lo`, `hi` and `sd` are present only for resampled curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub metric: CurveMetric,
    pub n: usize,
    pub value: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub sd: Option<f64>,
}

impl CurveRow {
    fn exact(metric: CurveMetric, n: usize, value: f64) -> Self {
        Self {
            metric,
            n,
            value,
            lo: None,
            hi: None,
            sd: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurvesTable {
    /// `(key, value)` metadata, in insertion order.
    pub meta: Vec<(String, String)>,
    rows: Vec<CurveRow>,
}

impl CurvesTable {
    /// Sorts rows by `(metric, n)`; duplicate `(metric, n)` pairs are rejected.
    pub fn new(meta: Vec<(String, String)>, mut rows: Vec<CurveRow>) -> Result<Self> {
        rows.sort_by_key(|r| (r.metric, r.n));
        if let Some(w) = rows
            .windows(2)
            .find(|w| (w[0].metric, w[0].n) == (w[1].metric, w[1].n))
        {
            return Err(Error::input(format!(
                "duplicate row for {} at n = {}",
                w[0].metric, w[0].n
            )));
        }
        Ok(Self { meta, rows })
    }

    pub fn rows(&self) -> &[CurveRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Distinct metrics present, in row order.
    pub fn metrics(&self) -> Vec<CurveMetric> {
        let mut out: Vec<CurveMetric> = self.rows.iter().map(|r| r.metric).collect();
        out.dedup();
        out
    }

    pub fn curve(&self, metric: CurveMetric) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(move |r| r.metric == metric)
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.push((key.into(), value.to_string()));
    }
}

fn meta(kind: &str) -> Vec<(String, String)> {
    vec![version_meta(), ("kind".into(), kind.into())]
}

impl From<&SweepResult> for CurvesTable {
    fn from(r: &SweepResult) -> Self {
        let c = &r.meta.config;
        let mut m = meta("sweep");
        for (k, v) in [
            ("n_min", c.n_min.to_string()),
            ("n_max", c.n_max.map_or_else(String::new, |n| n.to_string())),
            ("n_step", c.n_step.to_string()),
            ("reps", c.reps.to_string()),
            ("aggregation", c.aggregation.to_string()),
            ("replacement", c.replacement.to_string()),
            ("seed", c.seed.to_string()),
            ("generator", r.meta.generator.clone()),
            ("population", r.meta.population.to_string()),
        ] {
            m.push((k.into(), v));
        }
        let mut rows = Vec::with_capacity(3 * r.sizes.len());
        for (metric, band) in [
            (CurveMetric::Mae, &r.mae),
            (CurveMetric::Rmse, &r.rmse),
            (CurveMetric::UA, &r.u_a),
        ] {
            for (i, &n) in r.sizes.iter().enumerate() {
                rows.push(CurveRow {
                    metric,
                    n,
                    value: band.value[i],
                    lo: Some(band.min[i]),
                    hi: Some(band.max[i]),
                    sd: Some(band.sd[i]),
                });
            }
        }
        CurvesTable::new(m, rows).expect("sweep sizes are unique")
    }
}

impl From<&RangeCurve> for CurvesTable {
    fn from(r: &RangeCurve) -> Self {
        let rows = r
            .sizes
            .iter()
            .zip(&r.d)
            .map(|(&n, &d)| CurveRow::exact(CurveMetric::D, n, d))
            .collect();
        CurvesTable::new(meta("range"), rows).expect("range sizes are unique")
    }
}

impl From<&EnvelopeCurves> for CurvesTable {
    fn from(env: &EnvelopeCurves) -> Self {
        let mut m = meta("envelope");
        m.push(("mae".into(), env.mae.to_string()));
        let mut rows = Vec::with_capacity(3 * env.sizes.len());
        for (metric, curve) in [
            (CurveMetric::FMae, &env.f_mae),
            (CurveMetric::FRmse, &env.f_rmse),
            (CurveMetric::FUa, &env.f_ua),
        ] {
            rows.extend(
                env.sizes
                    .iter()
                    .zip(curve)
                    .map(|(&n, &v)| CurveRow::exact(metric, n, v)),
            );
        }
        CurvesTable::new(m, rows).expect("envelope sizes are unique")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn write_curves(
    w: &mut dyn Write,
    table: &CurvesTable,
    format: DataFormat,
) -> std::io::Result<()> {
    match format {
        DataFormat::Csv => {
            write_meta(w, &table.meta)?;
            writeln!(w, "{CURVES_HEADER}")?;
            for r in &table.rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r.metric,
                    r.n,
                    r.value,
                    opt(r.lo),
                    opt(r.hi),
                    opt(r.sd)
                )?;
            }
            Ok(())
        }
        DataFormat::Json => {
            let meta: Map<String, Value> = table
                .meta
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            let doc = json!({ "meta": meta, "rows": table.rows });
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        }
    }
}

fn format_err(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn parse_csv(path: &Path, text: &str) -> Result<CurvesTable> {
    let mut meta = Vec::new();
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = (idx + 1) as u64;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if !header_seen {
            if let Some(comment) = raw.strip_prefix('#') {
                if let Some((k, v)) = comment.trim().split_once(':') {
                    meta.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            if raw.trim() != CURVES_HEADER {
                return Err(format_err(
                    path,
                    line,
                    format!("expected header `{CURVES_HEADER}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        if raw.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = raw.split(',').map(str::trim).collect();
        if cells.len() != 6 {
            return Err(format_err(
                path,
                line,
                format!("expected 6 fields, found {}", cells.len()),
            ));
        }
        let metric = cells[0]
            .parse()
            .map_err(|e: Error| format_err(path, line, e.to_string()))?;
        let n = cells[1]
            .parse()
            .map_err(|_| format_err(path, line, format!("n: `{}` is not a count", cells[1])))?;
        let num = |s: &str, col: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| format_err(path, line, format!("{col}: `{s}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format_err(
                    path,
                    line,
                    format!("{col}: `{s}` is not finite"),
                ))
            }
        };
        let maybe = |s: &str, col: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, col).map(Some)
            }
        };
        rows.push(CurveRow {
            metric,
            n,
            value: num(cells[2], "value")?,
            lo: maybe(cells[3], "lo")?,
            hi: maybe(cells[4], "hi")?,
            sd: maybe(cells[5], "sd")?,
        });
    }
    if !header_seen {
        return Err(format_err(path, 1, "missing header"));
    }
    CurvesTable::new(meta, rows)
}

#[derive(Deserialize)]
struct JsonDoc {
    #[serde(default)]
    meta: Map<String, Value>,
    rows: Vec<CurveRow>,
}

fn parse_json(path: &Path, text: &str) -> Result<CurvesTable> {
    let doc: JsonDoc =
        serde_json::from_str(text).map_err(|e| format_err(path, e.line() as u64, e.to_string()))?;
    let meta = doc
        .meta
        .into_iter()
        .map(|(k, v)| {
            let v = match v {
                Value::String(s) => s,
                other => other.to_string(),
            };
            (k, v)
        })
        .collect();
    CurvesTable::new(meta, doc.rows)
}

/// Reads a curves file written by [`write_curves`], detecting CSV or JSON from
/// the first non-blank character.
pub fn load_curves(path: impl AsRef<Path>) -> Result<CurvesTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with('{') {
        parse_json(path, &text)
    } else {
        parse_csv(path, &text)
    }
}
