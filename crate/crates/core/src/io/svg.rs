//! Standalone SVG line charts of curve tables.
//!
//! Each metric is drawn as exactly one `<polyline>`; resampled curves also get a
//! translucent min–max band drawn as a `<polygon>`. Axes and ticks use `<line>`
//! so that polylines map one-to-one onto curves.

use std::fmt::Write as _;
use std::path::Path;

use super::curves::{CurveMetric, CurvesTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    pub title: Option<String>,
    /// Logarithmic value axis; nonpositive points are dropped.
    pub log_y: bool,
}

const W: f64 = 720.0;
const H: f64 = 450.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn style(metric: CurveMetric) -> (&'static str, &'static str) {
    match metric {
        CurveMetric::Mae => ("#1f77b4", ""),
        CurveMetric::Rmse => ("#d62728", ""),
        CurveMetric::UA => ("#2ca02c", ""),
        CurveMetric::D => ("#9467bd", ""),
        CurveMetric::FMae => ("#1f77b4", " stroke-dasharray=\"6 4\""),
        CurveMetric::FRmse => ("#d62728", " stroke-dasharray=\"6 4\""),
        CurveMetric::FUa => ("#2ca02c", " stroke-dasharray=\"6 4\""),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Roughly five round tick values covering `[lo, hi]`.
fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if span <= 0.0 {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn t(&self, v: f64) -> f64 {
        let f = |x: f64| if self.log { x.log10() } else { x };
        let (a, b) = (f(self.lo), f(self.hi));
        if b > a {
            (f(v) - a) / (b - a)
        } else {
            0.5
        }
    }
}

type Point = (f64, f64, Option<(f64, f64)>);

/// Renders `table` to an SVG document string.
pub fn render_svg(table: &CurvesTable, opts: &SvgOptions) -> Result<String> {
    let keep = |v: f64| !opts.log_y || v > 0.0;
    let metrics = table.metrics();
    let points: Vec<(CurveMetric, Vec<Point>)> = metrics
        .iter()
        .map(|&m| {
            let pts = table
                .curve(m)
                .filter(|r| keep(r.value))
                .map(|r| {
                    let band = match (r.lo, r.hi) {
                        (Some(lo), Some(hi)) if keep(lo) && keep(hi) => Some((lo, hi)),
                        _ => None,
                    };
                    (r.n as f64, r.value, band)
                })
                .collect();
            (m, pts)
        })
        .filter(|(_, p): &(_, Vec<_>)| !p.is_empty())
        .collect();
    if points.is_empty() {
        return Err(Error::input(
            "nothing to plot: the curves table has no drawable rows",
        ));
    }

    let all = points.iter().flat_map(|(_, p)| p.iter());
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y, band) in all {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        let (a, b) = band.unwrap_or((y, y));
        y_lo = y_lo.min(y.min(a));
        y_hi = y_hi.max(y.max(b));
    }
    if !opts.log_y {
        y_lo = y_lo.min(0.0);
        let pad = (y_hi - y_lo).abs() * 0.05;
        y_hi += if pad > 0.0 { pad } else { 1.0 };
    } else if y_hi <= y_lo {
        y_lo /= 10.0;
        y_hi *= 10.0;
    }
    let xa = Axis {
        lo: x_lo,
        hi: x_hi,
        log: false,
    };
    let ya = Axis {
        lo: y_lo,
        hi: y_hi,
        log: opts.log_y,
    };
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let px = |x: f64| LEFT + xa.t(x) * pw;
    let py = |y: f64| TOP + (1.0 - ya.t(y)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    if let Some(title) = &opts.title {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
            LEFT + pw / 2.0,
            escape(title)
        );
    }

    // Axes.
    let _ = writeln!(
        s,
        "<line x1=\"{LEFT}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        TOP + ph,
        LEFT + pw,
        TOP + ph
    );
    let _ = writeln!(
        s,
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{}\" stroke=\"black\"/>",
        TOP + ph
    );
    for t in linear_ticks(x_lo, x_hi) {
        let x = px(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"black\"/>",
            TOP + ph,
            TOP + ph + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            TOP + ph + 18.0,
            tick_label(t)
        );
    }
    let y_ticks = if opts.log_y {
        let (a, b) = (y_lo.log10().floor() as i32, y_hi.log10().ceil() as i32);
        (a..=b)
            .map(|k| 10f64.powi(k))
            .filter(|v| *v >= y_lo && *v <= y_hi)
            .collect()
    } else {
        linear_ticks(y_lo, y_hi)
    };
    for t in y_ticks {
        let y = py(t);
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{y:.2}\" x2=\"{LEFT}\" y2=\"{y:.2}\" stroke=\"black\"/>",
            LEFT - 5.0
        );
        let label = if opts.log_y {
            format!("{t:e}")
        } else {
            tick_label(t)
        };
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{label}</text>",
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">sample size n</text>",
        LEFT + pw / 2.0,
        H - 10.0
    );

    // Bands, then lines on top.
    for (metric, pts) in &points {
        let (color, _) = style(*metric);
        let band: Vec<(f64, f64, f64)> = pts
            .iter()
            .filter_map(|&(x, _, b)| b.map(|(lo, hi)| (x, lo, hi)))
            .collect();
        if band.len() >= 2 {
            let mut poly: Vec<String> = band
                .iter()
                .map(|&(x, _, hi)| format!("{:.2},{:.2}", px(x), py(hi)))
                .collect();
            poly.extend(
                band.iter()
                    .rev()
                    .map(|&(x, lo, _)| format!("{:.2},{:.2}", px(x), py(lo))),
            );
            let _ = writeln!(
                s,
                "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.12\" stroke=\"none\"/>",
                poly.join(" ")
            );
        }
    }
    for (metric, pts) in &points {
        let (color, dash) = style(*metric);
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y, _)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline data-metric=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"{dash}/>",
            metric.name(),
            coords.join(" ")
        );
    }

    // Legend.
    for (i, (metric, _)) in points.iter().enumerate() {
        let (color, dash) = style(*metric);
        let y = TOP + 12.0 + 20.0 * i as f64;
        let x = LEFT + pw + 15.0;
        let _ = writeln!(
            s,
            "<line x1=\"{x}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>",
            x + 24.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            x + 30.0,
            y + 4.0,
            metric.label()
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(table: &CurvesTable, path: &Path, opts: &SvgOptions) -> Result<()> {
    let doc = render_svg(table, opts)?;
    std::fs::write(path, doc).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::curves::CurveRow;
    use crate::theory::envelope;

    #[test]
    fn one_polyline_per_curve() {
        let rows = vec![
            CurveRow {
                metric: CurveMetric::FMae,
                n: 1,
                value: 1.0,
                lo: None,
                hi: None,
                sd: None,
            },
            CurveRow {
                metric: CurveMetric::FMae,
                n: 2,
                value: 1.0,
                lo: None,
                hi: None,
                sd: None,
            },
        ];
        let t = CurvesTable::new(vec![], rows).unwrap();
        let svg = render_svg(&t, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(">f_MAE</text>"));
    }

    #[test]
    fn empty_table_rejected() {
        let t = CurvesTable::default();
        assert!(matches!(
            render_svg(&t, &SvgOptions::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn title_escaped_and_log_axis() {
        let t = CurvesTable::from(&envelope(1.0, 50).unwrap());
        let svg = render_svg(
            &t,
            &SvgOptions {
                title: Some("a < b & c".into()),
                log_y: true,
            },
        )
        .unwrap();
        assert!(svg.contains("a &lt; b &amp; c"));
        assert_eq!(svg.matches("<polyline").count(), 3);
    }

    #[test]
    fn ticks_are_round() {
        assert_eq!(linear_ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(linear_ticks(1.0, 200.0), vec![50.0, 100.0, 150.0, 200.0]);
    }
}
