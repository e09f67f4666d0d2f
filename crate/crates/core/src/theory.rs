//! Analytical companions to the sweep: the MAE spread range `d_i`, the bound
//! chains linking MAE, RMSE and U_A, the envelope curves those bounds trace out,
//! closed-form moments of the simulated error families, and a coarse trend
//! classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distgen::DistSpec;
use crate::error::{Error, Result};
use crate::metrics::{self, ErrorVector};
use crate::sum::ExactSum;

/// Width of the interval that the MAE of any size-`i` subset must fall in:
/// `d_i = (sum of the i largest |e|  -  sum of the i smallest |e|) / i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeCurve {
    pub sizes: Vec<usize>,
    pub d: Vec<f64>,
}

fn sub_product(acc: &mut ExactSum, a: f64, b: f64) {
    let p = a * b;
    acc.add(-p);
    acc.add(-a.mul_add(b, -p));
}

/// `D / divisor`, correctly rounded, where `D` is the exact value held by `acc`.
///
/// Correct rounding is monotone, so ordering and equality of the exact quotients
/// carry over to the floats.
fn rounded_quotient(acc: &ExactSum, divisor: f64) -> f64 {
    let mut q = acc.value() / divisor;
    // The first guess is at most a couple of ulps off; each pass moves one ulp.
    for _ in 0..8 {
        let mut r = acc.clone();
        sub_product(&mut r, q, divisor);
        let rv = r.value();
        if rv == 0.0 {
            return q;
        }
        let step = if rv > 0.0 { q.next_up() } else { q.next_down() };
        let half_gap = (step - q) / 2.0;
        sub_product(&mut r, half_gap, divisor);
        let past_midpoint = r.value();
        if past_midpoint == 0.0 {
            return if q.to_bits() & 1 == 0 { q } else { step };
        }
        if (past_midpoint > 0.0) != (rv > 0.0) {
            return q;
        }
        q = step;
    }
    q
}

pub fn range_curve(e: &ErrorVector) -> RangeCurve {
    let mut abs: Vec<f64> = e.as_slice().iter().map(|v| v.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let n = abs.len();
    let mut diff = ExactSum::new();
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        diff.add(abs[n - 1 - i]);
        diff.add(-abs[i]);
        d.push(rounded_quotient(&diff, (i + 1) as f64));
    }
    RangeCurve {
        sizes: (1..=n).collect(),
        d,
    }
}

/// `d_{i+1} - d_i` for `1 <= i <= n-1`. Never positive.
pub fn delta_d(e: &ErrorVector, i: usize) -> Result<f64> {
    let n = e.len();
    if i == 0 || i >= n {
        return Err(Error::input(format!(
            "size index {i} out of range 1..={} for {n} errors",
            n.saturating_sub(1)
        )));
    }
    let curve = range_curve(e);
    Ok(curve.d[i] - curve.d[i - 1])
}

/// Bound curves for a fixed MAE: `f_mae(n) = MAE`, `f_rmse(n) = √n·MAE`,
/// `f_ua(n) = MAE/√n`, for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCurves {
    pub mae: f64,
    pub sizes: Vec<usize>,
    pub f_mae: Vec<f64>,
    pub f_rmse: Vec<f64>,
    pub f_ua: Vec<f64>,
}

pub fn envelope(mae: f64, n_max: usize) -> Result<EnvelopeCurves> {
    if !(mae.is_finite() && mae > 0.0) {
        return Err(Error::input(format!(
            "mae must be positive and finite, got {mae}"
        )));
    }
    if n_max == 0 {
        return Err(Error::input("n_max must be at least 1"));
    }
    let sizes: Vec<usize> = (1..=n_max).collect();
    let root = |n: usize| (n as f64).sqrt();
    Ok(EnvelopeCurves {
        mae,
        f_mae: vec![mae; n_max],
        f_rmse: sizes.iter().map(|&n| root(n) * mae).collect(),
        f_ua: sizes.iter().map(|&n| mae / root(n)).collect(),
        sizes,
    })
}

/// `a <= b` allowing `a` to exceed `b` by at most `ulps` units in the last place.
fn le_within(a: f64, b: f64, ulps: u32) -> bool {
    let mut bound = b;
    for _ in 0..ulps {
        bound = bound.next_up();
    }
    a <= bound
}

/// Tolerance used by [`bounds_check`], in units in the last place.
pub const BOUND_ULPS: u32 = 1;

/// The two bound chains `MAE <= RMSE <= √n·MAE` and `MAE/√n <= U_A <= MAE`
/// evaluated on one error vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub mae: f64,
    pub rmse: f64,
    pub u_a: f64,
    pub sqrt_n_mae: f64,
    pub mae_over_sqrt_n: f64,
    pub mae_le_rmse: bool,
    pub rmse_le_sqrt_n_mae: bool,
    pub mae_over_sqrt_n_le_u_a: bool,
    pub u_a_le_mae: bool,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.mae_le_rmse
            && self.rmse_le_sqrt_n_mae
            && self.mae_over_sqrt_n_le_u_a
            && self.u_a_le_mae
    }
}

/// Verdicts allow [`BOUND_ULPS`] of rounding slack.
pub fn bounds_check(e: &ErrorVector) -> BoundsReport {
    let n = e.len();
    let root = (n as f64).sqrt();
    let mae = metrics::mae(e);
    let rmse = metrics::rmse(e);
    let u_a = rmse / root;
    let sqrt_n_mae = root * mae;
    let mae_over_sqrt_n = mae / root;
    BoundsReport {
        n,
        mae,
        rmse,
        u_a,
        sqrt_n_mae,
        mae_over_sqrt_n,
        mae_le_rmse: le_within(mae, rmse, BOUND_ULPS),
        rmse_le_sqrt_n_mae: le_within(rmse, sqrt_n_mae, BOUND_ULPS),
        mae_over_sqrt_n_le_u_a: le_within(mae_over_sqrt_n, u_a, BOUND_ULPS),
        u_a_le_mae: le_within(u_a, mae, BOUND_ULPS),
    }
}

/// Exact population quantities of `|X|` for a simulated error family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticMoments {
    /// `E|X|`, the limit of MAE.
    pub mean_abs: f64,
    /// `sqrt(E[X²])`, the limit of RMSE.
    pub rms: f64,
    pub median_abs: f64,
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Root of an increasing function on `[lo, hi]` by bisection to full precision.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo + (hi - lo) / 2.0
}

pub fn analytic_moments(spec: &DistSpec) -> Result<AnalyticMoments> {
    spec.validate()?;
    let m = match *spec {
        DistSpec::Normal { mean, sd } => {
            let z = mean / sd;
            let mean_abs = sd * (2.0 / std::f64::consts::PI).sqrt() * libm::exp(-z * z / 2.0)
                + mean * (1.0 - 2.0 * std_normal_cdf(-z));
            let cdf_abs =
                |t: f64| std_normal_cdf((t - mean) / sd) - std_normal_cdf((-t - mean) / sd);
            AnalyticMoments {
                mean_abs,
                rms: mean.hypot(sd),
                median_abs: bisect(0.0, mean.abs() + 40.0 * sd, |t| cdf_abs(t) - 0.5),
            }
        }
        DistSpec::Exponential { rate } => AnalyticMoments {
            mean_abs: 1.0 / rate,
            rms: std::f64::consts::SQRT_2 / rate,
            median_abs: std::f64::consts::LN_2 / rate,
        },
        DistSpec::Lognormal { mu, sigma } => AnalyticMoments {
            mean_abs: libm::exp(mu + sigma * sigma / 2.0),
            rms: libm::exp(mu + sigma * sigma),
            median_abs: libm::exp(mu),
        },
        DistSpec::Uniform { low, high } => {
            let rms = ((low * low + low * high + high * high) / 3.0).sqrt();
            let (mean_abs, median_abs) = if low >= 0.0 {
                ((low + high) / 2.0, (low + high) / 2.0)
            } else if high <= 0.0 {
                (-(low + high) / 2.0, -(low + high) / 2.0)
            } else {
                let width = high - low;
                let short = (-low).min(high);
                let median = if 2.0 * short / width >= 0.5 {
                    width / 4.0
                } else {
                    width / 2.0 - short
                };
                ((low * low + high * high) / (2.0 * width), median)
            };
            AnalyticMoments {
                mean_abs,
                rms,
                median_abs,
            }
        }
    };
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Up,
    Down,
    Flat,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Up => "up",
            Trend::Down => "down",
            Trend::Flat => "flat",
        })
    }
}

pub const DEFAULT_TREND_THRESHOLD: f64 = 0.05;

/// Compares the mean of the first quarter of `curve` with the mean of the last
/// quarter; a relative change beyond `threshold` is a trend.
pub fn classify_trend(curve: &[f64], threshold: f64) -> Result<Trend> {
    if curve.len() < 4 {
        return Err(Error::input(format!(
            "trend needs at least 4 points, got {}",
            curve.len()
        )));
    }
    if let Some(index) = curve.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::input("threshold must be nonnegative"));
    }
    let q = curve.len() / 4;
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let head = mean(&curve[..q]);
    let tail = mean(&curve[curve.len() - q..]);
    let scale = head.abs();
    let change = tail - head;
    if change == 0.0 {
        return Ok(Trend::Flat);
    }
    let rel = if scale > 0.0 {
        change / scale
    } else {
        change.signum() * f64::INFINITY
    };
    Ok(if rel > threshold {
        Trend::Up
    } else if rel < -threshold {
        Trend::Down
    } else {
        Trend::Flat
    })
}
