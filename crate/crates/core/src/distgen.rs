//! Simulated error sets and histograms.
//!
//! Normal deviates come from the Box–Muller transform (both outputs of each pair
//! are used), exponential from the inverse CDF, lognormal as `exp` of a normal.
//! Transcendentals go through `libm` so the bit pattern of every draw is the same
//! on every platform.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::ErrorVector;
use crate::random::{Domain, Stream};

/// Number of draws in a simulated error set unless told otherwise.
pub const DEFAULT_COUNT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Normal,
    Exponential,
    Lognormal,
    Uniform,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Normal,
        Family::Exponential,
        Family::Lognormal,
        Family::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::Exponential => "exponential",
            Family::Lognormal => "lognormal",
            Family::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "gaussian" => Ok(Family::Normal),
            "exponential" | "exp" => Ok(Family::Exponential),
            "lognormal" => Ok(Family::Lognormal),
            "uniform" => Ok(Family::Uniform),
            other => Err(Error::input(format!(
                "unsupported distribution family `{other}`"
            ))),
        }
    }
}

/// An error distribution with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum DistSpec {
    Normal {
        mean: f64,
        sd: f64,
    },
    Exponential {
        rate: f64,
    },
    /// `exp(N(mu, sigma²))`.
    Lognormal {
        mu: f64,
        sigma: f64,
    },
    /// Half-open `[low, high)`.
    Uniform {
        low: f64,
        high: f64,
    },
}

impl DistSpec {
    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        DistSpec::Normal { mean, sd }.validated()
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        DistSpec::Exponential { rate }.validated()
    }

    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        DistSpec::Lognormal { mu, sigma }.validated()
    }

    pub fn uniform(low: f64, high: f64) -> Result<Self> {
        DistSpec::Uniform { low, high }.validated()
    }

    /// Standard member of each family: N(0,1), Exp(1), LogN(0,1), U(0,1).
    pub fn standard(family: Family) -> Self {
        match family {
            Family::Normal => DistSpec::Normal { mean: 0.0, sd: 1.0 },
            Family::Exponential => DistSpec::Exponential { rate: 1.0 },
            Family::Lognormal => DistSpec::Lognormal {
                mu: 0.0,
                sigma: 1.0,
            },
            Family::Uniform => DistSpec::Uniform {
                low: 0.0,
                high: 1.0,
            },
        }
    }

    /// Builds a spec from a positional parameter list; an empty list selects
    /// [`DistSpec::standard`].
    pub fn from_params(family: Family, params: &[f64]) -> Result<Self> {
        if params.is_empty() {
            return Ok(Self::standard(family));
        }
        let want = match family {
            Family::Exponential => 1,
            _ => 2,
        };
        if params.len() != want {
            return Err(Error::input(format!(
                "{family} takes {want} parameter(s), got {}",
                params.len()
            )));
        }
        match family {
            Family::Normal => Self::normal(params[0], params[1]),
            Family::Exponential => Self::exponential(params[0]),
            Family::Lognormal => Self::lognormal(params[0], params[1]),
            Family::Uniform => Self::uniform(params[0], params[1]),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            DistSpec::Normal { .. } => Family::Normal,
            DistSpec::Exponential { .. } => Family::Exponential,
            DistSpec::Lognormal { .. } => Family::Lognormal,
            DistSpec::Uniform { .. } => Family::Uniform,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            DistSpec::Normal { mean, sd } => vec![mean, sd],
            DistSpec::Exponential { rate } => vec![rate],
            DistSpec::Lognormal { mu, sigma } => vec![mu, sigma],
            DistSpec::Uniform { low, high } => vec![low, high],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.params().iter().any(|p| !p.is_finite()) {
            return Err(Error::input("distribution parameters must be finite"));
        }
        let ok = match *self {
            DistSpec::Normal { sd, .. } => sd > 0.0,
            DistSpec::Exponential { rate } => rate > 0.0,
            DistSpec::Lognormal { sigma, .. } => sigma > 0.0,
            DistSpec::Uniform { low, high } => low < high,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!("invalid parameters for {self}")))
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|()| self)
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family(), params.join(","))
    }
}

fn standard_normal_pair(stream: &mut Stream) -> (f64, f64) {
    let u1 = stream.uniform_open0();
    let u2 = stream.uniform();
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let theta = 2.0 * std::f64::consts::PI * u2;
    (r * libm::cos(theta), r * libm::sin(theta))
}

/// Draws `count` values from `spec`. The output is a pure function of
/// `(spec, count, seed)`.
pub fn gen_errors(spec: &DistSpec, count: usize, seed: u64) -> Result<ErrorVector> {
    if count == 0 {
        return Err(Error::input("count must be at least 1"));
    }
    spec.validate()?;
    let mut stream = Stream::new(seed, Domain::Generate, 0, 0);
    let mut out = Vec::with_capacity(count);
    match *spec {
        DistSpec::Normal { mean, sd } => {
            fill_normal(&mut stream, count, &mut out, |z| mean + sd * z)
        }
        DistSpec::Lognormal { mu, sigma } => {
            fill_normal(&mut stream, count, &mut out, |z| libm::exp(mu + sigma * z))
        }
        DistSpec::Exponential { rate } => {
            out.extend((0..count).map(|_| -libm::log(stream.uniform_open0()) / rate))
        }
        DistSpec::Uniform { low, high } => out.extend((0..count).map(|_| {
            let x = low + (high - low) * stream.uniform();
            if x < high {
                x
            } else {
                high.next_down()
            }
        })),
    }
    ErrorVector::new(out)
}

fn fill_normal(stream: &mut Stream, count: usize, out: &mut Vec<f64>, map: impl Fn(f64) -> f64) {
    while out.len() < count {
        let (a, b) = standard_normal_pair(stream);
        out.push(map(a));
        if out.len() < count {
            out.push(map(b));
        }
    }
}

/// Equal-width histogram: `counts.len() + 1` ascending edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Index of the most populated bin (first one on ties).
    pub fn modal_bin(&self) -> usize {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }
}

/// Equal-width bins over `[min(e), max(e)]`. Bins are half-open except the last,
/// which also includes `max(e)`. A constant vector yields one unit-width bin
/// centred on the value.
pub fn histogram(e: &ErrorVector, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::input("bins must be at least 1"));
    }
    let v = e.as_slice();
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Ok(Histogram {
            bin_edges: vec![lo - 0.5, lo + 0.5],
            counts: vec![v.len() as u64],
        });
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
    edges.push(hi);
    let mut counts = vec![0u64; bins];
    for &x in v {
        let mut i = (((x - lo) / width) as usize).min(bins - 1);
        // The division can land one bin off near an edge; the edges are authoritative.
        while i + 1 < bins && x >= edges[i + 1] {
            i += 1;
        }
        while i > 0 && x < edges[i] {
            i -= 1;
        }
        counts[i] += 1;
    }
    Ok(Histogram {
        bin_edges: edges,
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Identity,
    Absolute,
    Squared,
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "original" => Ok(Transform::Identity),
            "absolute" | "abs" => Ok(Transform::Absolute),
            "squared" | "square" => Ok(Transform::Squared),
            other => Err(Error::input(format!("unknown transform `{other}`"))),
        }
    }
}

pub fn transform_errors(e: &ErrorVector, kind: Transform) -> Result<ErrorVector> {
    let v = e.as_slice();
    let out = match kind {
        Transform::Identity => v.to_vec(),
        Transform::Absolute => v.iter().map(|x| x.abs()).collect(),
        Transform::Squared => v.iter().map(|x| x * x).collect(),
    };
    // Squaring can overflow to infinity.
    ErrorVector::new(out)
}
