//! Bootstrap sample-size sweep.
//!
//! For each subset size `n` on the grid, `reps` random subsets are drawn, MAE,
//! RMSE and U_A (RMSE/√n) are computed per subset, and the per-subset values are
//! aggregated into one point per curve. Cell `(n, r)` draws from its own random
//! stream (see [`crate::random`]), so the result depends only on the error set
//! and the [`SweepConfig`], never on thread count or scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{sorted_median, ErrorVector, Kernel, MetricTriple};
use crate::random::{Domain, Stream, GENERATOR_NAME};
use crate::sum::{exact_sum, ExactSum};

/// Upper end of the default size grid.
pub const DEFAULT_N_MAX: usize = 200;
pub const DEFAULT_REPS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    #[default]
    Mean,
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Replacement {
    /// Distinct indices per subset; the size-N subset is the whole set.
    #[default]
    Without,
    With,
}

macro_rules! keyword_enum {
    ($ty:ident { $($var:ident => $name:literal),+ }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $($ty::$var => $name),+ }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$var),)+
                    other => Err(Error::input(format!(
                        concat!("unknown ", stringify!($ty), " `{}`"), other
                    ))),
                }
            }
        }
    };
}

keyword_enum!(Aggregation { Mean => "mean", Median => "median" });
keyword_enum!(Replacement { Without => "without", With => "with" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_min: usize,
    /// `None` means `min(DEFAULT_N_MAX, N)`.
    pub n_max: Option<usize>,
    pub n_step: usize,
    pub reps: usize,
    pub aggregation: Aggregation,
    pub replacement: Replacement,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_min: 1,
            n_max: None,
            n_step: 1,
            reps: DEFAULT_REPS,
            aggregation: Aggregation::Mean,
            replacement: Replacement::Without,
            seed: 0,
        }
    }
}

impl SweepConfig {
    /// Resolves the default `n_max` against a data set of `len` values and checks
    /// every constraint.
    pub fn resolve(&self, len: usize) -> Result<SweepConfig> {
        let n_max = self.n_max.unwrap_or(DEFAULT_N_MAX.min(len));
        if self.n_min == 0 {
            return Err(Error::input("n_min must be at least 1"));
        }
        if self.n_step == 0 {
            return Err(Error::input("n_step must be at least 1"));
        }
        if self.reps == 0 {
            return Err(Error::input("reps must be at least 1"));
        }
        if self.n_min > n_max {
            return Err(Error::input(format!(
                "n_min {} exceeds n_max {n_max}",
                self.n_min
            )));
        }
        if self.replacement == Replacement::Without && n_max > len {
            return Err(Error::input(format!(
                "n_max {n_max} exceeds the {len} available errors (sampling without replacement)"
            )));
        }
        Ok(SweepConfig {
            n_max: Some(n_max),
            ..*self
        })
    }

    /// Subset sizes visited, in ascending order. Only meaningful on a resolved config.
    pub fn sizes(&self) -> Vec<usize> {
        let n_max = self.n_max.unwrap_or(self.n_min);
        (self.n_min..=n_max).step_by(self.n_step).collect()
    }
}

/// Per-size aggregate and spread of one metric across the repetitions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub value: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Sample standard deviation across repetitions (0 when `reps == 1`).
    pub sd: Vec<f64>,
}

impl Band {
    fn push(&mut self, values: &mut [f64], mode: Aggregation) {
        let stats = spread(values, mode);
        self.value.push(stats.0);
        self.min.push(stats.1);
        self.max.push(stats.2);
        self.sd.push(stats.3);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    /// Resolved configuration.
    pub config: SweepConfig,
    pub generator: String,
    /// Size of the error set that was resampled.
    pub population: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub sizes: Vec<usize>,
    pub mae: Band,
    pub rmse: Band,
    pub u_a: Band,
    pub meta: SweepMeta,
}

impl SweepResult {
    /// `(name, band)` for each metric, in output order.
    pub fn bands(&self) -> [(&'static str, &Band); 3] {
        [("mae", &self.mae), ("rmse", &self.rmse), ("u_a", &self.u_a)]
    }

    /// Index of subset size `n` on the grid.
    pub fn index_of(&self, n: usize) -> Option<usize> {
        self.sizes.binary_search(&n).ok()
    }

    /// Checks the structural invariants every sweep must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let len = self.sizes.len();
        for (name, b) in self.bands() {
            if [b.value.len(), b.min.len(), b.max.len(), b.sd.len()] != [len; 4] {
                return Err(Error::Invariant(format!("{name}: curve length mismatch")));
            }
            for i in 0..len {
                if !(b.min[i] <= b.value[i] && b.value[i] <= b.max[i]) {
                    return Err(Error::Invariant(format!(
                        "{name} at n = {}: aggregate {} outside [{}, {}]",
                        self.sizes[i], b.value[i], b.min[i], b.max[i]
                    )));
                }
            }
        }
        if self.sizes.first() == Some(&1)
            && !(self.mae.value[0] == self.rmse.value[0] && self.rmse.value[0] == self.u_a.value[0])
        {
            return Err(Error::Invariant("metrics differ at n = 1".into()));
        }
        Ok(())
    }
}

/// Mean or median of a nonempty slice. The mean is the correctly rounded sum
/// divided by the length, clamped to `[min, max]`.
pub fn aggregate(values: &[f64], mode: Aggregation) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(aggregate_sorted(&v, mode))
}

fn aggregate_sorted(sorted: &[f64], mode: Aggregation) -> f64 {
    match mode {
        Aggregation::Mean => {
            let m = exact_sum(sorted.iter().copied()) / sorted.len() as f64;
            m.clamp(sorted[0], sorted[sorted.len() - 1])
        }
        Aggregation::Median => sorted_median(sorted),
    }
}

/// `(aggregate, min, max, sd)`; sorts `values` in place.
fn spread(values: &mut [f64], mode: Aggregation) -> (f64, f64, f64, f64) {
    values.sort_by(f64::total_cmp);
    let agg = aggregate_sorted(values, mode);
    let (min, max) = (values[0], values[values.len() - 1]);
    let sd = if values.len() < 2 {
        0.0
    } else {
        let mean = aggregate_sorted(values, Aggregation::Mean);
        let mut acc = ExactSum::new();
        for v in values.iter() {
            acc.add((v - mean) * (v - mean));
        }
        (acc.value() / (values.len() - 1) as f64).sqrt()
    };
    (agg, min, max, sd)
}

/// Draws subsets from one error set, reusing its index buffer between draws.
///
/// Without replacement this is a partial Fisher–Yates shuffle that is undone
/// after each draw, so a draw of size `k` costs `O(k)` regardless of `N`.
pub struct Subsampler<'a> {
    data: &'a [f64],
    index: Vec<usize>,
    swaps: Vec<usize>,
    out: Vec<f64>,
}

impl<'a> Subsampler<'a> {
    pub fn new(e: &'a ErrorVector) -> Self {
        Self::from_slice(e.as_slice())
    }

    fn from_slice(data: &'a [f64]) -> Self {
        Self {
            data,
            index: (0..data.len()).collect(),
            swaps: Vec::new(),
            out: Vec::new(),
        }
    }

    /// One uniformly random subset of `size` values.
    pub fn draw(
        &mut self,
        size: usize,
        replacement: Replacement,
        stream: &mut Stream,
    ) -> Result<&[f64]> {
        let len = self.data.len();
        if size == 0 || (replacement == Replacement::Without && size > len) {
            return Err(Error::input(format!(
                "subset size {size} out of range for {len} values ({replacement} replacement)"
            )));
        }
        self.out.clear();
        match replacement {
            Replacement::With => {
                for _ in 0..size {
                    let k = stream.below(len as u64) as usize;
                    self.out.push(self.data[k]);
                }
            }
            Replacement::Without => {
                self.swaps.clear();
                for j in 0..size {
                    let k = j + stream.below((len - j) as u64) as usize;
                    self.index.swap(j, k);
                    self.swaps.push(k);
                    self.out.push(self.data[self.index[j]]);
                }
                for (j, &k) in self.swaps.iter().enumerate().rev() {
                    self.index.swap(j, k);
                }
            }
        }
        Ok(&self.out)
    }
}

/// A single random subset of `e`.
pub fn subsample(
    e: &ErrorVector,
    size: usize,
    replacement: Replacement,
    stream: &mut Stream,
) -> Result<ErrorVector> {
    let mut s = Subsampler::new(e);
    let v = s.draw(size, replacement, stream)?.to_vec();
    ErrorVector::new(v)
}

/// Random stream for repetition `rep` at subset size `n`.
pub fn cell_stream(seed: u64, n: usize, rep: usize) -> Stream {
    Stream::new(seed, Domain::Sweep, n as u64, rep as u64)
}

fn cell_metrics(
    sampler: &mut Subsampler<'_>,
    kernel: &mut Kernel,
    cfg: &SweepConfig,
    n: usize,
) -> Result<Vec<MetricTriple>> {
    (0..cfg.reps)
        .map(|r| {
            let mut stream = cell_stream(cfg.seed, n, r);
            let subset = sampler.draw(n, cfg.replacement, &mut stream)?;
            Ok(kernel.triple(subset))
        })
        .collect()
}

/// Per-subset metrics for every repetition at size `n`, exactly as the sweep
/// computes them before aggregation.
pub fn subset_metrics(e: &ErrorVector, cfg: &SweepConfig, n: usize) -> Result<Vec<MetricTriple>> {
    let cfg = cfg.resolve(e.len())?;
    let mut sampler = Subsampler::new(e);
    cell_metrics(&mut sampler, &mut Kernel::default(), &cfg, n)
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(e: &ErrorVector, cfg: &SweepConfig) -> Result<SweepResult> {
    let cfg = cfg.resolve(e.len())?;
    let sizes = cfg.sizes();
    let data = e.as_slice();

    let cells: Vec<Vec<MetricTriple>> = sizes
        .par_iter()
        .map_init(
            || (Subsampler::from_slice(data), Kernel::default()),
            |(sampler, kernel), &n| cell_metrics(sampler, kernel, &cfg, n),
        )
        .collect::<Result<_>>()?;

    let mut result = SweepResult {
        sizes,
        mae: Band::default(),
        rmse: Band::default(),
        u_a: Band::default(),
        meta: SweepMeta {
            config: cfg,
            generator: GENERATOR_NAME.to_string(),
            population: e.len(),
        },
    };
    let mut scratch = Vec::with_capacity(cfg.reps);
    for triples in &cells {
        for (band, pick) in [
            (
                &mut result.mae,
                (|t: &MetricTriple| t.mae) as fn(&MetricTriple) -> f64,
            ),
            (&mut result.rmse, |t| t.rmse),
            (&mut result.u_a, |t| t.u_a),
        ] {
            scratch.clear();
            scratch.extend(triples.iter().map(pick));
            band.push(&mut scratch, cfg.aggregation);
        }
    }
    Ok(result)
}

/// Runs the sweep on a dedicated pool of `workers` threads. The result is
/// identical to [`run_sweep`] for any worker count.
pub fn run_sweep_with_workers(
    e: &ErrorVector,
    cfg: &SweepConfig,
    workers: usize,
) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|err| Error::input(format!("cannot start {workers} workers: {err}")))?;
    pool.install(|| run_sweep(e, cfg))
}
