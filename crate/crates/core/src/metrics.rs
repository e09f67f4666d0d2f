//! MAE, RMSE and type-A uncertainty on a single error vector.
//!
//! All sums are correctly rounded over values rescaled by a power of two so the
//! largest magnitude sits in `[1, 2)`. The scaling is exact and only guards
//! against overflow and underflow. Because the sums are
//! exact-then-rounded, every metric is bit-for-bit invariant under reordering.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::ExactSum;

/// Signed model errors `e_i = predicted_i - observed_i`.
///
/// Always nonempty and finite; the constructors enforce it, so the metric
/// functions below cannot fail on an empty or NaN-laden input.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorVector(Vec<f64>);

impl ErrorVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    /// Element-wise `predicted - observed`, order preserved.
    pub fn from_pairs(predicted: &[f64], observed: &[f64]) -> Result<Self> {
        if predicted.len() != observed.len() {
            return Err(Error::LengthMismatch {
                left: predicted.len(),
                right: observed.len(),
            });
        }
        if predicted.is_empty() {
            return Err(Error::Empty);
        }
        for (index, (p, o)) in predicted.iter().zip(observed).enumerate() {
            if !p.is_finite() || !o.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        Self::new(predicted.iter().zip(observed).map(|(p, o)| p - o).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for ErrorVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ErrorVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Shorthand for [`ErrorVector::from_pairs`].
pub fn errors_from_pairs(predicted: &[f64], observed: &[f64]) -> Result<ErrorVector> {
    ErrorVector::from_pairs(predicted, observed)
}

/// Exponent `k` such that `max|v| * 2^k` lies in `[1, 2)`; 0 for an all-zero slice.
fn scale_exponent(values: &[f64]) -> i32 {
    let max = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return 0;
    }
    let (_, exp) = libm::frexp(max);
    1 - exp
}

/// Reusable accumulators for the per-subset hot loop in the sweep engine.
#[derive(Debug, Default)]
pub(crate) struct Kernel {
    abs: ExactSum,
    sq: ExactSum,
}

/// MAE, RMSE and U_A (RMSE/√n) of one vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTriple {
    pub mae: f64,
    pub rmse: f64,
    pub u_a: f64,
}

impl Kernel {
    pub(crate) fn triple(&mut self, values: &[f64]) -> MetricTriple {
        debug_assert!(!values.is_empty());
        let k = scale_exponent(values);
        self.abs.clear();
        self.sq.clear();
        for &v in values {
            let s = libm::scalbn(v, k);
            self.abs.add(s.abs());
            self.sq.add(s * s);
        }
        let n = values.len() as f64;
        let mae = libm::scalbn(self.abs.value() / n, -k);
        let rmse = libm::scalbn((self.sq.value() / n).sqrt(), -k);
        MetricTriple {
            mae,
            rmse,
            u_a: rmse / n.sqrt(),
        }
    }
}

fn scaled_sum(values: &[f64], f: impl Fn(f64) -> f64) -> (f64, i32) {
    let k = scale_exponent(values);
    let mut acc = ExactSum::new();
    for &v in values {
        acc.add(f(libm::scalbn(v, k)));
    }
    (acc.value(), k)
}

/// Mean absolute error.
pub fn mae(e: &ErrorVector) -> f64 {
    let (s, k) = scaled_sum(&e.0, f64::abs);
    libm::scalbn(s / e.len() as f64, -k)
}

/// Root mean square error.
pub fn rmse(e: &ErrorVector) -> f64 {
    let (s, k) = scaled_sum(&e.0, |v| v * v);
    libm::scalbn((s / e.len() as f64).sqrt(), -k)
}

/// Type-A uncertainty in its size-robust form, `RMSE / √n`.
///
/// Defined for every `n ≥ 1`; at `n = 1` it equals `|e_1|`. This is the form
/// used by the sweep engine and everywhere else downstream.
pub fn u_a(e: &ErrorVector) -> f64 {
    rmse(e) / (e.len() as f64).sqrt()
}

/// GUM type-A uncertainty, `sqrt(Σ e_i² / (n (n-1)))`.
///
/// Undefined for a single value, which is reported as [`Error::Domain`].
pub fn u_a_gum(e: &ErrorVector) -> Result<f64> {
    let n = e.len();
    if n < 2 {
        return Err(Error::Domain(
            "GUM type-A uncertainty needs at least two values".into(),
        ));
    }
    let (s, k) = scaled_sum(&e.0, |v| v * v);
    let denom = n as f64 * (n - 1) as f64;
    Ok(libm::scalbn((s / denom).sqrt(), -k))
}

/// Mean signed error.
pub fn bias(e: &ErrorVector) -> f64 {
    let (s, k) = scaled_sum(&e.0, |v| v);
    libm::scalbn(s / e.len() as f64, -k)
}

/// Median of an already sorted, nonempty slice; even lengths take the midpoint
/// of the middle pair.
pub(crate) fn sorted_median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        let (a, b) = (sorted[n / 2 - 1], sorted[n / 2]);
        a + (b - a) / 2.0
    }
}

/// One row of summary statistics. `e_max`, `e_min` and `e_median` are taken over
/// absolute errors; `mae` is the mean absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub n: usize,
    pub mae: f64,
    pub e_max: f64,
    pub e_min: f64,
    pub e_median: f64,
    pub rmse: f64,
    pub u_a: f64,
    pub bias: f64,
}

pub fn summary(e: &ErrorVector) -> MetricsSummary {
    let mut abs: Vec<f64> = e.0.iter().map(|v| v.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let rmse = rmse(e);
    MetricsSummary {
        n: e.len(),
        mae: mae(e),
        e_max: abs[abs.len() - 1],
        e_min: abs[0],
        e_median: sorted_median(&abs),
        rmse,
        u_a: rmse / (e.len() as f64).sqrt(),
        bias: bias(e),
    }
}
