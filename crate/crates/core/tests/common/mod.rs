//! Test-only reference implementations, written straight from the textbook
//! formulas with plain loops. They share no code with the library.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn oracle_mae(e: &[f64]) -> f64 {
    let mut s = 0.0;
    for v in e {
        s += v.abs();
    }
    s / e.len() as f64
}

pub fn oracle_sum_sq(e: &[f64]) -> f64 {
    let mut s = 0.0;
    for v in e {
        s += v * v;
    }
    s
}

pub fn oracle_rmse(e: &[f64]) -> f64 {
    (oracle_sum_sq(e) / e.len() as f64).sqrt()
}

/// Literal `sqrt(Σe²) / n`.
pub fn oracle_u_a(e: &[f64]) -> f64 {
    oracle_sum_sq(e).sqrt() / e.len() as f64
}

pub fn oracle_u_a_gum(e: &[f64]) -> f64 {
    let n = e.len() as f64;
    (oracle_sum_sq(e) / (n * (n - 1.0))).sqrt()
}

/// Mean signed error. Signed sums cancel, so this one uses Neumaier's
/// compensated loop to keep the oracle itself accurate.
pub fn oracle_bias(e: &[f64]) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for &v in e {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    (s + c) / e.len() as f64
}

pub fn oracle_abs_order_stats(e: &[f64]) -> (f64, f64, f64) {
    let mut a: Vec<f64> = e.iter().map(|v| v.abs()).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = a.len();
    let med = if n % 2 == 1 {
        a[n / 2]
    } else {
        (a[n / 2 - 1] + a[n / 2]) / 2.0
    };
    (a[n - 1], a[0], med)
}

/// `d_i` by brute force straight from its definition.
pub fn oracle_range(e: &[f64]) -> Vec<f64> {
    let mut a: Vec<f64> = e.iter().map(|v| v.abs()).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = a.len();
    (1..=n)
        .map(|i| {
            let top: f64 = a[n - i..].iter().sum();
            let bottom: f64 = a[..i].iter().sum();
            (top - bottom) / i as f64
        })
        .collect()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

/// `count` vectors of length 1..=200 with entries uniform in [-1000, 1000].
pub fn random_vectors(seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=200);
            (0..len)
                .map(|_| rng.random_range(-1000.0..=1000.0))
                .collect()
        })
        .collect()
}

pub fn ulps_apart(a: f64, b: f64) -> u64 {
    let (x, y) = (a.to_bits() as i64, b.to_bits() as i64);
    x.abs_diff(y)
}
