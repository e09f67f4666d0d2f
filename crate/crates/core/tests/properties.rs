mod common;

use common::*;
use proptest::prelude::*;
use sizetrend::distgen::{gen_errors, histogram, DistSpec, Family};
use sizetrend::metrics::{self, ErrorVector};
use sizetrend::sweep::{run_sweep, subset_metrics, Aggregation, Replacement, SweepConfig};
use sizetrend::theory::{self, envelope};

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 1..200)
}

/// Mixes in exact repeats so ties and constant runs get exercised.
fn tied_values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop::sample::select(vec![-2.5, -0.1, 0.0, 0.1, 0.3, 1.0, 7.0]),
        1..60,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bound_chains(v in values()) {
        let e = ErrorVector::new(v).unwrap();
        prop_assert!(theory::bounds_check(&e).all_hold(), "{:?}", theory::bounds_check(&e));
    }

    #[test]
    fn bound_chains_with_ties(v in tied_values()) {
        let e = ErrorVector::new(v).unwrap();
        prop_assert!(theory::bounds_check(&e).all_hold(), "{:?}", theory::bounds_check(&e));
    }

    #[test]
    fn u_a_times_root_n_is_rmse(v in values()) {
        let e = ErrorVector::new(v).unwrap();
        let root = (e.len() as f64).sqrt();
        prop_assert!(ulps_apart(metrics::u_a(&e) * root, metrics::rmse(&e)) <= 1);
    }

    #[test]
    fn matches_direct_summation(v in values()) {
        let e = ErrorVector::new(v.clone()).unwrap();
        prop_assert!(rel_err(metrics::mae(&e), oracle_mae(&v)) <= 1e-12);
        prop_assert!(rel_err(metrics::rmse(&e), oracle_rmse(&v)) <= 1e-12);
        prop_assert!(rel_err(metrics::u_a(&e), oracle_u_a(&v)) <= 1e-12);
        if v.len() > 1 {
            prop_assert!(rel_err(metrics::u_a_gum(&e).unwrap(), oracle_u_a_gum(&v)) <= 1e-12);
        }
    }

    #[test]
    fn permutation_invariant_bitwise(v in values(), seed in any::<u64>()) {
        let mut shuffled = v.clone();
        // Deterministic shuffle driven by the proptest seed.
        let mut s = seed | 1;
        for i in (1..shuffled.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let a = metrics::summary(&ErrorVector::new(v).unwrap());
        let b = metrics::summary(&ErrorVector::new(shuffled).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn absolute_homogeneity(v in values(), k in -20i32..20, c in -50.0f64..50.0) {
        let e = ErrorVector::new(v.clone()).unwrap();
        let s = metrics::summary(&e);
        // Power-of-two factors are exact.
        let p = 2f64.powi(k) * if k % 2 == 0 { 1.0 } else { -1.0 };
        let sp = metrics::summary(&ErrorVector::new(v.iter().map(|x| x * p).collect()).unwrap());
        prop_assert_eq!(sp.mae, s.mae * p.abs());
        prop_assert_eq!(sp.rmse, s.rmse * p.abs());
        prop_assert_eq!(sp.u_a, s.u_a * p.abs());
        prop_assert_eq!(sp.bias, s.bias * p);
        // General factors up to rounding.
        prop_assume!(c != 0.0);
        let sc = metrics::summary(&ErrorVector::new(v.iter().map(|x| x * c).collect()).unwrap());
        prop_assert!(rel_err(sc.mae, s.mae * c.abs()) <= 1e-14);
        prop_assert!(rel_err(sc.rmse, s.rmse * c.abs()) <= 1e-14);
        prop_assert!(rel_err(sc.u_a, s.u_a * c.abs()) <= 1e-14);
        prop_assert!((sc.bias - s.bias * c).abs() <= 1e-12 * s.mae * c.abs());
    }

    #[test]
    fn summary_ordering(v in values()) {
        let s = metrics::summary(&ErrorVector::new(v).unwrap());
        prop_assert!(s.e_min <= s.e_median && s.e_median <= s.e_max);
        prop_assert!(s.bias.abs() <= s.mae);
        prop_assert!(s.e_min <= s.mae && s.mae <= s.e_max);
    }

    #[test]
    fn single_value_collapse(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        let e = ErrorVector::new(vec![x]).unwrap();
        prop_assert_eq!(metrics::mae(&e), x.abs());
        prop_assert_eq!(metrics::rmse(&e), x.abs());
        prop_assert_eq!(metrics::u_a(&e), x.abs());
    }

    #[test]
    fn range_shrinks(v in values()) {
        let e = ErrorVector::new(v.clone()).unwrap();
        let d = theory::range_curve(&e).d;
        prop_assert!(d.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(d[d.len() - 1], 0.0);
        let brute = oracle_range(&v);
        for (g, b) in d.iter().zip(&brute) {
            prop_assert!((g - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn range_equality_condition(v in tied_values()) {
        let e = ErrorVector::new(v.clone()).unwrap();
        let mut a: Vec<f64> = v.iter().map(|x| x.abs()).collect();
        a.sort_by(f64::total_cmp);
        let n = a.len();
        for i in 1..n {
            let dd = theory::delta_d(&e, i).unwrap();
            prop_assert!(dd <= 0.0);
            // Zero exactly when the i+1 largest and the i+1 smallest are each constant.
            let top_const = a[n - 1 - i..].iter().all(|x| *x == a[n - 1]);
            let bottom_const = a[..=i].iter().all(|x| *x == a[0]);
            prop_assert_eq!(dd == 0.0, top_const && bottom_const, "i={} a={:?}", i, a);
        }
    }

    #[test]
    fn histogram_conserves_count(v in values(), bins in 1usize..80) {
        let h = histogram(&ErrorVector::new(v.clone()).unwrap(), bins).unwrap();
        prop_assert_eq!(h.total(), v.len() as u64);
        prop_assert!(h.bin_edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn envelope_ordering(mae in 1e-6f64..1e6, n_max in 1usize..300) {
        let env = envelope(mae, n_max).unwrap();
        prop_assert_eq!(env.f_rmse[0], mae);
        prop_assert_eq!(env.f_ua[0], mae);
        for i in 1..n_max {
            prop_assert!(env.f_ua[i] < env.f_mae[i] && env.f_mae[i] < env.f_rmse[i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generator_is_a_pure_function(seed in any::<u64>(), count in 1usize..500, fam in 0usize..4) {
        let spec = DistSpec::standard(Family::ALL[fam]);
        let a = gen_errors(&spec, count, seed).unwrap();
        let b = gen_errors(&spec, count, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sweep_invariants(v in prop::collection::vec(-5.0f64..5.0, 2..40), seed in any::<u64>(), median in any::<bool>()) {
        let e = ErrorVector::new(v).unwrap();
        let aggregation = if median { Aggregation::Median } else { Aggregation::Mean };
        let cfg = SweepConfig { reps: 15, seed, aggregation, ..Default::default() };
        let r = run_sweep(&e, &cfg).unwrap();
        r.check_invariants().unwrap();
        let last = r.sizes.len() - 1;
        prop_assert_eq!(r.mae.value[last], metrics::mae(&e));
        prop_assert_eq!(r.mae.max[last] - r.mae.min[last], 0.0);
        // Every subset respects the bound chain.
        for &n in &[1usize, 2, e.len() / 2 + 1, e.len()] {
            for t in subset_metrics(&e, &cfg, n).unwrap() {
                let root = (n as f64).sqrt();
                prop_assert!(t.mae <= t.rmse.next_up() && t.rmse <= (root * t.mae).next_up());
            }
        }
    }
}

#[test]
fn mean_aggregated_mae_is_flat_within_five_standard_errors() {
    let e = gen_errors(&DistSpec::standard(Family::Exponential), 2000, 17).unwrap();
    let pop = metrics::summary(&e);
    let cfg = SweepConfig {
        reps: 2000,
        n_max: Some(60),
        seed: 2,
        ..Default::default()
    };
    let r = run_sweep(&e, &cfg).unwrap();
    let abs: Vec<f64> = e.as_slice().iter().map(|x| x.abs()).collect();
    let sd_abs = (abs.iter().map(|a| (a - pop.mae).powi(2)).sum::<f64>() / abs.len() as f64).sqrt();
    for (i, &n) in r.sizes.iter().enumerate() {
        // Standard error of the mean of `reps` subset MAEs (finite-population correction ignored).
        let se = sd_abs / (n as f64).sqrt() / (cfg.reps as f64).sqrt();
        let z = (r.mae.value[i] - pop.mae) / se;
        assert!(z.abs() <= 5.0, "n = {n}: z = {z:.2}");
    }
}

#[test]
fn dispersion_narrows_with_size() {
    let e = gen_errors(&DistSpec::standard(Family::Normal), 400, 23).unwrap();
    let cfg = SweepConfig {
        reps: 400,
        n_max: Some(400),
        n_step: 1,
        seed: 9,
        ..Default::default()
    };
    let r = run_sweep(&e, &cfg).unwrap();
    let band = |i: usize| r.mae.max[i] - r.mae.min[i];
    let idx = |n: usize| r.index_of(n).unwrap();
    assert!(band(idx(1)) > band(idx(10)));
    assert!(band(idx(10)) > band(idx(100)));
    assert!(band(idx(100)) > band(idx(300)));
    assert_eq!(band(idx(400)), 0.0);
    // Every observed spread fits inside the theoretical range d_n.
    let d = theory::range_curve(&e).d;
    for (i, &n) in r.sizes.iter().enumerate() {
        assert!(band(i) <= d[n - 1] * (1.0 + 1e-12), "n = {n}");
    }
}

#[test]
fn median_aggregation_starts_at_the_error_median() {
    let e = gen_errors(&DistSpec::standard(Family::Lognormal), 10_000, 4).unwrap();
    let base = SweepConfig {
        reps: 2000,
        n_max: Some(5),
        seed: 6,
        ..Default::default()
    };
    let med = run_sweep(
        &e,
        &SweepConfig {
            aggregation: Aggregation::Median,
            ..base
        },
    )
    .unwrap();
    let mean = run_sweep(&e, &base).unwrap();
    assert!((med.mae.value[0] - 1.0).abs() < 0.1, "{}", med.mae.value[0]);
    assert!(
        (mean.mae.value[0] - 1.6487).abs() < 0.15,
        "{}",
        mean.mae.value[0]
    );
    assert!(med.mae.value[0] < mean.mae.value[0]);
}

#[test]
fn with_replacement_sweep_beyond_population() {
    let e = ErrorVector::new(vec![1.0, -1.0, 3.0]).unwrap();
    let cfg = SweepConfig {
        n_max: Some(10),
        reps: 20,
        replacement: Replacement::With,
        ..Default::default()
    };
    let r = run_sweep(&e, &cfg).unwrap();
    assert_eq!(r.sizes, (1..=10).collect::<Vec<_>>());
    r.check_invariants().unwrap();
}

#[test]
fn standard_normal_sweep_examples() {
    let e = gen_errors(&DistSpec::standard(Family::Normal), 10_000, 99).unwrap();
    let cfg = SweepConfig {
        reps: 2000,
        n_max: Some(200),
        n_step: 199,
        seed: 1,
        ..Default::default()
    };
    let r = run_sweep(&e, &cfg).unwrap();
    assert_eq!(r.sizes, vec![1, 200]);
    for m in &r.mae.value {
        assert!((m - 0.7979).abs() <= 0.05, "{m}");
    }
    assert!((r.u_a.value[1] - 1.0 / 200f64.sqrt()).abs() <= 0.01);
}

#[test]
fn gum_ratio_at_ten_thousand_normal_draws() {
    let e = gen_errors(&DistSpec::standard(Family::Normal), 10_000, 12).unwrap();
    let ratio = metrics::u_a_gum(&e).unwrap() / metrics::u_a(&e);
    assert!((1.0..=1.0001).contains(&ratio), "{ratio}");
}

#[test]
fn moments_converge_for_every_family() {
    for (i, fam) in Family::ALL.into_iter().enumerate() {
        let spec = DistSpec::standard(fam);
        let m = theory::analytic_moments(&spec).unwrap();
        let e = gen_errors(&spec, 10_000, 100 + i as u64).unwrap();
        let v = e.as_slice();
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let sd = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        // Analytic signed mean and sd, from the closed-form moments of each family.
        let (mu, sigma) = match spec {
            DistSpec::Normal { mean, sd } => (mean, sd),
            DistSpec::Exponential { rate } => (1.0 / rate, 1.0 / rate),
            DistSpec::Lognormal { .. } => {
                (m.mean_abs, (m.rms * m.rms - m.mean_abs * m.mean_abs).sqrt())
            }
            DistSpec::Uniform { low, high } => ((low + high) / 2.0, (high - low) / 12f64.sqrt()),
        };
        let se_mean = sigma / n.sqrt();
        assert!(
            (mean - mu).abs() <= 5.0 * se_mean,
            "{fam} mean {mean} vs {mu}"
        );
        // Loose standard error for the sample sd: sigma / sqrt(2n) inflated for skew.
        assert!(
            (sd - sigma).abs() <= 5.0 * 3.0 * sigma / (2.0 * n).sqrt(),
            "{fam} sd {sd} vs {sigma}"
        );
    }
}

#[test]
fn normal_moments_match_quadrature() {
    // Composite Simpson on [-12, 12] for E|X| and E[X²] of N(0,1).
    let pdf = |x: f64| (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let steps = 24_000;
    let h = 24.0 / steps as f64;
    let simpson = |f: &dyn Fn(f64) -> f64| {
        let mut s = f(-12.0) + f(12.0);
        for k in 1..steps {
            let x = -12.0 + k as f64 * h;
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    };
    let mean_abs = simpson(&|x| x.abs() * pdf(x));
    let second = simpson(&|x| x * x * pdf(x));
    let m = theory::analytic_moments(&DistSpec::standard(Family::Normal)).unwrap();
    assert!((m.mean_abs - mean_abs).abs() < 1e-9, "{mean_abs}");
    assert!((m.rms - second.sqrt()).abs() < 1e-9);
}
