//! For a fixed MAE, the band RMSE and U_A are confined to as n grows, and where
//! a real sample actually lands inside it.

use sizetrend::distgen::{gen_errors, DistSpec};
use sizetrend::metrics::{rmse, u_a, ErrorVector};
use sizetrend::theory::{bounds_check, envelope};

fn main() -> sizetrend::Result<()> {
    let env = envelope(1.0, 100)?;
    println!("{:>4} {:>8} {:>8} {:>8}", "n", "f_MAE", "f_RMSE", "f_UA");
    for n in [1, 4, 9, 25, 100] {
        let i = n - 1;
        println!(
            "{n:>4} {:>8.3} {:>8.3} {:>8.3}",
            env.f_mae[i], env.f_rmse[i], env.f_ua[i]
        );
    }

    // Rescale samples to MAE 1 so they sit on the same chart.
    println!("\nsamples with MAE rescaled to 1:");
    for n in [4, 25, 100] {
        let raw = gen_errors(&DistSpec::exponential(1.0)?, n, n as u64)?;
        let m = sizetrend::metrics::mae(&raw);
        let e = ErrorVector::new(raw.as_slice().iter().map(|x| x / m).collect())?;
        let b = bounds_check(&e);
        println!(
            "  n={n:<4} RMSE {:.3} in [1, {:.3}]   U_A {:.3} in [{:.3}, 1]   ok={}",
            rmse(&e),
            env.f_rmse[n - 1],
            u_a(&e),
            env.f_ua[n - 1],
            b.all_hold()
        );
    }

    // The extremes: all errors equal, and a single nonzero error.
    let flat = ErrorVector::new(vec![1.0; 16])?;
    let mut spike = vec![0.0; 16];
    spike[0] = 16.0;
    let spike = ErrorVector::new(spike)?;
    println!("\nconstant: RMSE {} U_A {}", rmse(&flat), u_a(&flat));
    println!("one spike: RMSE {} U_A {}", rmse(&spike), u_a(&spike));
    Ok(())
}
