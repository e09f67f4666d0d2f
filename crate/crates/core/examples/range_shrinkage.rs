//! Gap between the mean of the i largest and i smallest errors, for every i.

use sizetrend::io::load_errors_csv;
use sizetrend::metrics::ErrorVector;
use sizetrend::theory::{delta_d, range_curve};

fn main() -> sizetrend::Result<()> {
    let e = ErrorVector::new(vec![-1.5, 0.2, 3.0, -0.4, 0.9, 2.2])?;
    let rc = range_curve(&e);
    println!("errors {:?}", e.as_slice());
    for (n, d) in rc.sizes.iter().zip(&rc.d) {
        println!("  i={n}  d={d:.4}");
    }
    println!("  step at i=2: {:.4}", delta_d(&e, 2)?);

    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/residuals.csv");
    let big = load_errors_csv(path)?;
    let rc = range_curve(&big);
    let n = rc.d.len();
    println!("\nresiduals.csv, n = {n}");
    for i in [1, 2, 5, 20, 100, n / 2, n] {
        println!("  i={i:<4} d={:.4}", rc.d[i - 1]);
    }
    Ok(())
}
