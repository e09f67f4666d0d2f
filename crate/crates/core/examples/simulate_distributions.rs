//! Draws synthetic errors from each family, compares sample moments with the
//! closed forms and sketches a histogram.

use sizetrend::distgen::{gen_errors, histogram, DistSpec, Family};
use sizetrend::metrics::{mae, rmse, summary};
use sizetrend::theory::analytic_moments;

const COUNT: usize = 100_000;

fn main() -> sizetrend::Result<()> {
    println!(
        "{:<16} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "dist", "mae", "E|e|", "rmse", "rms", "med|e|", "theory"
    );
    for (i, family) in Family::ALL.into_iter().enumerate() {
        let spec = DistSpec::standard(family);
        let e = gen_errors(&spec, COUNT, 100 + i as u64)?;
        let m = analytic_moments(&spec)?;
        println!(
            "{:<16} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            spec.to_string(),
            mae(&e),
            m.mean_abs,
            rmse(&e),
            m.rms,
            summary(&e).e_median,
            m.median_abs
        );
    }

    let spec = DistSpec::lognormal(0.0, 0.5)?;
    let e = gen_errors(&spec, 20_000, 9)?;
    let h = histogram(&e, 24)?;
    println!("\n{spec}, {} draws", h.total());
    let peak = h.counts[h.modal_bin()] as f64;
    for (i, &c) in h.counts.iter().enumerate() {
        let bar = "#".repeat((50.0 * c as f64 / peak).round() as usize);
        println!("{:>6.2} {bar}", h.bin_edges[i]);
    }
    Ok(())
}
