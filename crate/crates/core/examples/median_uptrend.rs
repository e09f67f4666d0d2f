//! Every curve starts at n = 1 from the same value: the mean or the median of
//! the absolute errors, depending on aggregation. From there RMSE climbs and
//! U_A falls. The trend label compares early and late quarter means, so a
//! curve that rises mostly in its first few sizes can still read as flat.

use sizetrend::distgen::{gen_errors, DistSpec};
use sizetrend::metrics::summary;
use sizetrend::sweep::{run_sweep, Aggregation, SweepConfig};
use sizetrend::theory::{classify_trend, DEFAULT_TREND_THRESHOLD};

fn main() -> sizetrend::Result<()> {
    let e = gen_errors(
        &DistSpec::standard(sizetrend::distgen::Family::Normal),
        10_000,
        5,
    )?;
    for aggregation in [Aggregation::Mean, Aggregation::Median] {
        let cfg = SweepConfig {
            n_max: Some(200),
            reps: 400,
            aggregation,
            seed: 1,
            ..Default::default()
        };
        let r = run_sweep(&e, &cfg)?;
        let last = r.sizes.len() - 1;
        println!("{aggregation} aggregation");
        for (name, band) in r.bands() {
            let trend = classify_trend(&band.value, DEFAULT_TREND_THRESHOLD)?;
            println!(
                "  {name:<5} n=1 {:.4}  n={} {:.4}  {trend:?}",
                band.value[0], r.sizes[last], band.value[last]
            );
        }
    }
    println!("median |e| of the population: {:.4}", summary(&e).e_median);
    Ok(())
}
