//! Resamples a residual file at every subset size and shows how MAE, RMSE and
//! U_A respond. Writes the curves to a CSV next to the system temp dir.

use std::path::PathBuf;

use sizetrend::io::{load_errors_csv, write_curves, write_file, CurvesTable, DataFormat};
use sizetrend::sweep::{run_sweep, SweepConfig};

fn main() -> sizetrend::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/residuals.csv");
    let e = load_errors_csv(&data)?;
    let cfg = SweepConfig {
        n_max: Some(150),
        reps: 500,
        seed: 42,
        ..Default::default()
    };
    let r = run_sweep(&e, &cfg)?;
    r.check_invariants()?;

    println!(
        "{} residuals, {} reps per size",
        r.meta.population, r.meta.config.reps
    );
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>17}",
        "n", "MAE", "RMSE", "U_A", "RMSE min..max"
    );
    for n in [1, 2, 5, 10, 20, 50, 100, 150] {
        let i = r.index_of(n).unwrap();
        println!(
            "{n:>5} {:>8.4} {:>8.4} {:>8.4} {:>8.3}..{:<8.3}",
            r.mae.value[i], r.rmse.value[i], r.u_a.value[i], r.rmse.min[i], r.rmse.max[i]
        );
    }

    let out = std::env::temp_dir().join("sizetrend_sweep.csv");
    write_file(&out, |w| {
        write_curves(w, &CurvesTable::from(&r), DataFormat::Csv)
    })?;
    println!("\ncurves written to {}", out.display());
    Ok(())
}
