//! Sweep, range curve and envelope rendered to SVG files in the temp dir.

use sizetrend::distgen::{gen_errors, DistSpec, Family};
use sizetrend::io::{write_svg, CurvesTable, SvgOptions};
use sizetrend::sweep::{run_sweep, SweepConfig};
use sizetrend::theory::{envelope, range_curve};

fn main() -> sizetrend::Result<()> {
    let dir = std::env::temp_dir();
    let e = gen_errors(&DistSpec::standard(Family::Normal), 5_000, 2024)?;

    let sweep = run_sweep(
        &e,
        &SweepConfig {
            n_max: Some(200),
            reps: 300,
            ..Default::default()
        },
    )?;
    let charts = [
        (
            "sweep",
            CurvesTable::from(&sweep),
            "Metrics vs subset size",
            false,
        ),
        (
            "range",
            CurvesTable::from(&range_curve(&e)),
            "Top/bottom mean gap",
            false,
        ),
        (
            "envelope",
            CurvesTable::from(&envelope(0.8, 200)?),
            "Envelope at MAE 0.8",
            true,
        ),
    ];
    for (name, table, title, log_y) in charts {
        let path = dir.join(format!("sizetrend_{name}.svg"));
        write_svg(
            &table,
            &path,
            &SvgOptions {
                title: Some(title.into()),
                log_y,
            },
        )?;
        println!("{}", path.display());
    }
    Ok(())
}
