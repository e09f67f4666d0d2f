//! Scores a forecast against observations and prints the metric row.
//!
//! cargo run --example evaluate_pairs [PAIRS.csv]

use std::path::PathBuf;

use sizetrend::io::{load_pairs_csv, write_summary, SummaryFormat};
use sizetrend::metrics::{summary, u_a_gum};
use sizetrend::theory::bounds_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/forecast_pairs.csv")
        });
    let table = load_pairs_csv(&path)?;
    let e = table.errors()?;
    let s = summary(&e);

    let mut out = std::io::stdout();
    write_summary(&mut out, &s, SummaryFormat::Text)?;

    let b = bounds_check(&e);
    println!();
    println!(
        "MAE <= RMSE <= sqrt(n) MAE  : {:.4} <= {:.4} <= {:.4}",
        b.mae, b.rmse, b.sqrt_n_mae
    );
    println!(
        "MAE/sqrt(n) <= U_A <= MAE   : {:.4} <= {:.4} <= {:.4}",
        b.mae_over_sqrt_n, b.u_a, b.mae
    );
    println!("U_A with n-1 denominator    : {:.4}", u_a_gum(&e)?);

    // worst five rows
    let ids = table.ids.clone().unwrap_or_default();
    let mut idx: Vec<usize> = (0..e.len()).collect();
    idx.sort_by(|&a, &b| e.as_slice()[b].abs().total_cmp(&e.as_slice()[a].abs()));
    println!("\nlargest misses:");
    for &i in idx.iter().take(5) {
        let id = ids.get(i).map_or("?", String::as_str);
        println!("  {id:>5}  {:+.2}", e.as_slice()[i]);
    }
    Ok(())
}
