//! The `sizetrend` command line.
//!
//! Relative `--out` paths are resolved against `$SIZETREND_OUT_DIR` when it is
//! set. Without `--out`, data goes to standard output; diagnostics always go to
//! standard error. Exit codes: 0 success, 1 input or format error, 2 I/O error,
//! 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::distgen::{self, DistSpec, Family};
use crate::error::{Error, Result};
use crate::io::{self, CurvesTable, DataFormat, InputKind, SummaryFormat, SvgOptions};
use crate::metrics::{self, ErrorVector};
use crate::random::GENERATOR_NAME;
use crate::sweep::{self, Aggregation, Replacement, SweepConfig};
use crate::theory;

pub const OUT_DIR_ENV: &str = "SIZETREND_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "sizetrend",
    version,
    about = "MAE, RMSE and type-A uncertainty versus sample size"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV with `predicted,observed` (optionally `id,` first) or `error` columns
    file: PathBuf,
    /// Read FILE as predicted/observed pairs
    #[arg(long, conflicts_with = "errors")]
    pairs: bool,
    /// Read FILE as a single `error` column
    #[arg(long)]
    errors: bool,
}

impl InputArgs {
    fn load(&self) -> Result<ErrorVector> {
        let kind = if self.pairs {
            InputKind::Pairs
        } else if self.errors {
            InputKind::Errors
        } else {
            InputKind::Auto
        };
        io::load_input(&self.file, kind)
    }
}

#[derive(Debug, Args)]
struct DistArgs {
    /// normal | exponential | lognormal | uniform
    #[arg(long)]
    dist: Option<String>,
    /// Comma-separated parameters: normal MEAN,SD; exponential RATE;
    /// lognormal MU,SIGMA; uniform LOW,HIGH. Defaults to the standard member.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
    /// Number of simulated errors
    #[arg(long, default_value_t = distgen::DEFAULT_COUNT)]
    count: usize,
}

impl DistArgs {
    fn spec(&self) -> Result<Option<DistSpec>> {
        match &self.dist {
            None if self.params.is_empty() => Ok(None),
            None => Err(Error::input("--params needs --dist")),
            Some(name) => {
                let family: Family = name.parse()?;
                DistSpec::from_params(family, &self.params).map(Some)
            }
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summary statistics of one error set
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        /// text | csv | json
        #[arg(long, default_value = "text")]
        format: String,
        /// Output path (relative paths go under $SIZETREND_OUT_DIR if set); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bootstrap sweep over subset sizes
    Sweep {
        /// Error or pairs CSV; omit to simulate with --dist
        file: Option<PathBuf>,
        /// Read FILE as predicted/observed pairs
        #[arg(long, conflicts_with = "errors")]
        pairs: bool,
        /// Read FILE as a single `error` column
        #[arg(long)]
        errors: bool,
        #[command(flatten)]
        dist: DistArgs,
        /// Repetitions per subset size
        #[arg(long, default_value_t = sweep::DEFAULT_REPS)]
        reps: usize,
        /// Smallest subset size
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        /// Largest subset size [default: min(200, N)]
        #[arg(long)]
        n_max: Option<usize>,
        /// Spacing of the size grid
        #[arg(long, default_value_t = 1)]
        n_step: usize,
        /// mean | median
        #[arg(long, default_value = "mean")]
        agg: String,
        /// without | with
        #[arg(long, default_value = "without")]
        replacement: String,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; output does not depend on this
        #[arg(long)]
        workers: Option<usize>,
        /// Output path (relative paths go under $SIZETREND_OUT_DIR if set); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv | json [default: from the --out extension, else csv]
        /// csv | json [default: from the --out extension, else csv]
        #[arg(long)]
        format: Option<String>,
    },
    /// Generate a simulated error set
    Simulate {
        #[command(flatten)]
        dist: DistArgs,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (relative paths go under $SIZETREND_OUT_DIR if set); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a histogram with this many bins
        #[arg(long)]
        hist: Option<usize>,
        /// Histogram path [default: <out>.hist.csv]
        #[arg(long)]
        hist_out: Option<PathBuf>,
    },
    /// MAE spread range d_i of an error set
    Range {
        #[command(flatten)]
        input: InputArgs,
        /// Output path (relative paths go under $SIZETREND_OUT_DIR if set); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv | json [default: from the --out extension, else csv]
        #[arg(long)]
        format: Option<String>,
    },
    /// Bound curves √n·MAE and MAE/√n around a fixed MAE
    Envelope {
        /// The fixed MAE (positive)
        #[arg(long, allow_hyphen_values = true)]
        mae: f64,
        /// Largest n
        #[arg(long)]
        n_max: usize,
        /// Output path (relative paths go under $SIZETREND_OUT_DIR if set); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv | json [default: from the --out extension, else csv]
        #[arg(long)]
        format: Option<String>,
    },
    /// Render a curves file as an SVG chart
    Plot {
        /// Curves file written by sweep, range or envelope
        curves: PathBuf,
        /// SVG path
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        title: Option<String>,
        /// Logarithmic y axis
        #[arg(long)]
        log_y: bool,
    },
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    match out {
        Some(p) => io::write_file(&resolve_out(p), f),
        // A closed pipe (e.g. `| head`) is not an error.
        None => match f(stdout).and_then(|()| stdout.flush()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            res => res.map_err(|e| Error::io("<stdout>", e)),
        },
    }
}

fn data_format(flag: &Option<String>, out: &Option<PathBuf>) -> Result<DataFormat> {
    match flag {
        Some(f) => f.parse(),
        None => Ok(match out.as_ref().and_then(|p| p.extension()) {
            Some(ext) if ext == "json" => DataFormat::Json,
            _ => DataFormat::Csv,
        }),
    }
}

fn input_kind(pairs: bool, errors: bool) -> InputKind {
    match (pairs, errors) {
        (true, _) => InputKind::Pairs,
        (_, true) => InputKind::Errors,
        _ => InputKind::Auto,
    }
}

fn write_table(
    table: &CurvesTable,
    format: DataFormat,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<()> {
    emit(out, stdout, |w| io::write_curves(w, table, format))
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Evaluate { input, format, out } => {
            let format: SummaryFormat = format.parse()?;
            let e = input.load()?;
            let s = metrics::summary(&e);
            emit(&out, stdout, |w| io::write_summary(w, &s, format))
        }
        Command::Sweep {
            file,
            pairs,
            errors,
            dist,
            reps,
            n_min,
            n_max,
            n_step,
            agg,
            replacement,
            seed,
            workers,
            out,
            format,
        } => {
            let format = data_format(&format, &out)?;
            let spec = dist.spec()?;
            let mut source = Vec::new();
            let e = match (&file, spec) {
                (Some(_), Some(_)) => {
                    return Err(Error::input("give either a data file or --dist, not both"))
                }
                (None, None) => return Err(Error::input("sweep needs a data file or --dist")),
                (Some(path), None) => io::load_input(path, input_kind(pairs, errors))?,
                (None, Some(spec)) => {
                    source.push(("dist".to_string(), spec.to_string()));
                    source.push(("count".to_string(), dist.count.to_string()));
                    distgen::gen_errors(&spec, dist.count, seed)?
                }
            };
            let cfg = SweepConfig {
                n_min,
                n_max,
                n_step,
                reps,
                aggregation: agg.parse::<Aggregation>()?,
                replacement: replacement.parse::<Replacement>()?,
                seed,
            };
            let result = match workers {
                Some(w) => sweep::run_sweep_with_workers(&e, &cfg, w)?,
                None => sweep::run_sweep(&e, &cfg)?,
            };
            result.check_invariants()?;
            let mut table = CurvesTable::from(&result);
            table.meta.extend(source);
            write_table(&table, format, &out, stdout)
        }
        Command::Simulate {
            dist,
            seed,
            out,
            hist,
            hist_out,
        } => {
            let spec = dist
                .spec()?
                .ok_or_else(|| Error::input("simulate needs --dist"))?;
            let e = distgen::gen_errors(&spec, dist.count, seed)?;
            let meta = vec![
                io::version_meta(),
                ("dist".to_string(), spec.to_string()),
                ("count".to_string(), dist.count.to_string()),
                ("seed".to_string(), seed.to_string()),
                ("generator".to_string(), GENERATOR_NAME.to_string()),
            ];
            emit(&out, stdout, |w| io::write_errors_csv(w, &e, &meta))?;
            if let Some(bins) = hist {
                let h = distgen::histogram(&e, bins)?;
                let target = match (hist_out, &out) {
                    (Some(p), _) => Some(p),
                    (None, Some(p)) => {
                        let mut s = p.as_os_str().to_owned();
                        s.push(".hist.csv");
                        Some(PathBuf::from(s))
                    }
                    (None, None) => None,
                };
                emit(&target, stdout, |w| io::write_histogram_csv(w, &h, &meta))?;
            }
            Ok(())
        }
        Command::Range { input, out, format } => {
            let format = data_format(&format, &out)?;
            let e = input.load()?;
            let table = CurvesTable::from(&theory::range_curve(&e));
            write_table(&table, format, &out, stdout)
        }
        Command::Envelope {
            mae,
            n_max,
            out,
            format,
        } => {
            let format = data_format(&format, &out)?;
            let env = theory::envelope(mae, n_max)?;
            write_table(&CurvesTable::from(&env), format, &out, stdout)
        }
        Command::Plot {
            curves,
            out,
            title,
            log_y,
        } => {
            let table = io::load_curves(&curves)?;
            io::write_svg(&table, &resolve_out(&out), &SvgOptions { title, log_y })
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the
/// process exit code. Usage and error messages go to `stderr`.
pub fn dispatch_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "sizetrend: {err}");
            err.exit_code()
        }
    }
}

/// [`dispatch_with`] bound to the process's standard streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
