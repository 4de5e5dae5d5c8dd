//! Argument parsing and process-level behaviour of the `bmwcert` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bmwcert_core::families::Series;
use bmwcert_core::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::job::{run_job, JobConfig, Mode, NuChoice, ReportFormat, Source};
use crate::rmatrix_file::{export_family, import_twist_path, to_json};

#[derive(Debug, Parser)]
#[command(
    name = "bmwcert",
    version,
    about = "Exact certification of BMW-type R-matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every relation check on a family or an R-matrix file.
    Verify(VerifyArgs),
    /// Write a family R-matrix in the JSON exchange format.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesArg {
    So,
    Sp,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::So => Series::So,
            SeriesArg::Sp => Series::Sp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Family series.
    #[arg(long, value_enum, requires = "dim")]
    family: Option<SeriesArg>,
    /// Dimension N of V.
    #[arg(long, requires = "family")]
    dim: Option<usize>,
    /// Diagonal twist parameters as JSON: {"d": [["1", "q"], ["1", "1"]]}.
    #[arg(long, requires = "family")]
    twist: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// R-matrix file in the JSON exchange format.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Use this ν instead of the family or file value.
    #[arg(long, conflicts_with = "detect_nu")]
    nu: Option<String>,
    /// Read ν off the spectrum of R.
    #[arg(long)]
    detect_nu: bool,
    /// Evaluate at this rational value of s and check numerically.
    #[arg(long)]
    at_s: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    report: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn family_source(f: &FamilyArgs) -> Option<(Series, usize)> {
    Some((f.family?.into(), f.dim?))
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn verify(args: VerifyArgs) -> Result<i32, CliError> {
    let source = match (family_source(&args.family), args.input) {
        (Some((series, dim)), None) => Source::Family { series, dim },
        (None, Some(path)) => Source::File(path),
        _ => {
            return Err(CliError::Config(
                "give either --family with --dim, or --input".into(),
            ))
        }
    };
    let mode = match &args.at_s {
        None => Mode::Symbolic,
        Some(t) => Mode::Numeric(t.trim().parse::<Rational>().map_err(|e| {
            CliError::Config(format!("--at-s {t:?} is not a rational number: {e}"))
        })?),
    };
    let nu = match (args.nu, args.detect_nu) {
        (Some(t), _) => NuChoice::Given(t),
        (None, true) => NuChoice::Detect,
        (None, false) => NuChoice::Default,
    };
    let report_format = match args.report {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Json => ReportFormat::Json,
    };
    let cfg = JobConfig {
        source,
        twist: args.family.twist,
        nu,
        mode,
        report_format,
        output: args.out,
    };
    let report = run_job(&cfg)?;
    let text = match cfg.report_format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    write_output(cfg.output.as_ref(), &text)?;
    Ok(report.exit_code())
}

fn export(args: ExportArgs) -> Result<i32, CliError> {
    let (series, dim) = family_source(&args.family)
        .ok_or_else(|| CliError::Config("export needs --family and --dim".into()))?;
    let twist = args
        .family
        .twist
        .as_deref()
        .map(import_twist_path)
        .transpose()?;
    let file = export_family(series, dim, twist.as_ref())?;
    write_output(args.out.as_ref(), &to_json(&file))?;
    Ok(0)
}

/// Runs the command line and returns the process exit code: 0 if every
/// check passes, 1 if a check fails or the run aborted, 2 on bad input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
