//! Job configuration and execution.

use std::path::PathBuf;

use bmwcert_core::bmw::{detect_nu, full_verification, RMatrixSystem};
use bmwcert_core::families::{family_checks, prepare_family, FamilyBundle, Series};
use bmwcert_core::scalar::parse;
use bmwcert_core::{BmwError, Field, Rational, Scalar, TensorOperator};

use crate::error::CliError;
use crate::report::{CheckRecord, ConfigEcho, DerivedRecord, Metadata, Report};
use crate::rmatrix_file::{import_rmatrix_path, import_twist_path};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family { series: Series, dim: usize },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NuChoice {
    /// The family's ν, else the file's `nu` field, else detection.
    Default,
    Given(String),
    Detect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Evaluate every entry at s = `at_s` and check in exact rationals.
    Numeric(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub source: Source,
    pub twist: Option<PathBuf>,
    pub nu: NuChoice,
    pub mode: Mode,
    pub report_format: ReportFormat,
    pub output: Option<PathBuf>,
}

impl JobConfig {
    pub fn family(series: Series, dim: usize) -> Self {
        JobConfig {
            source: Source::Family { series, dim },
            twist: None,
            nu: NuChoice::Default,
            mode: Mode::Symbolic,
            report_format: ReportFormat::Json,
            output: None,
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            source: match &self.source {
                Source::Family { series, dim } => format!("family {series}_{dim}"),
                Source::File(p) => format!("file {}", p.display()),
            },
            twist: self.twist.as_ref().map(|p| p.display().to_string()),
            nu: match &self.nu {
                NuChoice::Default => "default".into(),
                NuChoice::Given(t) => t.clone(),
                NuChoice::Detect => "detect".into(),
            },
            mode: match self.mode {
                Mode::Symbolic => "symbolic".into(),
                Mode::Numeric(_) => "numeric".into(),
            },
            at_s: match &self.mode {
                Mode::Symbolic => None,
                Mode::Numeric(s) => Some(s.to_string()),
            },
        }
    }
}

/// Runs a job and returns its report. `Err` means an input or configuration
/// problem (exit code 2); structural failures of the operator are reported.
pub fn run_job(cfg: &JobConfig) -> Result<Report, CliError> {
    if let Mode::Numeric(s) = &cfg.mode {
        let s = s.clone();
        if Field::is_zero(&s) || s == Rational::one() || s == Rational::one().neg() {
            return Err(CliError::Config(format!(
                "--at-s must avoid 0 and ±1, got {s}"
            )));
        }
    }
    let metadata = Metadata {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.echo(),
    };
    let (derived, checks, aborted) = match &cfg.source {
        Source::Family { series, dim } => run_family(cfg, *series, *dim)?,
        Source::File(path) => {
            if cfg.twist.is_some() {
                return Err(CliError::Config(
                    "--twist applies to family sources only".into(),
                ));
            }
            run_file(cfg, path)?
        }
    };
    let mut report = Report::new(metadata, derived, checks, aborted);
    if let Source::Family {
        series: Series::Sp,
        dim,
    } = cfg.source
    {
        let n = dim / 2;
        report.notes.push(format!(
            "sp_{dim}: nu = -q^-{} = -q^(-1-2n) with rank n = {n}; reading the exponent as -1-2N with N = dim V = {dim} would give -q^-{} and contradicts the spectrum of R",
            dim + 1,
            1 + 2 * dim
        ));
    }
    Ok(report)
}

type Run = (DerivedRecord, Vec<CheckRecord>, Option<String>);

fn at(s: &Rational) -> impl Fn(&Scalar) -> Result<Rational, CliError> + '_ {
    move |x| {
        x.evaluate(s)
            .map_err(|e| CliError::scalar(format!("evaluating {x} at s = {s}"), e))
    }
}

fn certify<F: Field>(sys: &RMatrixSystem<F>, bundle: Option<&FamilyBundle<F>>) -> Run {
    let v = full_verification(sys);
    let mut checks: Vec<CheckRecord> = v.outcomes.iter().map(CheckRecord::from).collect();
    if let Some(b) = bundle {
        checks.extend(family_checks(b, &v).iter().map(CheckRecord::from));
    }
    (
        DerivedRecord::from_verification(&v),
        checks,
        v.aborted.map(|e| e.to_string()),
    )
}

fn parse_nu(text: &str) -> Result<Scalar, CliError> {
    parse(text).map_err(|e| CliError::scalar("--nu", e))
}

fn run_family(cfg: &JobConfig, series: Series, dim: usize) -> Result<Run, CliError> {
    let twist = cfg.twist.as_deref().map(import_twist_path).transpose()?;
    let mut bundle = prepare_family(series, dim, twist.as_ref())?;
    match &cfg.nu {
        NuChoice::Default => {}
        NuChoice::Given(t) => bundle.system = bundle.system.with_nu(parse_nu(t)?)?,
        NuChoice::Detect => {
            let nu = detect_nu(bundle.system.r(), &Scalar::q())?;
            bundle.system = bundle.system.with_nu(nu)?;
        }
    }
    Ok(match &cfg.mode {
        Mode::Symbolic => certify(&bundle.system, Some(&bundle)),
        Mode::Numeric(s) => {
            let b = bundle.try_map(at(s))?;
            certify(&b.system, Some(&b))
        }
    })
}

fn run_file(cfg: &JobConfig, path: &std::path::Path) -> Result<Run, CliError> {
    let imported = import_rmatrix_path(path)?;
    let nu = match &cfg.nu {
        NuChoice::Given(t) => Some(parse_nu(t)?),
        NuChoice::Default => imported.nu.clone(),
        NuChoice::Detect => None,
    };
    match &cfg.mode {
        Mode::Symbolic => finish_file(Scalar::q(), imported.r, nu),
        Mode::Numeric(s) => {
            let r = imported.r.try_map(at(s))?;
            let nu = nu.as_ref().map(at(s)).transpose()?;
            finish_file(Field::mul(s, s), r, nu)
        }
    }
}

fn finish_file<F: Field>(q: F, r: TensorOperator<F>, nu: Option<F>) -> Result<Run, CliError> {
    let dim = r.n();
    let aborted = |reason: String| {
        Ok((
            DerivedRecord {
                dim,
                ..Default::default()
            },
            Vec::new(),
            Some(reason),
        ))
    };
    let nu = match nu {
        Some(nu) => nu,
        None => match detect_nu(&r, &q) {
            Ok(nu) => nu,
            Err(e) => return aborted(format!("nu detection failed: {e}")),
        },
    };
    match RMatrixSystem::new(q, r, nu) {
        Ok(sys) => Ok(certify(&sys, None)),
        Err(BmwError::InadmissibleNu(t)) => Err(BmwError::InadmissibleNu(t).into()),
        Err(e) => aborted(e.to_string()),
    }
}
