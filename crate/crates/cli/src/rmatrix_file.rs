//! The sparse JSON exchange format for R-matrices.

use std::collections::BTreeSet;
use std::path::Path;

use bmwcert_core::families::{prepare_family, Series, TwistSpec};
use bmwcert_core::scalar::parse;
use bmwcert_core::{Scalar, TensorOperator};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixFile {
    pub dim: usize,
    pub entries: Vec<EntryRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub out: [usize; 2],
    #[serde(rename = "in")]
    pub inp: [usize; 2],
    pub coeff: String,
}

/// Where an exported file came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Vec<String>>>,
    pub tool: String,
}

/// A parsed R-matrix file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Imported {
    pub r: TensorOperator<Scalar>,
    pub nu: Option<Scalar>,
    pub comment: Option<String>,
}

pub fn import_rmatrix(text: &str) -> Result<Imported, CliError> {
    let file: RMatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::json("R-matrix file", e))?;
    let n = file.dim;
    if n == 0 {
        return Err(CliError::DimensionMismatch("dim must be at least 1".into()));
    }
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(file.entries.len());
    for (k, e) in file.entries.iter().enumerate() {
        let label = format!("out {:?} in {:?}", e.out, e.inp);
        if e.out.iter().chain(&e.inp).any(|&i| i == 0 || i > n) {
            return Err(CliError::DimensionMismatch(format!(
                "entry {k} ({label}): indices must lie in 1..={n}"
            )));
        }
        if !seen.insert((e.out, e.inp)) {
            return Err(CliError::DuplicateEntry(label));
        }
        let c = parse(&e.coeff)
            .map_err(|err| CliError::scalar(format!("coefficient of entry {k} ({label})"), err))?;
        entries.push((e.out.to_vec(), e.inp.to_vec(), c));
    }
    let r = TensorOperator::from_entries(n, 2, entries)
        .map_err(|e| CliError::DimensionMismatch(e.to_string()))?;
    let nu = match &file.nu {
        Some(t) => Some(parse(t).map_err(|e| CliError::scalar("nu field", e))?),
        None => None,
    };
    Ok(Imported {
        r,
        nu,
        comment: file.comment,
    })
}

pub fn import_rmatrix_path(path: &Path) -> Result<Imported, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    import_rmatrix(&text)
}

/// Serializes an operator with nonzero entries in row-major order.
pub fn to_file(r: &TensorOperator<Scalar>, nu: Option<&Scalar>) -> RMatrixFile {
    let n = r.n();
    let split = |x: usize| [x / n + 1, x % n + 1];
    let entries = r
        .matrix()
        .entries()
        .map(|(row, col, v)| EntryRecord {
            out: split(row),
            inp: split(col),
            coeff: v.to_string(),
        })
        .collect();
    RMatrixFile {
        dim: n,
        entries,
        nu: nu.map(|x| x.to_string()),
        comment: None,
        provenance: None,
    }
}

/// The (optionally twisted) family R-matrix as a file, including ν and provenance.
pub fn export_family(
    series: Series,
    n: usize,
    twist: Option<&TwistSpec<Scalar>>,
) -> Result<RMatrixFile, CliError> {
    let bundle = prepare_family(series, n, twist)?;
    let mut file = to_file(bundle.system.r(), Some(bundle.system.nu()));
    file.comment = Some(format!(
        "{} R-matrix, entries in the basis v_i (x) v_j, out = image index",
        bundle.spec.label()
    ));
    file.provenance = Some(Provenance {
        family: series.to_string(),
        dim: n,
        twist: twist.map(|t| {
            t.d.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        }),
        tool: format!("bmwcert {}", env!("CARGO_PKG_VERSION")),
    });
    Ok(file)
}

pub fn to_json(file: &RMatrixFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistFile {
    d: Vec<Vec<String>>,
    #[serde(default)]
    #[allow(dead_code)]
    comment: Option<String>,
}

/// Reads `{"d": [["1", "q"], ["1", "1"]]}` with d_ij at row i, column j.
pub fn import_twist(text: &str) -> Result<TwistSpec<Scalar>, CliError> {
    let file: TwistFile =
        serde_json::from_str(text).map_err(|e| CliError::json("twist file", e))?;
    let n = file.d.len();
    let mut d = Vec::with_capacity(n);
    for (i, row) in file.d.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::DimensionMismatch(format!(
                "twist row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, t)| {
                parse(t)
                    .map_err(|e| CliError::scalar(format!("twist entry d_{},{}", i + 1, j + 1), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        d.push(parsed);
    }
    Ok(TwistSpec { d })
}

pub fn import_twist_path(path: &Path) -> Result<TwistSpec<Scalar>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    import_twist(&text)
}
