//! Certification reports in JSON and plain text.

use std::fmt::Write as _;

use bmwcert_core::bmw::{Outcome, Verification};
use bmwcert_core::Field;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub metadata: Metadata,
    pub derived: DerivedRecord,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
}

/// The job configuration as it was understood.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    pub nu: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_s: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DerivedRecord {
    pub dim: usize,
    pub nu: Option<String>,
    pub mu: Option<String>,
    #[serde(rename = "trace_C")]
    pub trace_c: Option<String>,
    #[serde(rename = "trace_D")]
    pub trace_d: Option<String>,
    pub epsilon: Option<i8>,
    #[serde(rename = "rank_K")]
    pub rank_k: Option<usize>,
    #[serde(rename = "X_diag")]
    pub x_diag: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub equation: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub out: Vec<usize>,
    #[serde(rename = "in")]
    pub inp: Vec<usize>,
    pub value: String,
}

impl<F: Field> From<&Outcome<F>> for CheckRecord {
    fn from(o: &Outcome<F>) -> Self {
        CheckRecord {
            id: o.id.clone(),
            equation: o.equation.clone(),
            pass: o.pass,
            witness: o.witness.as_ref().map(|w| WitnessRecord {
                out: w.out.clone(),
                inp: w.inp.clone(),
                value: w.value.to_string(),
            }),
        }
    }
}

impl DerivedRecord {
    pub fn from_verification<F: Field>(v: &Verification<F>) -> Self {
        let d = &v.derived;
        DerivedRecord {
            dim: d.dim,
            nu: Some(d.nu.to_string()),
            mu: Some(d.mu.to_string()),
            trace_c: d.trace_c.as_ref().map(ToString::to_string),
            trace_d: d.trace_d.as_ref().map(ToString::to_string),
            epsilon: d.epsilon,
            rank_k: d.rank_k,
            x_diag: d
                .x
                .as_ref()
                .filter(|x| x.is_diagonal())
                .map(|x| x.diagonal().iter().map(ToString::to_string).collect()),
        }
    }
}

impl Report {
    pub fn new(
        metadata: Metadata,
        derived: DerivedRecord,
        checks: Vec<CheckRecord>,
        aborted: Option<String>,
    ) -> Self {
        let status = match (&aborted, checks.iter().all(|c| c.pass)) {
            (Some(_), _) => Status::Aborted,
            (None, true) => Status::Pass,
            (None, false) => Status::Fail,
        };
        Report {
            status,
            reason: aborted,
            metadata,
            derived,
            checks,
            notes: Vec::new(),
        }
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail | Status::Aborted => 1,
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.metadata.config;
        let _ = writeln!(
            s,
            "{} {}: {} ({})",
            self.metadata.tool, self.metadata.version, c.source, c.mode
        );
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Aborted => "aborted",
        };
        let _ = writeln!(s, "status: {status}");
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "reason: {r}");
        }
        let d = &self.derived;
        let _ = writeln!(s, "N = {}", d.dim);
        let opt = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "nu = {}", opt(&d.nu));
        let _ = writeln!(s, "mu = {}", opt(&d.mu));
        let _ = writeln!(s, "Tr C = {}", opt(&d.trace_c));
        let _ = writeln!(s, "Tr D = {}", opt(&d.trace_d));
        if let Some(e) = d.epsilon {
            let _ = writeln!(s, "epsilon = {e:+}");
        }
        if let Some(r) = d.rank_k {
            let _ = writeln!(s, "rank K = {r}");
        }
        if let Some(x) = &d.x_diag {
            let _ = writeln!(s, "X = diag({})", x.join(", "));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "checks: {passed}/{} pass", self.checks.len());
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = write!(s, "  {mark} {:width$}  {}", c.id, c.equation);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  [out {:?} in {:?}: {}]", w.out, w.inp, w.value);
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
