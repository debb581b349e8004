//! Command-line surface: run configuration, the verification suite and the
//! expression evaluator behind the `superw` binary.

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::brst::Flavor;
use crate::liealg::{builtin, load_spec, AlgebraSpec, LieError};

mod expr;
mod golden;
mod suite;

pub use expr::{evaluate, Evaluation, ExprError};
pub use suite::{run_criterion, verify_paper, CRITERIA};

/// Version tag of the structured report.
pub const REPORT_SCHEMA: &str = "superw-report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Where the algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Builtin(String),
    File(PathBuf),
    /// Both built-ins.
    All,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    /// `None` runs both flavors where that makes sense.
    pub flavor: Option<Flavor>,
    /// Twice the largest conformal weight examined.
    pub two_cutoff: i64,
    pub sample_k: Vec<i64>,
    pub json: bool,
    pub corrupt: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { algebra: AlgebraSource::All, flavor: None, two_cutoff: 6, sample_k: vec![1, 2, 5], json: false, corrupt: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.two_cutoff <= 0 {
            return Err(CliError::Usage("--cutoff must be positive".into()));
        }
        if self.sample_k.is_empty() {
            return Err(CliError::Usage("--sample-k needs at least one value".into()));
        }
        Ok(())
    }

    pub fn flavors(&self) -> Vec<Flavor> {
        match self.flavor {
            Some(f) => vec![f],
            None => vec![Flavor::NonSusy, Flavor::Susy],
        }
    }

    /// The algebras selected, with the corruption hook applied.
    pub fn algebras(&self) -> Result<Vec<AlgebraSpec>, CliError> {
        let base = match &self.algebra {
            AlgebraSource::Builtin(name) => vec![builtin(name)?],
            AlgebraSource::File(path) => vec![load_spec(path)?],
            AlgebraSource::All => vec![builtin("osp12")?, builtin("sl21")?],
        };
        let mut out = Vec::new();
        for g in base {
            // sampled levels must avoid the critical level
            for k in &self.sample_k {
                if crate::scalar::Scalar::from_int(*k) == -&g.dual_coxeter {
                    return Err(CliError::Usage(format!("k = {} is the critical level of {}", k, g.name)));
                }
            }
            match &self.corrupt {
                None => out.push(g),
                Some(axiom) => out.push(
                    g.corrupted(axiom).ok_or_else(|| CliError::Usage(format!("unknown corruption `{}`", axiom)))?,
                ),
            }
        }
        Ok(out)
    }
}

/// One identity or comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: String,
    pub algebras: Vec<String>,
    pub criteria: Vec<CriterionReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{}] {:>2} {}\n", tag, c.id, c.title));
            for ch in &c.checks {
                let mark = if ch.pass { "ok  " } else { "FAIL" };
                if ch.detail.is_empty() {
                    out.push_str(&format!("       {} {}\n", mark, ch.name));
                } else {
                    out.push_str(&format!("       {} {}: {}\n", mark, ch.name, ch.detail));
                }
            }
            if !c.note.is_empty() {
                out.push_str(&format!("       note: {}\n", c.note));
            }
        }
        out.push_str(if self.pass { "all checks passed\n" } else { "verification failed\n" });
        out
    }
}

/// Whether two specs describe the same algebra in the same basis.
pub fn same_algebra(a: &AlgebraSpec, b: &AlgebraSpec) -> bool {
    a.names == b.names && a.parity == b.parity && a.bracket == b.bracket && a.form == b.form
}
