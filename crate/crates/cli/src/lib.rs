//! Commands behind the `coxorb` binary. Each returns its standard output and
//! an exit code: 0 success, 1 domain failure, 2 environment failure.

pub mod corpus;
pub mod report;

use std::fmt::Write as _;
use std::path::Path;

use coxorb::coxeter::spherical_poset;
use coxorb::davis::{build_ball_with, BallConfig};
use coxorb::ell2::chi_orb;
use coxorb::LabeledComplex;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("not a 2-sphere nerve: {0}")]
    Invalid(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Invalid(_) | CliError::Domain(_) => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Text written to stdout plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn read_complex(path: &Path) -> Result<LabeledComplex, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    LabeledComplex::parse(&text).map_err(|e| CliError::Domain(e.to_string()))
}

pub fn validate(path: &Path, structured: bool) -> Result<Output, CliError> {
    let c = read_complex(path)?;
    let r = c.validate_sphere();
    let stdout = if structured {
        report::to_json(&r)
    } else if r.passed {
        format!(
            "{}: valid 2-sphere nerve (V={}, E={}, F={}, χ = {})\n",
            c.name(),
            r.vertex_count,
            r.edge_count,
            r.triangle_count,
            r.euler_characteristic
        )
    } else {
        let mut s = format!("{}: invalid\n", c.name());
        for d in &r.diagnostics {
            let _ = writeln!(s, "  {d}");
        }
        s
    };
    Ok(Output {
        stdout,
        code: if r.passed { 0 } else { 1 },
    })
}

pub fn decompose(path: &Path, structured: bool, timing: bool) -> Result<Output, CliError> {
    let r = report::build(read_complex(path)?, timing)?;
    Ok(Output::ok(if structured {
        report::to_json(&r)
    } else {
        report::render_text(&r)
    }))
}

pub fn euler(path: &Path, allow_non_sphere: bool) -> Result<Output, CliError> {
    let c = read_complex(path)?;
    let r = c.validate_sphere();
    if !r.passed && !allow_non_sphere {
        return Err(CliError::Invalid(r.diagnostics.join("; ")));
    }
    let chi = chi_orb(&spherical_poset(&c));
    let stdout = format!("{chi}\n");
    if r.passed && !chi.is_zero() {
        return Ok(Output { stdout, code: 1 });
    }
    Ok(Output::ok(stdout))
}

pub fn ball(path: &Path, radius: usize, export: Option<&Path>) -> Result<Output, CliError> {
    let c = read_complex(path)?;
    let b = build_ball_with(&c, radius, &BallConfig::from_env())
        .map_err(|e| CliError::Domain(e.to_string()))?;
    if let Some(out) = export {
        std::fs::write(out, report::to_json(&b.export())).map_err(|e| CliError::io(out, e))?;
    }
    Ok(Output::ok(format!(
        "{} element{}\n",
        b.len(),
        if b.len() == 1 { "" } else { "s" }
    )))
}
