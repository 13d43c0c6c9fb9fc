//! The in-repo corpus: one JSON file per complex plus `manifest.json` with
//! the expected decomposition summary of each.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::{self, Report};
use crate::{read_complex, CliError, Output};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub complexes: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entry {
    pub file: String,
    pub sphere: bool,
    /// Piece count per geometry tag.
    #[serde(default)]
    pub geometries: BTreeMap<String, usize>,
    #[serde(default)]
    pub walls: Option<usize>,
    #[serde(default)]
    pub ra_suspensions: Option<usize>,
    #[serde(default)]
    pub seifert_classes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn load_manifest(dir: &Path) -> Result<Manifest, CliError> {
    let path = dir.join("manifest.json");
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// Differences between an entry's expectations and what the pipeline
/// produced; empty when they agree.
pub fn compare(entry: &Entry, result: &Result<Report, CliError>) -> Result<Vec<String>, CliError> {
    let mut diffs = Vec::new();
    match (entry.sphere, result) {
        (_, Err(e @ CliError::Io { .. })) => return Err(CliError::Domain(e.to_string())),
        (true, Err(e)) => diffs.push(format!("expected a decomposition, got: {e}")),
        (false, Ok(_)) => diffs.push("expected a non-sphere, but it validated".into()),
        (false, Err(CliError::Invalid(_))) => {}
        (false, Err(e)) => diffs.push(format!("expected a validation failure, got: {e}")),
        (true, Ok(r)) => {
            let mut got: BTreeMap<String, usize> = BTreeMap::new();
            for p in &r.decomposition.pieces {
                *got.entry(p.geometry.to_string()).or_default() += 1;
            }
            if got != entry.geometries {
                diffs.push(format!(
                    "geometries {got:?}, expected {:?}",
                    entry.geometries
                ));
            }
            let checks = [
                ("walls", entry.walls, r.decomposition.walls.len()),
                (
                    "ra_suspensions",
                    entry.ra_suspensions,
                    r.features.ra_suspensions.len(),
                ),
                (
                    "seifert_classes",
                    entry.seifert_classes,
                    r.features.seifert_subcomplexes.len(),
                ),
            ];
            for (what, want, have) in checks {
                if want.is_some_and(|w| w != have) {
                    diffs.push(format!("{what} {have}, expected {}", want.unwrap()));
                }
            }
            if r.chi_orb != "0" {
                diffs.push(format!("chi_orb {}", r.chi_orb));
            }
        }
    }
    Ok(diffs)
}

pub fn check(dir: &Path) -> Result<Output, CliError> {
    let manifest = load_manifest(dir)?;
    let mut stdout = String::new();
    let mut failures = 0;
    for entry in &manifest.complexes {
        let result = read_complex(&dir.join(&entry.file)).and_then(|c| report::build(c, false));
        let diffs = compare(entry, &result)?;
        if diffs.is_empty() {
            let _ = writeln!(stdout, "ok   {}", entry.file);
        } else {
            failures += 1;
            let _ = writeln!(stdout, "FAIL {}: {}", entry.file, diffs.join("; "));
        }
    }
    let _ = writeln!(
        stdout,
        "{} of {} as expected",
        manifest.complexes.len() - failures,
        manifest.complexes.len()
    );
    Ok(Output {
        stdout,
        code: if failures == 0 { 0 } else { 1 },
    })
}

/// Writes `<stem>.report.json` for every sphere in the manifest, one thread
/// per file.
pub fn batch(dir: &Path, out: &Path) -> Result<Output, CliError> {
    let manifest = load_manifest(dir)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let jobs: Vec<(PathBuf, PathBuf)> = manifest
        .complexes
        .iter()
        .filter(|e| e.sphere)
        .map(|e| {
            let stem = e.file.trim_end_matches(".json");
            (dir.join(&e.file), out.join(format!("{stem}.report.json")))
        })
        .collect();
    let results: Vec<Result<String, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(src, dst)| {
                scope.spawn(move || {
                    let r = report::build(read_complex(src)?, false)?;
                    std::fs::write(dst, report::to_json(&r)).map_err(|e| CliError::io(dst, e))?;
                    Ok(dst.display().to_string())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut stdout = String::new();
    for r in results {
        let _ = writeln!(stdout, "{}", r?);
    }
    Ok(Output::ok(stdout))
}
