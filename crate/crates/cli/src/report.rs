//! Deterministic reports: every list is ordered by vertex name, and JSON
//! objects serialize with sorted keys.

use std::fmt::Write as _;
use std::time::Instant;

use coxorb::coxeter::spherical_poset;
use coxorb::decompose::{
    acyclicity_certificate, check_certificate, decompose, Certificate, Decomposition,
};
use coxorb::detect::{CircuitFlag, FeatureSet};
use coxorb::ell2::chi_orb;
use coxorb::nerve::canonical_form;
use coxorb::{LabeledComplex, SphereNerve, SurfaceReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Hex SHA-256 of the canonical form; equal for label-isomorphic inputs.
pub fn digest(c: &LabeledComplex) -> String {
    let hash = Sha256::digest(canonical_form(c).to_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub name: String,
    pub digest: String,
    pub vertex_count: usize,
    pub edge_count: usize,
}

impl InputSummary {
    pub fn of(c: &LabeledComplex) -> Self {
        Self {
            name: c.name().to_owned(),
            digest: digest(c),
            vertex_count: c.vertex_count(),
            edge_count: c.edge_count(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Circuit3Census {
    pub vertices: Vec<String>,
    pub flag: CircuitFlag,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuspensionCensus {
    pub poles: [String; 2],
    pub base: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeifertCensus {
    pub members: Vec<usize>,
    pub gluing_circuits: Vec<Vec<String>>,
    pub boundary_circuits: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeatureCensus {
    pub euclidean3_vertices: Vec<String>,
    pub euclidean4_vertices: Vec<String>,
    pub euclidean_3circuits: Vec<Circuit3Census>,
    pub euclidean_4circuits: Vec<Vec<String>>,
    pub ra_cones: Vec<String>,
    pub ra_suspensions: Vec<SuspensionCensus>,
    pub seifert_subcomplexes: Vec<SeifertCensus>,
}

impl FeatureCensus {
    pub fn of(c: &LabeledComplex, f: &FeatureSet) -> Self {
        let circuit = |cycle: [usize; 4]| {
            let mut v = c.names_of(&cycle);
            v.sort();
            v
        };
        let mut euclidean_3circuits: Vec<Circuit3Census> = f
            .euclidean_3circuits
            .iter()
            .map(|t| Circuit3Census {
                vertices: c.names_of(&t.vertices),
                flag: t.flag,
            })
            .collect();
        euclidean_3circuits.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let mut euclidean_4circuits: Vec<Vec<String>> = f
            .euclidean_4circuits
            .iter()
            .map(|q| circuit(q.cycle()))
            .collect();
        euclidean_4circuits.sort();
        Self {
            euclidean3_vertices: c.names_of(&f.euclidean3_vertices),
            euclidean4_vertices: c.names_of(&f.euclidean4_vertices),
            euclidean_3circuits,
            euclidean_4circuits,
            ra_cones: {
                let mut v: Vec<String> = f
                    .ra_cones
                    .iter()
                    .map(|r| c.vertex_name(r.apex).to_owned())
                    .collect();
                v.sort();
                v
            },
            ra_suspensions: f
                .ra_suspensions
                .iter()
                .map(|s| SuspensionCensus {
                    poles: [
                        c.vertex_name(s.poles[0]).to_owned(),
                        c.vertex_name(s.poles[1]).to_owned(),
                    ],
                    base: c.names_of(&s.base),
                })
                .collect(),
            seifert_subcomplexes: f
                .seifert_subcomplexes
                .iter()
                .map(|k| SeifertCensus {
                    members: k.members.clone(),
                    gluing_circuits: {
                        let mut v: Vec<_> = k
                            .gluing_circuits
                            .iter()
                            .map(|q| circuit(q.cycle()))
                            .collect();
                        v.sort();
                        v
                    },
                    boundary_circuits: {
                        let mut v: Vec<_> = k
                            .boundary_circuits
                            .iter()
                            .map(|q| circuit(q.cycle()))
                            .collect();
                        v.sort();
                        v
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: InputSummary,
    pub validation: SurfaceReport,
    pub features: FeatureCensus,
    pub decomposition: Decomposition,
    pub chi_orb: String,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Runs the full pipeline. `timing` adds wall-clock time, which makes the
/// report non-reproducible.
pub fn build(c: LabeledComplex, timing: bool) -> Result<Report, CliError> {
    let start = Instant::now();
    let input = InputSummary::of(&c);
    let validation = c.validate_sphere();
    let nerve = SphereNerve::new(c).map_err(|r| CliError::Invalid(r.diagnostics.join("; ")))?;
    let features = FeatureCensus::of(&nerve, &FeatureSet::detect(&nerve));
    let decomposition = decompose(&nerve).map_err(|e| CliError::Domain(e.to_string()))?;
    let chi = chi_orb(&spherical_poset(&nerve));
    let certificate = acyclicity_certificate(&nerve, &decomposition)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    check_certificate(&nerve, &decomposition, &certificate)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Report {
        input,
        validation,
        features,
        decomposition,
        chi_orb: chi.to_string(),
        certificate,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

pub fn render_text(r: &Report) -> String {
    let d = &r.decomposition;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} piece{}, {} wall{}",
        r.input.name,
        d.pieces.len(),
        if d.pieces.len() == 1 { "" } else { "s" },
        d.walls.len(),
        if d.walls.len() == 1 { "" } else { "s" },
    );
    for p in &d.pieces {
        let kind = serde_json::to_value(p.kind).unwrap();
        let _ = writeln!(
            out,
            "  {:<5} support {:>3}  caps {}  {}",
            p.geometry.to_string(),
            p.support.len(),
            p.caps.len(),
            kind.as_str().unwrap_or_default()
        );
    }
    for w in &d.walls {
        let _ = writeln!(out, "  wall {} labels {:?}", w.vertices.join("-"), w.labels);
    }
    if let Some(note) = &d.note {
        let _ = writeln!(out, "  note: {note}");
    }
    let _ = writeln!(out, "  chi_orb {}", r.chi_orb);
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "  time {ms:.1} ms");
    }
    out
}
