#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use coxorb::{LabeledComplex, SphereNerve};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every corpus complex, by file stem, in name order.
pub fn corpus() -> Vec<(String, LabeledComplex)> {
    let mut out: Vec<(String, LabeledComplex)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json") && p.file_stem().unwrap() != "manifest"
        })
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            let c = LabeledComplex::parse(&text).unwrap_or_else(|e| panic!("{stem}: {e}"));
            (stem, c)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The corpus complexes that validate as 2-sphere nerves.
pub fn spheres() -> Vec<(String, SphereNerve)> {
    corpus()
        .into_iter()
        .filter_map(|(name, c)| SphereNerve::new(c).ok().map(|n| (name, n)))
        .collect()
}

pub fn load(stem: &str) -> LabeledComplex {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{stem}.json"))).unwrap();
    LabeledComplex::parse(&text).unwrap()
}

pub fn sphere(stem: &str) -> SphereNerve {
    SphereNerve::new(load(stem)).unwrap()
}
