//! Labeled nerves: parsing, metric-flag reconstruction of the 2-skeleton, and
//! validation that the result triangulates the 2-sphere.
//!
//! A nerve is given by its labeled 1-skeleton. A missing edge means the pair
//! generates an infinite dihedral group. Triangles are never part of the
//! input: a 3-clique spans a triangle exactly when its labels `(p, q, r)`
//! satisfy `1/p + 1/q + 1/r > 1`.

mod canonical;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::angle::is_spherical_triple;
use crate::coxeter::{self, CoxeterMatrix};

pub use canonical::{canonical_form, canonical_labeling, CanonicalForm};

/// Normalized edge key: the smaller vertex index first.
pub type EdgeKey = (usize, usize);

pub fn edge_key(a: usize, b: usize) -> EdgeKey {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("label out of range on edge {0:?}-{1:?}: labels are integers >= 2")]
    LabelOutOfRange(String, String),
    #[error("duplicate edge {0:?}-{1:?}")]
    DuplicateEdge(String, String),
}

/// The labeled nerve `L` of a Coxeter system. Immutable once built.
#[derive(Debug, Clone)]
pub struct LabeledComplex {
    name: String,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    labels: BTreeMap<EdgeKey, u32>,
    neighbors: Vec<BTreeSet<usize>>,
    triangles: BTreeSet<[usize; 3]>,
}

impl PartialEq for LabeledComplex {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.labels == other.labels
    }
}

impl Eq for LabeledComplex {}

impl LabeledComplex {
    /// Builds a complex from named vertices and labeled edges, deriving the
    /// triangles by the metric-flag rule.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        vertices: &[S],
        edges: &[(S, S, u32)],
    ) -> Result<Self, NerveError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_owned()).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(NerveError::DuplicateVertex(v.clone()));
            }
        }
        let mut labels = BTreeMap::new();
        for (a, b, m) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| NerveError::UnknownVertex(a.to_owned()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| NerveError::UnknownVertex(b.to_owned()))?;
            if ia == ib {
                return Err(NerveError::SelfLoop(a.to_owned()));
            }
            if *m < 2 {
                return Err(NerveError::LabelOutOfRange(a.to_owned(), b.to_owned()));
            }
            if labels.insert(edge_key(ia, ib), *m).is_some() {
                return Err(NerveError::DuplicateEdge(a.to_owned(), b.to_owned()));
            }
        }
        Ok(Self::from_parts(name.into(), vertices, labels))
    }

    pub(crate) fn from_parts(
        name: String,
        vertices: Vec<String>,
        labels: BTreeMap<EdgeKey, u32>,
    ) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut neighbors = vec![BTreeSet::new(); vertices.len()];
        for &(a, b) in labels.keys() {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
        let mut triangles = BTreeSet::new();
        for (&(a, b), &mab) in &labels {
            for &c in neighbors[a].intersection(&neighbors[b]) {
                if c > b {
                    let mac = labels[&(a, c)];
                    let mbc = labels[&(b, c)];
                    if is_spherical_triple(mab, mac, mbc) {
                        triangles.insert([a, b, c]);
                    }
                }
            }
        }
        Self {
            name,
            vertices,
            index,
            labels,
            neighbors,
            triangles,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `Some(m_st)` for an edge, `None` when `m_st = ∞`.
    pub fn label(&self, a: usize, b: usize) -> Option<u32> {
        self.labels.get(&edge_key(a, b)).copied()
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.labels.contains_key(&edge_key(a, b))
    }

    pub fn edges(&self) -> &BTreeMap<EdgeKey, u32> {
        &self.labels
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.neighbors[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Triangles as sorted index triples.
    pub fn triangles(&self) -> &BTreeSet<[usize; 3]> {
        &self.triangles
    }

    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.triangles.contains(&t)
    }

    /// Triangles containing the edge `{a, b}`, as their third vertex.
    pub fn triangles_on_edge(&self, a: usize, b: usize) -> Vec<usize> {
        self.neighbors[a]
            .intersection(&self.neighbors[b])
            .copied()
            .filter(|&c| self.has_triangle(a, b, c))
            .collect()
    }

    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.vertex_count();
        let mut m = CoxeterMatrix::free(n);
        for (&(a, b), &l) in &self.labels {
            m.set(a, b, Some(l));
        }
        m
    }

    /// Resolves vertex names to indices.
    pub fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>, NerveError> {
        names
            .iter()
            .map(|n| {
                self.vertex_index(n.as_ref())
                    .ok_or_else(|| NerveError::UnknownVertex(n.as_ref().to_owned()))
            })
            .collect()
    }

    pub fn names_of<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> Vec<String> {
        let mut out: Vec<String> = vs.into_iter().map(|&v| self.vertices[v].clone()).collect();
        out.sort();
        out
    }

    /// The induced labeled complex on a vertex set.
    pub fn full_subcomplex<S: AsRef<str>>(
        &self,
        names: &[S],
    ) -> Result<LabeledComplex, NerveError> {
        let set: BTreeSet<usize> = self.resolve(names)?.into_iter().collect();
        Ok(self.induced(&set, format!("{}[sub]", self.name)))
    }

    pub(crate) fn induced(&self, set: &BTreeSet<usize>, name: String) -> LabeledComplex {
        // Preserve the parent's vertex order.
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|v| set.contains(v))
            .collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = self
            .labels
            .iter()
            .filter_map(|(&(a, b), &m)| match (remap.get(&a), remap.get(&b)) {
                (Some(&x), Some(&y)) => Some((edge_key(x, y), m)),
                _ => None,
            })
            .collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        LabeledComplex::from_parts(name, vertices, labels)
    }

    /// Vertices of the link of `s`: the third vertices of triangles through `s`.
    pub fn link_vertices(&self, s: usize) -> BTreeSet<usize> {
        self.triangles
            .iter()
            .filter(|t| t.contains(&s))
            .flat_map(|t| t.iter().copied().filter(|&x| x != s))
            .collect()
    }

    /// Edges of the link of `s`: the faces opposite `s` in triangles through `s`.
    pub fn link_edges(&self, s: usize) -> BTreeSet<EdgeKey> {
        self.triangles
            .iter()
            .filter(|t| t.contains(&s))
            .map(|t| {
                let rest: Vec<usize> = t.iter().copied().filter(|&x| x != s).collect();
                edge_key(rest[0], rest[1])
            })
            .collect()
    }

    /// The link `L_s` and the star `St_L(s)` of a vertex.
    pub fn link_and_star(&self, s: &str) -> Result<(LabeledComplex, LabeledComplex), NerveError> {
        let v = self
            .vertex_index(s)
            .ok_or_else(|| NerveError::UnknownVertex(s.to_owned()))?;
        let link_vs = self.link_vertices(v);
        let link_es = self.link_edges(v);
        let build = |with_apex: bool, name: String| {
            let mut keep: Vec<usize> = link_vs.iter().copied().collect();
            if with_apex {
                keep.push(v);
            }
            keep.sort_unstable();
            let remap: HashMap<usize, usize> =
                keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let mut labels = BTreeMap::new();
            for &(a, b) in &link_es {
                labels.insert(edge_key(remap[&a], remap[&b]), self.labels[&(a, b)]);
            }
            if with_apex {
                for &x in &link_vs {
                    labels.insert(edge_key(remap[&x], remap[&v]), self.label(x, v).unwrap());
                }
            }
            let names = keep.iter().map(|&x| self.vertices[x].clone()).collect();
            LabeledComplex::from_parts(name, names, labels)
        };
        Ok((
            build(false, format!("{}[link {}]", self.name, s)),
            build(true, format!("{}[star {}]", self.name, s)),
        ))
    }

    /// Cyclic order of the link of `v`, when the link is a single cycle.
    pub fn link_cycle(&self, v: usize) -> Option<Vec<usize>> {
        let edges = self.link_edges(v);
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
            return None;
        }
        let start = *adj.keys().next()?;
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            cycle.push(cur);
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        (cycle.len() == adj.len()).then_some(cycle)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangles.len() as i64
    }

    /// Checks that the derived 2-complex is a connected closed surface with
    /// `χ = 2`. Failures are reported, never raised.
    pub fn validate_sphere(&self) -> SurfaceReport {
        let mut report = SurfaceReport {
            passed: false,
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            triangle_count: self.triangles.len(),
            euler_characteristic: self.euler_characteristic(),
            connected: self.is_connected(),
            bad_edges: Vec::new(),
            bad_links: Vec::new(),
            vertex_links: BTreeMap::new(),
            diagnostics: Vec::new(),
        };
        for &(a, b) in self.labels.keys() {
            let faces = self.triangles_on_edge(a, b).len();
            if faces != 2 {
                let mut pair = [self.vertices[a].clone(), self.vertices[b].clone()];
                pair.sort();
                report.bad_edges.push(EdgeIncidence { edge: pair, faces });
            }
        }
        for v in 0..self.vertex_count() {
            match self.link_cycle(v) {
                Some(cycle) if cycle.len() == self.valence(v) => {
                    report.vertex_links.insert(
                        self.vertices[v].clone(),
                        canonical_rotation(
                            cycle.iter().map(|&x| self.vertices[x].clone()).collect(),
                        ),
                    );
                }
                _ => report.bad_links.push(self.vertices[v].clone()),
            }
        }
        report.bad_edges.sort();
        report.bad_links.sort();
        if self.vertices.is_empty() {
            report.diagnostics.push("empty complex".into());
        }
        if !report.connected {
            report.diagnostics.push("complex is not connected".into());
        }
        for e in &report.bad_edges {
            report.diagnostics.push(format!(
                "edge {}-{} lies in {} faces (expected 2)",
                e.edge[0], e.edge[1], e.faces
            ));
        }
        for v in &report.bad_links {
            report
                .diagnostics
                .push(format!("link of {v} is not a single cycle of length >= 3"));
        }
        if report.euler_characteristic != 2 {
            report
                .diagnostics
                .push(format!("χ = {} ≠ 2", report.euler_characteristic));
        }
        // Four pairwise-adjacent vertices whose whole set is spherical would
        // span a 3-simplex, so the nerve would not be 2-dimensional.
        if self.vertex_count() == 4 && self.edge_count() == 6 && self.triangles.len() == 4 {
            let m = self.coxeter_matrix();
            if coxeter::is_spherical(&m, &[0, 1, 2, 3]).unwrap_or(false) {
                report
                    .diagnostics
                    .push("all four vertices are spherical: the nerve contains a 3-simplex".into());
            }
        }
        report.passed = report.diagnostics.is_empty();
        report
    }

    /// Parses the JSON document format.
    pub fn parse(document: &str) -> Result<Self, NerveError> {
        let value: Value =
            serde_json::from_str(document).map_err(|e| NerveError::Malformed(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| NerveError::Malformed("top level must be an object".into()))?;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| NerveError::Malformed("missing string field \"name\"".into()))?;
        let vertices = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| NerveError::Malformed("missing array field \"vertices\"".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| NerveError::Malformed("vertex ids must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let raw_edges = obj
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| NerveError::Malformed("missing array field \"edges\"".into()))?;
        let mut edges = Vec::with_capacity(raw_edges.len());
        for e in raw_edges {
            let triple = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| NerveError::Malformed(format!("edge {e} is not [u, v, label]")))?;
            let a = triple[0].as_str().ok_or_else(|| {
                NerveError::Malformed(format!("edge {e}: endpoints must be strings"))
            })?;
            let b = triple[1].as_str().ok_or_else(|| {
                NerveError::Malformed(format!("edge {e}: endpoints must be strings"))
            })?;
            let m = match triple[2].as_u64() {
                Some(m) if (2..=u32::MAX as u64).contains(&m) => m as u32,
                _ => return Err(NerveError::LabelOutOfRange(a.to_owned(), b.to_owned())),
            };
            edges.push((a.to_owned(), b.to_owned(), m));
        }
        Self::new(name, &vertices, &edges)
    }

    /// Canonical document text: sorted keys, sorted vertices, sorted edges.
    pub fn serialize(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut edges: Vec<(String, String, u32)> = self
            .labels
            .iter()
            .map(|(&(a, b), &m)| {
                let (x, y) = (&self.vertices[a], &self.vertices[b]);
                if x <= y {
                    (x.clone(), y.clone(), m)
                } else {
                    (y.clone(), x.clone(), m)
                }
            })
            .collect();
        edges.sort();
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut out = String::from("{\n  \"edges\": [");
        for (i, (a, b, m)) in edges.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(out, "    [{}, {}, {}]", q(a), q(b), m);
        }
        out.push_str(if edges.is_empty() { "],\n" } else { "\n  ],\n" });
        let _ = writeln!(out, "  \"name\": {},", q(&self.name));
        out.push_str("  \"vertices\": [");
        out.push_str(&vertices.iter().map(|v| q(v)).collect::<Vec<_>>().join(", "));
        out.push_str("]\n}\n");
        out
    }

    /// Same complex with the vertex list permuted (names unchanged).
    pub fn permuted(&self, order: &[usize]) -> LabeledComplex {
        let vertices: Vec<String> = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = self
            .labels
            .iter()
            .map(|(&(a, b), &m)| (edge_key(pos[&a], pos[&b]), m))
            .collect();
        LabeledComplex::from_parts(self.name.clone(), vertices, labels)
    }

    /// Same complex with every vertex renamed.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> LabeledComplex {
        let vertices = self.vertices.iter().map(|v| rename(v)).collect();
        LabeledComplex::from_parts(self.name.clone(), vertices, self.labels.clone())
    }
}

/// A nerve that passed [`LabeledComplex::validate_sphere`], with the cyclic
/// order of every vertex link.
#[derive(Debug, Clone)]
pub struct SphereNerve {
    complex: LabeledComplex,
    links: Vec<Vec<usize>>,
}

impl SphereNerve {
    pub fn new(complex: LabeledComplex) -> Result<Self, Box<SurfaceReport>> {
        let report = complex.validate_sphere();
        if !report.passed {
            return Err(Box::new(report));
        }
        let links = (0..complex.vertex_count())
            .map(|v| complex.link_cycle(v).expect("validated links are cycles"))
            .collect();
        Ok(Self { complex, links })
    }

    pub fn complex(&self) -> &LabeledComplex {
        &self.complex
    }

    pub fn into_complex(self) -> LabeledComplex {
        self.complex
    }

    /// Neighbors of `v` in cyclic order.
    pub fn link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    /// `L = ∂Δ³`.
    pub fn is_tetrahedron_boundary(&self) -> bool {
        self.complex.vertex_count() == 4
    }

    /// `L` is the suspension of a 3-gon: returns the two poles and the equator.
    pub fn suspension_of_triangle(&self) -> Option<([usize; 2], [usize; 3])> {
        let c = &self.complex;
        if c.vertex_count() != 5 || c.triangles().len() != 6 {
            return None;
        }
        let poles: Vec<usize> = (0..5).filter(|&v| c.valence(v) == 3).collect();
        let equator: Vec<usize> = (0..5).filter(|&v| c.valence(v) == 4).collect();
        match (poles.as_slice(), equator.as_slice()) {
            (&[a, b], &[x, y, z]) if !c.is_edge(a, b) => Some(([a, b], [x, y, z])),
            _ => None,
        }
    }

    /// The octahedron with every label 2.
    pub fn is_right_angled_octahedron(&self) -> bool {
        let c = &self.complex;
        c.vertex_count() == 6
            && c.edge_count() == 12
            && (0..6).all(|v| c.valence(v) == 4)
            && c.edges().values().all(|&m| m == 2)
    }
}

impl std::ops::Deref for SphereNerve {
    type Target = LabeledComplex;

    fn deref(&self) -> &LabeledComplex {
        &self.complex
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgeIncidence {
    pub edge: [String; 2],
    pub faces: usize,
}

/// Outcome of [`LabeledComplex::validate_sphere`].
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceReport {
    pub passed: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub euler_characteristic: i64,
    pub connected: bool,
    /// Edges not lying in exactly two triangles.
    pub bad_edges: Vec<EdgeIncidence>,
    /// Vertices whose link is not a single cycle.
    pub bad_links: Vec<String>,
    pub vertex_links: BTreeMap<String, Vec<String>>,
    pub diagnostics: Vec<String>,
}

/// Rotates a cyclic sequence to start at its least entry and reads it in
/// the direction whose second entry is smaller.
fn canonical_rotation(mut cycle: Vec<String>) -> Vec<String> {
    let Some(start) = (0..cycle.len()).min_by(|&i, &j| cycle[i].cmp(&cycle[j])) else {
        return cycle;
    };
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn octahedron() -> LabeledComplex {
        let vs = ["n", "s", "a", "b", "c", "d"];
        let mut es = Vec::new();
        for p in ["n", "s"] {
            for e in ["a", "b", "c", "d"] {
                es.push((p, e, 2));
            }
        }
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            es.push((x, y, 2));
        }
        LabeledComplex::new("octahedron", &vs, &es).unwrap()
    }

    fn suspension(p: u32, q: u32, r: u32, poles: [u32; 6]) -> LabeledComplex {
        let vs = ["n", "s", "x", "y", "z"];
        let es = vec![
            ("x", "y", p),
            ("y", "z", q),
            ("z", "x", r),
            ("n", "x", poles[0]),
            ("n", "y", poles[1]),
            ("n", "z", poles[2]),
            ("s", "x", poles[3]),
            ("s", "y", poles[4]),
            ("s", "z", poles[5]),
        ];
        LabeledComplex::new("susp", &vs, &es).unwrap()
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        let o = octahedron();
        // exhaustive 3-clique count of the octahedron graph
        let n = o.vertex_count();
        let mut cliques = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if o.is_edge(a, b) && o.is_edge(b, c) && o.is_edge(a, c) {
                        cliques += 1;
                    }
                }
            }
        }
        assert_eq!(cliques, 8);
        assert_eq!(o.triangles().len(), 8);
        let r = o.validate_sphere();
        assert!(r.passed, "{:?}", r.diagnostics);
        assert_eq!(r.euler_characteristic, 2);
    }

    #[test]
    fn parse_errors() {
        let bad = r#"{"name":"x","vertices":["a","b"],"edges":[["a","b",1]]}"#;
        assert!(matches!(
            LabeledComplex::parse(bad),
            Err(NerveError::LabelOutOfRange(..))
        ));
        let bad = r#"{"name":"x","vertices":["a","b"],"edges":[["a","b",2.5]]}"#;
        assert!(matches!(
            LabeledComplex::parse(bad),
            Err(NerveError::LabelOutOfRange(..))
        ));
        let bad = r#"{"name":"x","vertices":["a"],"edges":[["a","a",2]]}"#;
        assert_eq!(
            LabeledComplex::parse(bad).unwrap_err(),
            NerveError::SelfLoop("a".into())
        );
        let bad = r#"{"name":"x","vertices":["a","a"],"edges":[]}"#;
        assert!(matches!(
            LabeledComplex::parse(bad),
            Err(NerveError::DuplicateVertex(_))
        ));
        let bad = r#"{"name":"x","vertices":["a"],"edges":[["a","q",2]]}"#;
        assert!(matches!(
            LabeledComplex::parse(bad),
            Err(NerveError::UnknownVertex(_))
        ));
        let bad = r#"{"name":"x","vertices":["a","b"],"edges":[["a","b",2],["b","a",3]]}"#;
        assert!(matches!(
            LabeledComplex::parse(bad),
            Err(NerveError::DuplicateEdge(..))
        ));
        assert!(matches!(
            LabeledComplex::parse("[1,2]"),
            Err(NerveError::Malformed(_))
        ));
        assert!(matches!(
            LabeledComplex::parse("{not json"),
            Err(NerveError::Malformed(_))
        ));
    }

    #[test]
    fn serialize_round_trip_is_bit_exact() {
        let o = octahedron();
        let text = o.serialize();
        let again = LabeledComplex::parse(&text).unwrap().serialize();
        assert_eq!(text, again);
        assert!(text.starts_with("{\n  \"edges\": [\n    [\"a\", \"b\", 2],"));
    }

    #[test]
    fn three_faces_on_one_edge_fail() {
        // t, t' joined, suspended points s, u, v around the edge
        let vs = ["t", "t2", "s", "u", "v"];
        let es = vec![
            ("t", "t2", 2),
            ("t", "s", 2),
            ("t", "u", 2),
            ("t", "v", 2),
            ("t2", "s", 2),
            ("t2", "u", 2),
            ("t2", "v", 2),
        ];
        let c = LabeledComplex::new("pages", &vs, &es).unwrap();
        let r = c.validate_sphere();
        assert!(!r.passed);
        assert!(r
            .bad_edges
            .iter()
            .any(|e| e.edge == ["t".to_string(), "t2".to_string()] && e.faces == 3));
    }

    #[test]
    fn full_subcomplex_cases() {
        let o = octahedron();
        let eq = o.full_subcomplex(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(
            (eq.vertex_count(), eq.edge_count(), eq.triangles().len()),
            (4, 4, 0)
        );
        let all = o.full_subcomplex(o.vertices()).unwrap();
        assert_eq!(all.serialize().replace("[sub]", ""), o.serialize());
        let s = suspension(3, 3, 4, [2; 6]);
        let tri = s.full_subcomplex(&["x", "y", "z"]).unwrap();
        let mut labels: Vec<u32> = tri.edges().values().copied().collect();
        labels.sort();
        assert_eq!(labels, vec![3, 3, 4]);
        assert!(tri.triangles().is_empty());
        assert!(o.full_subcomplex(&["nope"]).is_err());
    }

    #[test]
    fn links_and_stars() {
        let o = octahedron();
        let (link, star) = o.link_and_star("n").unwrap();
        assert_eq!(link.vertex_count(), 4);
        assert_eq!(link.edge_count(), 4);
        assert!(link.edges().values().all(|&m| m == 2));
        assert_eq!(star.vertex_count(), 5);
        assert_eq!(star.triangles().len(), 4);
        let s = suspension(3, 3, 3, [2; 6]);
        let (link, _) = s.link_and_star("n").unwrap();
        let mut labels: Vec<u32> = link.edges().values().copied().collect();
        labels.sort();
        assert_eq!(labels, vec![3, 3, 3]);
        assert!(o.link_and_star("q").is_err());
    }

    #[test]
    fn suspension_of_euclidean_triangle_is_a_sphere() {
        let s = suspension(3, 3, 3, [2; 6]);
        let r = s.validate_sphere();
        assert!(r.passed, "{:?}", r.diagnostics);
        // spherical equator would add a seventh face
        let s = suspension(2, 3, 3, [2; 6]);
        assert!(!s.validate_sphere().passed);
    }
}
