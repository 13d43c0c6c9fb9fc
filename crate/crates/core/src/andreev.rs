//! Capped cell complexes and Andreev's conditions for non-obtuse hyperbolic
//! polyhedra with dihedral angles `π/m`.
//!
//! A capped piece `z` is a full subcomplex of a nerve whose boundary circuits
//! have been closed off with triangular or square cells. Faces of the dual
//! polyhedron correspond to vertices of `z`, polyhedron vertices to cells, and
//! prismatic circuits to circuits in the 1-skeleton of `z`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::angle::cmp_reciprocal_sum;
use crate::nerve::{edge_key, EdgeKey, LabeledComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapError {
    #[error("cap {0:?} must have 3 or 4 distinct vertices")]
    BadLength(Vec<String>),
    #[error("cap {0:?} uses a non-edge")]
    NotACycle(Vec<String>),
    #[error("cap {0:?} is not Euclidean: triangles need angle sum π, squares need all labels 2")]
    NotEuclidean(Vec<String>),
    #[error("square caps {0:?} and {1:?} share all four edges")]
    DuplicateSquares(Vec<String>, Vec<String>),
    #[error("triangular caps {0:?} and {1:?} share all edges")]
    DuplicateTriangles(Vec<String>, Vec<String>),
    #[error("caps {0:?} and {1:?} form a pouch")]
    Pouch(Vec<String>, Vec<String>),
    #[error("opposite edges of square caps {0:?} and {1:?} coincide (cylinder or Möbius band)")]
    OppositeEdges(Vec<String>, Vec<String>),
    #[error("triangular cap {0:?} and square cap {1:?} share two edges")]
    TriangleSquareDoubleEdge(Vec<String>, Vec<String>),
    #[error("adjacent-edge coincidence merges Seifert subcomplexes: {0:?} and {1:?}")]
    AdjacentEdges(Vec<String>, Vec<String>),
    #[error("caps {0:?} and {1:?} meet in something that is not a cell")]
    BadIntersection(Vec<String>, Vec<String>),
    #[error("capped complex is not a 2-sphere: {0}")]
    NotASphere(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AndreevError {
    #[error("the dual polytope is a simplex; use the Gram signature instead")]
    Simplex,
}

/// Which removed feature a cap closes off.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CapSource {
    /// An empty Euclidean 3-circuit.
    EmptyCircuit,
    /// The link of a removed RA-cone.
    RaCone { apex: String },
    /// A boundary 4-circuit of a Seifert subcomplex.
    Seifert,
    /// Supplied directly by the caller.
    Given,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cap {
    /// Cyclically ordered boundary, as indices into [`CappedPiece::complex`].
    #[serde(skip)]
    pub cycle: Vec<usize>,
    pub vertices: Vec<String>,
    pub source: CapSource,
}

impl Cap {
    pub fn is_square(&self) -> bool {
        self.cycle.len() == 4
    }

    fn edges(&self) -> BTreeSet<EdgeKey> {
        let k = self.cycle.len();
        (0..k)
            .map(|i| edge_key(self.cycle[i], self.cycle[(i + 1) % k]))
            .collect()
    }
}

/// A cell decomposition of `S²` made of the triangles of a nerve fragment
/// plus caps.
#[derive(Debug, Clone)]
pub struct CappedPiece {
    pub complex: LabeledComplex,
    pub caps: Vec<Cap>,
}

impl CappedPiece {
    pub fn cell_count(&self) -> usize {
        self.complex.triangles().len() + self.caps.len()
    }

    /// Every 2-cell as a cyclic vertex list.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.complex
            .triangles()
            .iter()
            .map(|t| t.to_vec())
            .chain(self.caps.iter().map(|c| c.cycle.clone()))
            .collect()
    }

    fn bounds_cell(&self, vs: &BTreeSet<usize>) -> bool {
        self.cells()
            .iter()
            .any(|cell| cell.len() == vs.len() && cell.iter().all(|v| vs.contains(v)))
    }
}

/// Closes `base` off along `circuits`. Each circuit is a cyclic list of
/// vertex names.
pub fn cap(
    base: &LabeledComplex,
    circuits: &[(Vec<String>, CapSource)],
) -> Result<CappedPiece, CapError> {
    let mut caps = Vec::with_capacity(circuits.len());
    for (names, source) in circuits {
        let cycle = base
            .resolve(names)
            .map_err(|_| CapError::NotACycle(names.clone()))?;
        let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
        if !(3..=4).contains(&cycle.len()) || distinct.len() != cycle.len() {
            return Err(CapError::BadLength(names.clone()));
        }
        let k = cycle.len();
        let labels: Option<Vec<u32>> = (0..k)
            .map(|i| base.label(cycle[i], cycle[(i + 1) % k]))
            .collect();
        let Some(labels) = labels else {
            return Err(CapError::NotACycle(names.clone()));
        };
        let euclidean = match k {
            3 => {
                cmp_reciprocal_sum(&labels, 1) == Ordering::Equal
                    && !base.has_triangle(cycle[0], cycle[1], cycle[2])
            }
            _ => labels.iter().all(|&m| m == 2),
        };
        if !euclidean {
            return Err(CapError::NotEuclidean(names.clone()));
        }
        caps.push(Cap {
            cycle,
            vertices: names.clone(),
            source: source.clone(),
        });
    }
    for (i, a) in caps.iter().enumerate() {
        for b in &caps[i + 1..] {
            check_pair(a, b)?;
        }
    }
    let piece = CappedPiece {
        complex: base.clone(),
        caps,
    };
    sphere_check(&piece)?;
    Ok(piece)
}

fn check_pair(a: &Cap, b: &Cap) -> Result<(), CapError> {
    let (ea, eb) = (a.edges(), b.edges());
    let shared: Vec<EdgeKey> = ea.intersection(&eb).copied().collect();
    let names = || (a.vertices.clone(), b.vertices.clone());
    match (a.is_square(), b.is_square(), shared.len()) {
        (true, true, 4) => {
            let (x, y) = names();
            return Err(CapError::DuplicateSquares(x, y));
        }
        (false, false, 3) => {
            let (x, y) = names();
            return Err(CapError::DuplicateTriangles(x, y));
        }
        (true, true, 3) | (false, false, 2) => {
            let (x, y) = names();
            return Err(CapError::Pouch(x, y));
        }
        (true, true, 2) => {
            let (x, y) = names();
            let [(p, q), (r, s)] = [shared[0], shared[1]];
            return Err(if p == r || p == s || q == r || q == s {
                CapError::AdjacentEdges(x, y)
            } else {
                CapError::OppositeEdges(x, y)
            });
        }
        (sa, sb, k) if sa != sb && k >= 2 => {
            let (x, y) = if sa {
                (b.vertices.clone(), a.vertices.clone())
            } else {
                names()
            };
            return Err(CapError::TriangleSquareDoubleEdge(x, y));
        }
        _ => {}
    }
    let va: BTreeSet<usize> = a.cycle.iter().copied().collect();
    let vb: BTreeSet<usize> = b.cycle.iter().copied().collect();
    let common: BTreeSet<usize> = va.intersection(&vb).copied().collect();
    let is_cell = match (common.len(), shared.as_slice()) {
        (0 | 1, _) => true,
        (2, [(p, q)]) => common.contains(p) && common.contains(q),
        _ => false,
    };
    if is_cell {
        Ok(())
    } else {
        let (x, y) = names();
        Err(CapError::BadIntersection(x, y))
    }
}

fn sphere_check(z: &CappedPiece) -> Result<(), CapError> {
    let c = &z.complex;
    let cells = z.cells();
    let mut on_edge: BTreeMap<EdgeKey, usize> = c.edges().keys().map(|&e| (e, 0)).collect();
    for cell in &cells {
        let k = cell.len();
        for i in 0..k {
            *on_edge
                .entry(edge_key(cell[i], cell[(i + 1) % k]))
                .or_default() += 1;
        }
    }
    if let Some((&(a, b), &n)) = on_edge.iter().find(|(_, &n)| n != 2) {
        return Err(CapError::NotASphere(format!(
            "edge {}-{} lies in {n} cells",
            c.vertex_name(a),
            c.vertex_name(b)
        )));
    }
    // the corners at each vertex must close up into one cycle
    for v in 0..c.vertex_count() {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for cell in cells.iter().filter(|cell| cell.contains(&v)) {
            let k = cell.len();
            let i = cell.iter().position(|&x| x == v).unwrap();
            let (p, n) = (cell[(i + k - 1) % k], cell[(i + 1) % k]);
            adj.entry(p).or_default().push(n);
            adj.entry(n).or_default().push(p);
        }
        let closed = !adj.is_empty() && adj.values().all(|ns| ns.len() == 2) && {
            let start = *adj.keys().next().unwrap();
            let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
            while cur != start {
                let ns = &adj[&cur];
                let next = if ns[0] == prev { ns[1] } else { ns[0] };
                prev = cur;
                cur = next;
                steps += 1;
            }
            steps == adj.len()
        };
        if !closed {
            return Err(CapError::NotASphere(format!(
                "link of {} is not a circle",
                c.vertex_name(v)
            )));
        }
    }
    if !c.is_connected() {
        return Err(CapError::NotASphere("disconnected".into()));
    }
    let chi = c.vertex_count() as i64 - c.edge_count() as i64 + cells.len() as i64;
    if chi != 2 {
        return Err(CapError::NotASphere(format!("χ = {chi} ≠ 2")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: &'static str,
    pub passed: bool,
    /// Offending configurations, by vertex name.
    pub violations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AndreevReport {
    pub passed: bool,
    pub conditions: Vec<ConditionReport>,
    pub triangular_caps: usize,
    pub square_caps: usize,
    pub ideal_vertex_count: usize,
}

impl AndreevReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.condition == id)
    }
}

/// Checks conditions (i) to (v) on `z`.
pub fn check(z: &CappedPiece) -> Result<AndreevReport, AndreevError> {
    let c = &z.complex;
    if c.vertex_count() == 4 && z.cell_count() == 4 {
        return Err(AndreevError::Simplex);
    }
    let names =
        |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| c.vertex_name(v).to_owned()).collect() };
    let label = |a: usize, b: usize| c.label(a, b).expect("cell edges are edges");

    let mut v1 = Vec::new();
    for t in c.triangles() {
        if cmp_reciprocal_sum(
            &[label(t[0], t[1]), label(t[1], t[2]), label(t[0], t[2])],
            1,
        ) != Ordering::Greater
        {
            v1.push(names(t));
        }
    }
    for cap in &z.caps {
        let k = cap.cycle.len();
        let labels: Vec<u32> = (0..k)
            .map(|i| label(cap.cycle[i], cap.cycle[(i + 1) % k]))
            .collect();
        let ok = match k {
            3 => cmp_reciprocal_sum(&labels, 1) == Ordering::Equal,
            _ => labels.iter().all(|&m| m == 2),
        };
        if !ok {
            v1.push(cap.vertices.clone());
        }
    }

    let mut v2 = Vec::new();
    for (&(a, b), &mab) in c.edges() {
        for &d in c.neighbors(a).intersection(c.neighbors(b)) {
            if d <= b {
                continue;
            }
            if z.bounds_cell(&[a, b, d].into_iter().collect()) {
                continue;
            }
            if cmp_reciprocal_sum(&[mab, label(a, d), label(b, d)], 1) != Ordering::Less {
                v2.push(names(&[a, b, d]));
            }
        }
    }

    let mut v3 = Vec::new();
    for u in 0..c.vertex_count() {
        for w in u + 1..c.vertex_count() {
            if c.is_edge(u, w) {
                continue;
            }
            let common: Vec<usize> = c
                .neighbors(u)
                .intersection(c.neighbors(w))
                .copied()
                .filter(|&x| label(u, x) == 2 && label(w, x) == 2)
                .collect();
            for (i, &x) in common.iter().enumerate() {
                for &y in &common[i + 1..] {
                    // each 4-cycle is seen from both diagonals; keep the one with the smaller
                    if c.is_edge(x, y) || x.min(y) < u {
                        continue;
                    }
                    let vs: BTreeSet<usize> = [u, x, w, y].into_iter().collect();
                    if !z
                        .caps
                        .iter()
                        .any(|cap| cap.is_square() && cap.cycle.iter().all(|v| vs.contains(v)))
                    {
                        v3.push(names(&[u, x, w, y]));
                    }
                }
            }
        }
    }

    let mut v4 = Vec::new();
    if c.vertex_count() == 5 && z.cell_count() == 6 && z.caps.iter().all(|cap| !cap.is_square()) {
        let poles: Vec<usize> = (0..5).filter(|&v| c.valence(v) == 3).collect();
        if poles.len() == 2 && !c.is_edge(poles[0], poles[1]) {
            let all_right = poles
                .iter()
                .all(|&p| c.neighbors(p).iter().all(|&x| label(p, x) == 2));
            if all_right {
                v4.push(names(&poles));
            }
        }
    }

    let mut v5 = Vec::new();
    for cap in z.caps.iter().filter(|cap| cap.is_square()) {
        for i in 0..2 {
            let (p, q) = (cap.cycle[i], cap.cycle[i + 2]);
            for &x in c.neighbors(p).intersection(c.neighbors(q)) {
                if cap.cycle.contains(&x) {
                    continue;
                }
                if label(x, p) == 2 && label(x, q) == 2 {
                    v5.push(names(&[x, p, q]));
                }
            }
        }
    }

    let conditions: Vec<ConditionReport> =
        [("i", v1), ("ii", v2), ("iii", v3), ("iv", v4), ("v", v5)]
            .into_iter()
            .map(|(condition, violations)| ConditionReport {
                condition,
                passed: violations.is_empty(),
                violations,
            })
            .collect();
    let square_caps = z.caps.iter().filter(|c| c.is_square()).count();
    Ok(AndreevReport {
        passed: conditions.iter().all(|c| c.passed),
        conditions,
        triangular_caps: z.caps.len() - square_caps,
        square_caps,
        ideal_vertex_count: z.caps.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::tests::octahedron;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn susp(p: u32, q: u32, r: u32, poles: [u32; 6]) -> LabeledComplex {
        let mut es = vec![("x", "y", p), ("y", "z", q), ("z", "x", r)];
        let mut k = 0;
        for pole in ["n", "s"] {
            for e in ["x", "y", "z"] {
                es.push((pole, e, poles[k]));
                k += 1;
            }
        }
        LabeledComplex::new("s", &["n", "s", "x", "y", "z"], &es).unwrap()
    }

    fn verdicts(r: &AndreevReport) -> Vec<bool> {
        r.conditions.iter().map(|c| c.passed).collect()
    }

    #[test]
    fn suspension_cases() {
        let z = cap(&susp(3, 3, 3, [2; 6]), &[]).unwrap();
        let r = check(&z).unwrap();
        assert_eq!(verdicts(&r), [true, false, true, false, true]);
        let z = cap(&susp(3, 3, 4, [2, 2, 3, 2, 2, 2]), &[]).unwrap();
        assert!(check(&z).unwrap().passed);
    }

    #[test]
    fn octahedron_hemisphere() {
        let o = octahedron();
        let half = o.full_subcomplex(&["n", "a", "b", "c", "d"]).unwrap();
        let z = cap(&half, &[(names(&["a", "b", "c", "d"]), CapSource::Given)]).unwrap();
        assert_eq!(z.complex.vertex_count(), 5);
        assert_eq!(z.complex.triangles().len(), 4);
        assert_eq!(z.caps.len(), 1);
        let r = check(&z).unwrap();
        // the apex touches opposite corners with right angles
        assert!(!r.condition("v").unwrap().passed);
        // the uncapped octahedron violates (iii) three times
        let r = check(&cap(&o, &[]).unwrap()).unwrap();
        assert_eq!(r.condition("iii").unwrap().violations.len(), 3);
    }

    #[test]
    fn cap_obstructions() {
        let o = octahedron();
        let sq = |v: &[&str]| (names(v), CapSource::Given);
        let err = cap(&o, &[sq(&["a", "b", "c", "d"]), sq(&["n", "a", "s", "c"])]).unwrap_err();
        assert!(matches!(err, CapError::BadIntersection(..)), "{err}");
        let err = cap(&o, &[sq(&["a", "b", "c", "d"]), sq(&["c", "d", "a", "b"])]).unwrap_err();
        assert!(matches!(err, CapError::DuplicateSquares(..)));
        let err = cap(&o, &[sq(&["a", "b", "c", "d"]), sq(&["n", "a", "b", "c"])]);
        assert!(err.is_err());
        let err = cap(&o, &[sq(&["n", "a", "s", "b"]), sq(&["n", "a", "s", "d"])]).unwrap_err();
        assert!(matches!(err, CapError::AdjacentEdges(..)));
        assert!(err
            .to_string()
            .contains("adjacent-edge coincidence merges Seifert subcomplexes"));
        let err = cap(&o, &[sq(&["n", "a", "x", "b"])]).unwrap_err();
        assert!(matches!(err, CapError::NotACycle(..)));
    }

    #[test]
    fn simplex_is_rejected() {
        let t = LabeledComplex::new(
            "t",
            &["a", "b", "c", "d"],
            &[
                ("a", "b", 5),
                ("b", "c", 3),
                ("c", "d", 4),
                ("a", "c", 2),
                ("a", "d", 2),
                ("b", "d", 2),
            ],
        )
        .unwrap();
        assert_eq!(check(&cap(&t, &[]).unwrap()), Err(AndreevError::Simplex));
    }
}
