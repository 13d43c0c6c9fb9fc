//! Cutting a nerve along its Euclidean features into geometric pieces, and
//! the ℓ²-acyclicity certificate assembled from them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::andreev::{self, AndreevReport, Cap, CapError, CapSource, CappedPiece};
use crate::angle::cmp_reciprocal_sum;
use crate::coxeter::{gram_signature, CoxeterError, GramSignature};
use crate::detect::{CircuitFlag, FeatureSet, Suspension, Wall};
use crate::ell2::{piece_betti, BettiVector, Ell2Error, Reason};
use crate::nerve::{edge_key, EdgeKey, LabeledComplex, SphereNerve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    HyperbolicCapped,
    RaCone,
    HyperbolicStarIdeal,
    RaSuspension,
    EuclideanWall,
    WholeSpecial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Geometry {
    H3,
    E3,
    E2xI,
    H2xE,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("hyperbolic candidate {support:?} fails Andreev's conditions")]
    Inconsistent {
        support: Vec<String>,
        report: Box<AndreevReport>,
    },
    #[error("capping {support:?}: {source}")]
    Cap {
        support: Vec<String>,
        source: CapError,
    },
    #[error("capped simplex {0:?} has Gram signature {1:?}, expected one negative direction")]
    SimplexSignature(Vec<String>, GramSignature),
    #[error("region {0:?} is not a full subcomplex of the nerve")]
    NotFull(Vec<String>),
    #[error("triangles {0:?} are claimed by more than one piece")]
    Overlap(Vec<String>),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub kind: Kind,
    pub geometry: Geometry,
    pub fibered: bool,
    /// Vertex names, sorted.
    pub support: Vec<String>,
    #[serde(skip)]
    pub vertex_set: BTreeSet<usize>,
    pub caps: Vec<Cap>,
    #[serde(skip)]
    pub capped: Option<CappedPiece>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub andreev: Option<AndreevReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramSignature>,
}

impl Piece {
    fn plain(
        c: &LabeledComplex,
        kind: Kind,
        geometry: Geometry,
        vertex_set: BTreeSet<usize>,
    ) -> Self {
        Self {
            kind,
            geometry,
            fibered: kind == Kind::RaSuspension
                || (kind == Kind::WholeSpecial && geometry == Geometry::H2xE),
            support: c.names_of(&vertex_set),
            vertex_set,
            caps: Vec::new(),
            capped: None,
            andreev: None,
            gram: None,
        }
    }

    pub fn cap_count(&self) -> usize {
        self.caps.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WallRecord {
    #[serde(skip)]
    pub wall: Wall,
    /// Cyclic order, starting at the least name.
    pub vertices: Vec<String>,
    pub labels: Vec<u32>,
    /// Pieces whose support contains the wall.
    pub pieces: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    pub walls: Vec<WallRecord>,
    pub characteristic: Vec<usize>,
    pub atoroidal_complement: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Decomposition {
    fn assemble(
        c: &LabeledComplex,
        mut pieces: Vec<Piece>,
        walls: BTreeSet<Wall>,
        note: Option<String>,
    ) -> Self {
        pieces.sort_by(|a, b| {
            (a.kind, a.geometry, &a.support).cmp(&(b.kind, b.geometry, &b.support))
        });
        let mut walls: Vec<WallRecord> = walls
            .into_iter()
            .map(|wall| {
                let set = wall.vertex_set();
                let vertices = named_cycle(c, &wall.cycle());
                let idx = c.resolve(&vertices).expect("wall vertices exist");
                let k = idx.len();
                WallRecord {
                    labels: (0..k)
                        .map(|i| c.label(idx[i], idx[(i + 1) % k]).unwrap())
                        .collect(),
                    vertices,
                    pieces: pieces
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| set.is_subset(&p.vertex_set))
                        .map(|(i, _)| i)
                        .collect(),
                    wall,
                }
            })
            .collect();
        walls.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let characteristic = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.geometry != Geometry::H3)
            .map(|(i, _)| i)
            .collect();
        let atoroidal_complement = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.geometry == Geometry::H3)
            .map(|(i, _)| i)
            .collect();
        Self {
            pieces,
            walls,
            characteristic,
            atoroidal_complement,
            note,
        }
    }

    /// Sorted `(kind, geometry, support size, cap count)` of every piece;
    /// equal for isomorphic inputs.
    pub fn summary(&self) -> Vec<(Kind, Geometry, usize, usize)> {
        let mut s: Vec<_> = self
            .pieces
            .iter()
            .map(|p| (p.kind, p.geometry, p.support.len(), p.caps.len()))
            .collect();
        s.sort();
        s
    }

    pub fn count(&self, geometry: Geometry) -> usize {
        self.pieces
            .iter()
            .filter(|p| p.geometry == geometry)
            .count()
    }
}

/// Rotates and reflects a cycle of vertex names so that it starts at the
/// least name and continues towards the lesser neighbor.
fn named_cycle(c: &LabeledComplex, cycle: &[usize]) -> Vec<String> {
    let names: Vec<String> = cycle.iter().map(|&v| c.vertex_name(v).to_owned()).collect();
    let k = names.len();
    let start = (0..k).min_by_key(|&i| &names[i]).unwrap();
    let fwd: Vec<String> = (0..k).map(|i| names[(start + i) % k].clone()).collect();
    let bwd: Vec<String> = (0..k).map(|i| names[(start + k - i) % k].clone()).collect();
    fwd.min(bwd)
}

/// The whole-complex cases: `∂Δ³`, suspensions of a 3-gon, the
/// right-angled octahedron and any other nerve that is itself one
/// RA-suspension.
pub fn classify_special(nerve: &SphereNerve) -> Result<Option<Decomposition>, DecomposeError> {
    classify_special_with(nerve, &FeatureSet::detect(nerve))
}

fn classify_special_with(
    nerve: &SphereNerve,
    features: &FeatureSet,
) -> Result<Option<Decomposition>, DecomposeError> {
    let c: &LabeledComplex = nerve;
    let all: BTreeSet<usize> = (0..c.vertex_count()).collect();
    let whole = |geometry: Geometry, note: &str| {
        Decomposition::assemble(
            c,
            vec![Piece::plain(c, Kind::WholeSpecial, geometry, all.clone())],
            BTreeSet::new(),
            Some(note.to_owned()),
        )
    };

    if nerve.is_tetrahedron_boundary() {
        let sig = gram_signature(&c.coxeter_matrix(), &[0, 1, 2, 3])?;
        let geometry = match (sig.negatives, sig.zeros) {
            (0, 1) => Geometry::E3,
            (1, 0) => Geometry::H3,
            _ => return Err(DecomposeError::SimplexSignature(c.names_of(&all), sig)),
        };
        let mut d = whole(
            geometry,
            "the nerve bounds a simplex; the Gram signature decides",
        );
        d.pieces[0].gram = Some(sig);
        return Ok(Some(d));
    }

    if let Some((poles, [x, y, z])) = nerve.suspension_of_triangle() {
        let equator = [
            c.label(x, y).unwrap(),
            c.label(y, z).unwrap(),
            c.label(x, z).unwrap(),
        ];
        let ii_fails = cmp_reciprocal_sum(&equator, 1).is_eq();
        let iv_fails = poles
            .iter()
            .all(|&p| c.neighbors(p).iter().all(|&e| c.label(p, e) == Some(2)));
        return Ok(Some(match (ii_fails, iv_fails) {
            (true, true) => whole(
                Geometry::E3,
                "both poles are right-angled cones; their union is the whole nerve, a right-angled suspension of a Euclidean triangle",
            ),
            (false, true) => whole(Geometry::H2xE, "the nerve is a right-angled suspension"),
            (true, false) => cut(nerve, features)?,
            (false, false) => {
                let mut d = whole(Geometry::H3, "suspension of a hyperbolic triangle satisfying Andreev's conditions");
                let z = andreev::cap(c, &[]).map_err(|source| DecomposeError::Cap {
                    support: c.names_of(&all),
                    source,
                })?;
                let report = andreev::check(&z).expect("five vertices is not a simplex");
                if !report.passed {
                    return Err(DecomposeError::Inconsistent {
                        support: c.names_of(&all),
                        report: Box::new(report),
                    });
                }
                d.pieces[0].andreev = Some(report);
                d.pieces[0].capped = Some(z);
                d
            }
        }));
    }

    if nerve.is_right_angled_octahedron() {
        return Ok(Some(whole(Geometry::E3, "right-angled octahedron")));
    }

    if let Some(s) = features.ra_suspensions.iter().find(|s| s.is_whole(c)) {
        let base = nerve.link(s.poles[0]);
        let k = base.len();
        let labels: Vec<u32> = (0..k)
            .map(|i| c.label(base[i], base[(i + 1) % k]).unwrap())
            .collect();
        let euclidean = match k {
            3 => cmp_reciprocal_sum(&labels, 1).is_eq(),
            4 => labels.iter().all(|&m| m == 2),
            _ => false,
        };
        let geometry = if euclidean {
            Geometry::E3
        } else {
            Geometry::H2xE
        };
        return Ok(Some(whole(
            geometry,
            "the nerve is a right-angled suspension",
        )));
    }
    Ok(None)
}

/// Cuts `nerve` along its Euclidean features and classifies every piece.
pub fn decompose(nerve: &SphereNerve) -> Result<Decomposition, DecomposeError> {
    let features = FeatureSet::detect(nerve);
    match classify_special_with(nerve, &features)? {
        Some(d) => Ok(d),
        None => cut(nerve, &features),
    }
}

fn cut(nerve: &SphereNerve, features: &FeatureSet) -> Result<Decomposition, DecomposeError> {
    let c: &LabeledComplex = nerve;
    let mut walls: BTreeSet<Wall> = features
        .euclidean_3circuits
        .iter()
        .map(|t| Wall::Three(t.vertices))
        .collect();
    for class in &features.seifert_subcomplexes {
        walls.extend(class.gluing_circuits.iter().map(|&q| Wall::Four(q)));
        walls.extend(class.boundary_circuits.iter().map(|&q| Wall::Four(q)));
    }

    let triangles: Vec<[usize; 3]> = c.triangles().iter().copied().collect();
    let mut on_edge: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            on_edge.entry(edge_key(a, b)).or_default().push(i);
        }
    }
    let cut_edges: BTreeSet<EdgeKey> = walls.iter().flat_map(Wall::edges).collect();
    let regions = components(&triangles, &on_edge, &cut_edges);
    let region_vertices =
        |r: &[usize]| -> BTreeSet<usize> { r.iter().flat_map(|&t| triangles[t]).collect() };
    let mut claimed: Vec<Option<usize>> = vec![None; regions.len()];
    let mut pieces: Vec<Piece> = Vec::new();
    let mut claim =
        |pieces: &Vec<Piece>, inside: &dyn Fn(&[usize; 3]) -> bool| -> Result<(), DecomposeError> {
            for (r, region) in regions.iter().enumerate() {
                if region.iter().all(|&t| inside(&triangles[t])) {
                    if claimed[r].is_some() {
                        return Err(DecomposeError::Overlap(
                            c.names_of(&region_vertices(region)),
                        ));
                    }
                    claimed[r] = Some(pieces.len());
                }
            }
            Ok(())
        };

    for cone in features
        .ra_cones
        .iter()
        .filter(|cone| cone.circuit.len() == 3)
    {
        let set: BTreeSet<usize> = cone.circuit.iter().copied().chain([cone.apex]).collect();
        claim(&pieces, &|t| t.contains(&cone.apex))?;
        pieces.push(Piece::plain(c, Kind::RaCone, Geometry::E2xI, set));
    }
    for class in &features.seifert_subcomplexes {
        for &m in &class.members {
            let s = &features.ra_suspensions[m];
            let set = s.vertex_set();
            let (kind, geometry) = member_geometry(features, s);
            claim(&pieces, &|t| t.iter().all(|v| set.contains(v)))?;
            pieces.push(Piece::plain(c, kind, geometry, set));
        }
    }
    for circuit in features
        .euclidean_3circuits
        .iter()
        .filter(|t| t.flag.is_empty())
    {
        let set = circuit.vertices.into_iter().collect();
        pieces.push(Piece::plain(c, Kind::EuclideanWall, Geometry::E2xI, set));
    }

    let boundary_of = |inside: &BTreeSet<usize>| -> BTreeSet<EdgeKey> {
        on_edge
            .iter()
            .filter(|(_, ts)| ts.iter().filter(|t| inside.contains(t)).count() == 1)
            .map(|(&e, _)| e)
            .collect()
    };
    // caps for a union of regions, and whether they close it off
    let select = |region: &[usize]| -> (Vec<&Wall>, bool) {
        let inside: BTreeSet<usize> = region.iter().copied().collect();
        let boundary = boundary_of(&inside);
        let interior: BTreeSet<EdgeKey> = on_edge
            .iter()
            .filter(|(_, ts)| ts.iter().any(|t| inside.contains(t)))
            .map(|(&e, _)| e)
            .filter(|e| !boundary.contains(e))
            .collect();
        let candidates: Vec<(&Wall, BTreeSet<usize>)> = walls
            .iter()
            .filter(|w| {
                let edges = w.edges();
                edges.iter().any(|e| boundary.contains(e))
                    && edges.iter().all(|e| !interior.contains(e))
            })
            .map(|w| {
                let w_edges: BTreeSet<EdgeKey> = w.edges().into_iter().collect();
                let e = *w.edges().iter().find(|e| boundary.contains(e)).unwrap();
                let outside = *on_edge[&e].iter().find(|t| !inside.contains(t)).unwrap();
                (w, flood(outside, &triangles, &on_edge, &w_edges))
            })
            .collect();
        let maximal: Vec<&Wall> = candidates
            .iter()
            .filter(|(_, o)| !candidates.iter().any(|(_, o2)| o != o2 && o.is_subset(o2)))
            .map(|(w, _)| *w)
            .collect();
        if closes_up(&maximal, &boundary) {
            return (maximal, true);
        }
        let mut pool: Vec<&Wall> = candidates.iter().map(|(w, _)| *w).collect();
        loop {
            let reach: BTreeSet<EdgeKey> = pool
                .iter()
                .flat_map(|w| w.edges())
                .chain(boundary.iter().copied())
                .collect();
            let more: Vec<&Wall> = walls
                .iter()
                .filter(|w| {
                    let edges = w.edges();
                    !pool.contains(w)
                        && edges.iter().any(|e| reach.contains(e))
                        && edges.iter().all(|e| !interior.contains(e))
                })
                .collect();
            if more.is_empty() {
                break;
            }
            pool.extend(more);
        }
        pool.sort_by_key(|w| named_cycle(c, &w.cycle()));
        match smallest_cover(&pool, &boundary) {
            Some(cover) => (cover, true),
            None => (maximal, false),
        }
    };
    let open: Vec<usize> = (0..regions.len())
        .filter(|&r| claimed[r].is_none() && !select(&regions[r]).1)
        .collect();
    let mut clusters: Vec<Vec<usize>> = (0..regions.len())
        .filter(|&r| claimed[r].is_none() && !open.contains(&r))
        .map(|r| vec![r])
        .collect();
    clusters.extend(merge_across_walls(
        &regions, &open, &walls, &triangles, &on_edge,
    ));
    clusters.sort();
    for cluster in clusters {
        let region: Vec<usize> = cluster
            .iter()
            .flat_map(|&r| regions[r].iter().copied())
            .collect();
        let (chosen, _) = select(&region);
        let mut set = region_vertices(&region);
        set.extend(chosen.iter().flat_map(|w| w.vertex_set()));
        let caps: Vec<(&Wall, CapSource)> = chosen
            .into_iter()
            .map(|w| (w, cap_source(c, features, w)))
            .collect();
        let inside: BTreeSet<usize> = region.iter().copied().collect();
        pieces.push(hyperbolic_piece(c, &set, &inside, &triangles, &caps)?);
    }
    Ok(Decomposition::assemble(c, pieces, walls, None))
}

/// Groups `open` regions, none of which closes off alone, by the side of
/// every wall they lie on.
fn merge_across_walls(
    regions: &[Vec<usize>],
    open: &[usize],
    walls: &BTreeSet<Wall>,
    triangles: &[[usize; 3]],
    on_edge: &BTreeMap<EdgeKey, Vec<usize>>,
) -> Vec<Vec<usize>> {
    if open.is_empty() {
        return Vec::new();
    }
    let sides: Vec<BTreeSet<usize>> = walls
        .iter()
        .map(|w| flood(0, triangles, on_edge, &w.edges().into_iter().collect()))
        .collect();
    let mut chambers: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for &r in open {
        let key = sides
            .iter()
            .map(|side| side.contains(&regions[r][0]))
            .collect();
        chambers.entry(key).or_default().push(r);
    }
    chambers.into_values().collect()
}

/// Every boundary edge lies on exactly one cap and every other cap edge on
/// exactly two, so the caps close the region off.
fn closes_up(caps: &[&Wall], boundary: &BTreeSet<EdgeKey>) -> bool {
    let mut uses: BTreeMap<EdgeKey, usize> = BTreeMap::new();
    for w in caps {
        for e in w.edges() {
            *uses.entry(e).or_default() += 1;
        }
    }
    boundary.iter().all(|e| uses.get(e) == Some(&1))
        && uses.iter().all(|(e, &n)| boundary.contains(e) || n == 2)
}

/// The fewest candidates that close the region off, first in candidate
/// order among ties.
fn smallest_cover<'a>(
    candidates: &[&'a Wall],
    boundary: &BTreeSet<EdgeKey>,
) -> Option<Vec<&'a Wall>> {
    fn search(
        candidates: &[&Wall],
        boundary: &BTreeSet<EdgeKey>,
        uses: &mut BTreeMap<EdgeKey, usize>,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        if best.as_ref().is_some_and(|b| b.len() <= chosen.len()) {
            return;
        }
        let count =
            |uses: &BTreeMap<EdgeKey, usize>, e: &EdgeKey| uses.get(e).copied().unwrap_or(0);
        let open = boundary
            .iter()
            .find(|e| count(uses, e) == 0)
            .or_else(|| {
                uses.iter()
                    .find(|(e, &n)| n == 1 && !boundary.contains(e))
                    .map(|(e, _)| e)
            })
            .copied();
        let Some(open) = open else {
            *best = Some(chosen.clone());
            return;
        };
        for (i, w) in candidates.iter().enumerate() {
            let edges = w.edges();
            if chosen.contains(&i) || !edges.contains(&open) {
                continue;
            }
            let fits = edges
                .iter()
                .all(|e| count(uses, e) < if boundary.contains(e) { 1 } else { 2 });
            if !fits {
                continue;
            }
            for e in &edges {
                *uses.entry(*e).or_default() += 1;
            }
            chosen.push(i);
            search(candidates, boundary, uses, chosen, best);
            chosen.pop();
            for e in &edges {
                *uses.get_mut(e).unwrap() -= 1;
            }
            uses.retain(|_, n| *n > 0);
        }
    }
    let mut best = None;
    search(
        candidates,
        boundary,
        &mut BTreeMap::new(),
        &mut Vec::new(),
        &mut best,
    );
    best.map(|b| b.into_iter().map(|i| candidates[i]).collect())
}

fn member_geometry(features: &FeatureSet, s: &Suspension) -> (Kind, Geometry) {
    let set = s.vertex_set();
    if set.len() == 4 {
        return (Kind::EuclideanWall, Geometry::E2xI);
    }
    let is_cone = features.ra_cones.iter().any(|cone| {
        cone.circuit.len() == 4
            && set.len() == 5
            && set.contains(&cone.apex)
            && cone.circuit.iter().all(|v| set.contains(v))
    });
    if is_cone {
        (Kind::RaCone, Geometry::E2xI)
    } else {
        (Kind::RaSuspension, Geometry::H2xE)
    }
}

fn cap_source(c: &LabeledComplex, features: &FeatureSet, w: &Wall) -> CapSource {
    match w {
        Wall::Three(t) => {
            let circuit = features
                .euclidean_3circuits
                .iter()
                .find(|x| x.vertices == *t)
                .unwrap();
            match circuit.flag {
                CircuitFlag::RaConeBoundary => {
                    let apex = circuit
                        .apexes
                        .iter()
                        .find(|&&a| c.neighbors(a).iter().all(|&x| c.label(a, x) == Some(2)))
                        .unwrap();
                    CapSource::RaCone {
                        apex: c.vertex_name(*apex).to_owned(),
                    }
                }
                _ => CapSource::EmptyCircuit,
            }
        }
        Wall::Four(_) => CapSource::Seifert,
    }
}

fn hyperbolic_piece(
    c: &LabeledComplex,
    set: &BTreeSet<usize>,
    region: &BTreeSet<usize>,
    triangles: &[[usize; 3]],
    caps: &[(&Wall, CapSource)],
) -> Result<Piece, DecomposeError> {
    let support = c.names_of(set);
    let base = c.induced(set, format!("{}/piece", c.name()));
    let expected: BTreeSet<[usize; 3]> = region.iter().map(|&t| triangles[t]).collect();
    let full_count = c
        .triangles()
        .iter()
        .filter(|t| t.iter().all(|v| set.contains(v)))
        .count();
    if full_count != expected.len() {
        return Err(DecomposeError::NotFull(support));
    }
    let mut circuits: Vec<(Vec<String>, CapSource)> = caps
        .iter()
        .map(|(w, src)| (named_cycle(c, &w.cycle()), src.clone()))
        .collect();
    circuits.sort_by(|a, b| a.0.cmp(&b.0));
    let z = andreev::cap(&base, &circuits).map_err(|source| DecomposeError::Cap {
        support: support.clone(),
        source,
    })?;
    let mut piece = Piece::plain(c, Kind::HyperbolicCapped, Geometry::H3, set.clone());
    piece.caps = z.caps.clone();
    match andreev::check(&z) {
        Err(andreev::AndreevError::Simplex) => {
            let sig = gram_signature(&base.coxeter_matrix(), &[0, 1, 2, 3])?;
            if sig != GramSignature::new(3, 1, 0) {
                return Err(DecomposeError::SimplexSignature(support, sig));
            }
            piece.kind = Kind::HyperbolicStarIdeal;
            piece.gram = Some(sig);
        }
        Ok(report) if report.passed => piece.andreev = Some(report),
        Ok(report) => {
            return Err(DecomposeError::Inconsistent {
                support,
                report: Box::new(report),
            })
        }
    }
    piece.capped = Some(z);
    Ok(piece)
}

/// Connected components of triangles, adjacent across edges not in `cut`.
fn components(
    triangles: &[[usize; 3]],
    on_edge: &BTreeMap<EdgeKey, Vec<usize>>,
    cut: &BTreeSet<EdgeKey>,
) -> Vec<Vec<usize>> {
    let mut seen = vec![false; triangles.len()];
    let mut out = Vec::new();
    for start in 0..triangles.len() {
        if !seen[start] {
            let comp: Vec<usize> = flood(start, triangles, on_edge, cut).into_iter().collect();
            for &t in &comp {
                seen[t] = true;
            }
            out.push(comp);
        }
    }
    out
}

fn flood(
    start: usize,
    triangles: &[[usize; 3]],
    on_edge: &BTreeMap<EdgeKey, Vec<usize>>,
    cut: &BTreeSet<EdgeKey>,
) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let [a, b, d] = triangles[t];
        for e in [edge_key(a, b), edge_key(b, d), edge_key(a, d)] {
            if cut.contains(&e) {
                continue;
            }
            for &u in &on_edge[&e] {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

/// Statement proved at the root of every certificate.
pub const CONCLUSION: &str = "h_i(L) = 0 for all i";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum CertNode {
    Piece {
        piece: usize,
        reason: Reason,
        axiom: &'static str,
        betti: BettiVector,
    },
    Wall {
        wall: usize,
        reason: Reason,
        axiom: &'static str,
    },
    MayerVietoris {
        parts: Vec<CertNode>,
        walls: Vec<CertNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub root: CertNode,
    pub conclusion: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error(transparent)]
    Ell2(#[from] Ell2Error),
    #[error("piece {0} appears {1} times")]
    PieceCount(usize, usize),
    #[error("wall {0} appears {1} times")]
    WallCount(usize, usize),
    #[error("no piece {0}")]
    UnknownPiece(usize),
    #[error("no wall {0}")]
    UnknownWall(usize),
    #[error("piece {0} cites {1:?} but its geometry requires {2:?}")]
    ReasonMismatch(usize, Reason, Reason),
    #[error("axiom {0:?} does not match its reason")]
    AxiomMismatch(&'static str),
    #[error("piece {0} has a nonzero Betti vector")]
    Nonzero(usize),
    #[error("wall {0} is not a Euclidean circuit of the nerve")]
    NotEuclidean(usize),
    #[error("a Mayer–Vietoris node may only join leaves")]
    Shape,
    #[error("root concludes {0:?}")]
    Conclusion(String),
}

pub fn acyclicity_certificate(
    _nerve: &SphereNerve,
    d: &Decomposition,
) -> Result<Certificate, Ell2Error> {
    let mut parts = Vec::with_capacity(d.pieces.len());
    for (i, p) in d.pieces.iter().enumerate() {
        let (betti, reason) = piece_betti(p)?;
        parts.push(CertNode::Piece {
            piece: i,
            reason,
            axiom: reason.axiom(),
            betti,
        });
    }
    let root = if parts.len() == 1 && d.walls.is_empty() {
        parts.pop().unwrap()
    } else {
        CertNode::MayerVietoris {
            parts,
            walls: (0..d.walls.len())
                .map(|wall| CertNode::Wall {
                    wall,
                    reason: Reason::EuclideanFactor,
                    axiom: Reason::EuclideanFactor.axiom(),
                })
                .collect(),
        }
    };
    Ok(Certificate {
        root,
        conclusion: CONCLUSION.to_owned(),
    })
}

/// Structural validation: every piece is a leaf exactly once with the reason
/// its geometry calls for, every wall is a Euclidean circuit of `nerve`
/// joined exactly once, and the root states the vanishing.
pub fn check_certificate(
    nerve: &SphereNerve,
    d: &Decomposition,
    cert: &Certificate,
) -> Result<(), CertificateError> {
    if cert.conclusion != CONCLUSION {
        return Err(CertificateError::Conclusion(cert.conclusion.clone()));
    }
    let mut piece_seen = vec![0usize; d.pieces.len()];
    let mut wall_seen = vec![0usize; d.walls.len()];
    let mut leaf = |node: &CertNode, as_wall: bool| -> Result<(), CertificateError> {
        match (node, as_wall) {
            (
                CertNode::Piece {
                    piece,
                    reason,
                    axiom,
                    betti,
                },
                false,
            ) => {
                let p = d
                    .pieces
                    .get(*piece)
                    .ok_or(CertificateError::UnknownPiece(*piece))?;
                let expected = Reason::for_geometry(p.kind, p.geometry)?;
                if expected != *reason {
                    return Err(CertificateError::ReasonMismatch(*piece, *reason, expected));
                }
                if reason.axiom() != *axiom {
                    return Err(CertificateError::AxiomMismatch(axiom));
                }
                if !betti.is_zero() {
                    return Err(CertificateError::Nonzero(*piece));
                }
                piece_seen[*piece] += 1;
                Ok(())
            }
            (
                CertNode::Wall {
                    wall,
                    reason,
                    axiom,
                },
                true,
            ) => {
                let w = d
                    .walls
                    .get(*wall)
                    .ok_or(CertificateError::UnknownWall(*wall))?;
                if *reason != Reason::EuclideanFactor || reason.axiom() != *axiom {
                    return Err(CertificateError::AxiomMismatch(axiom));
                }
                if !w.wall.is_euclidean_in(nerve) {
                    return Err(CertificateError::NotEuclidean(*wall));
                }
                wall_seen[*wall] += 1;
                Ok(())
            }
            _ => Err(CertificateError::Shape),
        }
    };
    match &cert.root {
        CertNode::MayerVietoris { parts, walls } => {
            for p in parts {
                leaf(p, false)?;
            }
            for w in walls {
                leaf(w, true)?;
            }
        }
        other => leaf(other, false)?,
    }
    if let Some((i, &n)) = piece_seen.iter().enumerate().find(|(_, &n)| n != 1) {
        return Err(CertificateError::PieceCount(i, n));
    }
    if let Some((i, &n)) = wall_seen.iter().enumerate().find(|(_, &n)| n != 1) {
        return Err(CertificateError::WallCount(i, n));
    }
    Ok(())
}
