//! Detection of the Euclidean features that bound the characteristic
//! suborbifold: Euclidean vertices, Euclidean 3- and 4-circuits, RA-cones,
//! infinite maximal RA-suspensions and Seifert subcomplexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::angle::is_euclidean_triple;
use crate::nerve::{LabeledComplex, SphereNerve};

/// How a Euclidean 3-circuit relates to the stars it bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircuitFlag {
    /// Not the link of any vertex.
    Empty,
    /// Link of a 3-Euclidean vertex whose cone edges are all labeled 2.
    RaConeBoundary,
    /// Link of a 3-Euclidean vertex with some cone label above 2. Still empty
    /// in the sense that it bounds no RA-cone.
    NonRaConeBoundary,
}

impl CircuitFlag {
    /// Cut as an empty Euclidean 3-circuit.
    pub fn is_empty(self) -> bool {
        !matches!(self, CircuitFlag::RaConeBoundary)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit3 {
    pub vertices: [usize; 3],
    pub flag: CircuitFlag,
    /// Vertices whose link is this circuit.
    pub apexes: Vec<usize>,
}

/// A chordless 4-cycle, stored by its two diagonals (each sorted, the pair
/// sorted), so that equal circuits compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit4 {
    pub diagonals: [[usize; 2]; 2],
}

impl Circuit4 {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        // cycle a-b-c-d: diagonals {a,c}, {b,d}
        let mut d1 = [a, c];
        let mut d2 = [b, d];
        d1.sort_unstable();
        d2.sort_unstable();
        let mut diagonals = [d1, d2];
        diagonals.sort_unstable();
        Self { diagonals }
    }

    /// The cycle in traversal order.
    pub fn cycle(&self) -> [usize; 4] {
        let [[a, c], [b, d]] = self.diagonals;
        [a, b, c, d]
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.cycle().into_iter().collect()
    }

    pub fn edges(&self) -> [(usize, usize); 4] {
        let [a, b, c, d] = self.cycle();
        [(a, b), (b, c), (c, d), (d, a)]
    }
}

/// A cut circuit of either length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Wall {
    Three([usize; 3]),
    Four(Circuit4),
}

impl Wall {
    /// Vertices in cyclic order.
    pub fn cycle(&self) -> Vec<usize> {
        match self {
            Wall::Three(t) => t.to_vec(),
            Wall::Four(c) => c.cycle().to_vec(),
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.cycle().into_iter().collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let cyc = self.cycle();
        (0..cyc.len())
            .map(|i| {
                let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Wall::Three(_) => 3,
            Wall::Four(_) => 4,
        }
    }

    /// Angle sum `π/m` over the circuit's edges equals π (3-circuit) or 2π
    /// (4-circuit with right angles), and the circuit spans no cell.
    pub fn is_euclidean_in(&self, c: &LabeledComplex) -> bool {
        match self {
            Wall::Three([a, b, d]) => match (c.label(*a, *b), c.label(*b, *d), c.label(*a, *d)) {
                (Some(p), Some(q), Some(r)) => is_euclidean_triple(p, q, r),
                _ => false,
            },
            Wall::Four(q) => is_euclidean_4circuit(c, q.cycle()),
        }
    }
}

pub(crate) fn is_euclidean_4circuit(c: &LabeledComplex, [a, b, d, e]: [usize; 4]) -> bool {
    let distinct: BTreeSet<usize> = [a, b, d, e].into_iter().collect();
    distinct.len() == 4
        && [(a, b), (b, d), (d, e), (e, a)]
            .iter()
            .all(|&(x, y)| c.label(x, y) == Some(2))
        && !c.is_edge(a, d)
        && !c.is_edge(b, e)
}

/// A right-angled cone: the star of a Euclidean vertex whose cone edges are
/// all labeled 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RaCone {
    pub apex: usize,
    /// The link, in cyclic order.
    pub circuit: Vec<usize>,
}

/// An RA-suspension `Z ∗ {t, t'}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Suspension {
    /// Canonical pole pair (lexicographically least by vertex name among the
    /// valid pairs spanning the same vertex set).
    pub poles: [usize; 2],
    pub base: BTreeSet<usize>,
}

impl Suspension {
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        let mut v = self.base.clone();
        v.extend(self.poles);
        v
    }

    pub fn is_whole(&self, c: &LabeledComplex) -> bool {
        self.vertex_set().len() == c.vertex_count()
    }

    /// Components of the base as arcs, in cyclic order around the first pole.
    pub fn arcs(&self, nerve: &SphereNerve) -> Vec<Vec<usize>> {
        let link = nerve.link(self.poles[0]);
        let k = link.len();
        if link.iter().all(|v| self.base.contains(v)) {
            return vec![link.to_vec()];
        }
        // start right after a vertex outside the base
        let start = (0..k).find(|&i| !self.base.contains(&link[i])).unwrap();
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for step in 1..=k {
            let v = link[(start + step) % k];
            if self.base.contains(&v) {
                current.push(v);
            } else if !current.is_empty() {
                arcs.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            arcs.push(current);
        }
        arcs
    }

    /// The Euclidean 4-circuits separating this suspension from the rest of
    /// `L`; empty when the suspension is all of `L`.
    pub fn frontier(&self, nerve: &SphereNerve) -> Vec<Circuit4> {
        if self.is_whole(nerve) {
            return Vec::new();
        }
        let arcs = self.arcs(nerve);
        let [t, u] = self.poles;
        let mut out: Vec<Circuit4> = (0..arcs.len())
            .map(|i| {
                let last = *arcs[i].last().unwrap();
                let first = arcs[(i + 1) % arcs.len()][0];
                Circuit4::new(t, last, u, first)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// One Seifert subcomplex: a class of maximal RA-suspensions under the
/// relation "intersect in a Euclidean 4-circuit".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertClass {
    /// Indices into [`FeatureSet::ra_suspensions`].
    pub members: Vec<usize>,
    pub gluing_circuits: BTreeSet<Circuit4>,
    pub boundary_circuits: BTreeSet<Circuit4>,
}

impl SeifertClass {
    pub fn vertex_set(&self, suspensions: &[Suspension]) -> BTreeSet<usize> {
        self.members
            .iter()
            .flat_map(|&i| suspensions[i].vertex_set())
            .collect()
    }
}

/// Every feature the decomposition consumes.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    pub euclidean3_vertices: BTreeSet<usize>,
    pub euclidean4_vertices: BTreeSet<usize>,
    pub euclidean_3circuits: Vec<Circuit3>,
    pub euclidean_4circuits: Vec<Circuit4>,
    pub ra_cones: Vec<RaCone>,
    pub ra_suspensions: Vec<Suspension>,
    pub seifert_subcomplexes: Vec<SeifertClass>,
}

impl FeatureSet {
    pub fn detect(nerve: &SphereNerve) -> Self {
        let (euclidean3_vertices, euclidean4_vertices) = euclidean_vertices(nerve);
        let (euclidean_3circuits, euclidean_4circuits) = euclidean_circuits(nerve);
        let ra_cones = euclidean3_vertices
            .iter()
            .chain(&euclidean4_vertices)
            .filter(|&&s| is_right_angled_star(nerve, s))
            .map(|&apex| RaCone {
                apex,
                circuit: nerve.link(apex).to_vec(),
            })
            .collect();
        let ra_suspensions = ra_suspensions(nerve);
        let seifert_subcomplexes = seifert_subcomplexes(nerve, &ra_suspensions);
        Self {
            euclidean3_vertices,
            euclidean4_vertices,
            euclidean_3circuits,
            euclidean_4circuits,
            ra_cones,
            ra_suspensions,
            seifert_subcomplexes,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.euclidean3_vertices.is_empty()
            && self.euclidean4_vertices.is_empty()
            && self.euclidean_3circuits.is_empty()
            && self.euclidean_4circuits.is_empty()
            && self.ra_suspensions.is_empty()
    }
}

fn is_right_angled_star(c: &LabeledComplex, s: usize) -> bool {
    c.neighbors(s).iter().all(|&x| c.label(s, x) == Some(2))
}

/// `(3-Euclidean, 4-Euclidean)` vertices.
pub fn euclidean_vertices(nerve: &SphereNerve) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut three = BTreeSet::new();
    let mut four = BTreeSet::new();
    for s in 0..nerve.vertex_count() {
        let link = nerve.link(s);
        let labels: Vec<u32> = (0..link.len())
            .map(|i| nerve.label(link[i], link[(i + 1) % link.len()]).unwrap())
            .collect();
        match labels.as_slice() {
            &[p, q, r] if is_euclidean_triple(p, q, r) => {
                three.insert(s);
            }
            [2, 2, 2, 2] => {
                four.insert(s);
            }
            _ => {}
        }
    }
    (three, four)
}

/// All Euclidean 3-circuits (flagged) and Euclidean 4-circuits.
pub fn euclidean_circuits(nerve: &SphereNerve) -> (Vec<Circuit3>, Vec<Circuit4>) {
    let c: &LabeledComplex = nerve;
    let mut threes = Vec::new();
    for (&(a, b), &mab) in c.edges() {
        for &d in c.neighbors(a).intersection(c.neighbors(b)) {
            if d <= b {
                continue;
            }
            let (mad, mbd) = (c.label(a, d).unwrap(), c.label(b, d).unwrap());
            if !is_euclidean_triple(mab, mad, mbd) {
                continue;
            }
            let vertices = [a, b, d];
            let apexes: Vec<usize> = (0..c.vertex_count())
                .filter(|&s| {
                    let mut link = nerve.link(s).to_vec();
                    link.sort_unstable();
                    link == vertices
                })
                .collect();
            let flag = if apexes.iter().any(|&s| is_right_angled_star(c, s)) {
                CircuitFlag::RaConeBoundary
            } else if !apexes.is_empty() {
                CircuitFlag::NonRaConeBoundary
            } else {
                CircuitFlag::Empty
            };
            threes.push(Circuit3 {
                vertices,
                flag,
                apexes,
            });
        }
    }
    let mut fours = BTreeSet::new();
    for u in 0..c.vertex_count() {
        for w in u + 1..c.vertex_count() {
            if c.is_edge(u, w) {
                continue;
            }
            let common = right_angled_common_neighbors(c, u, w);
            let common: Vec<usize> = common.into_iter().collect();
            for (i, &x) in common.iter().enumerate() {
                for &y in &common[i + 1..] {
                    if !c.is_edge(x, y) {
                        fours.insert(Circuit4::new(u, x, w, y));
                    }
                }
            }
        }
    }
    (threes, fours.into_iter().collect())
}

fn right_angled_common_neighbors(c: &LabeledComplex, t: usize, u: usize) -> BTreeSet<usize> {
    c.neighbors(t)
        .intersection(c.neighbors(u))
        .copied()
        .filter(|&x| c.label(t, x) == Some(2) && c.label(u, x) == Some(2))
        .collect()
}

/// All infinite, maximal RA-suspensions.
pub fn ra_suspensions(nerve: &SphereNerve) -> Vec<Suspension> {
    let c: &LabeledComplex = nerve;
    let name = |v: usize| c.vertex_name(v);
    // vertex set -> best pole pair and base
    let mut candidates: BTreeMap<BTreeSet<usize>, Suspension> = BTreeMap::new();
    for t in 0..c.vertex_count() {
        for u in t + 1..c.vertex_count() {
            if c.is_edge(t, u) {
                continue;
            }
            let base = right_angled_common_neighbors(c, t, u);
            let finite = match base.len() {
                0 | 1 => true,
                2 => {
                    let v: Vec<usize> = base.iter().copied().collect();
                    c.is_edge(v[0], v[1])
                }
                _ => false,
            };
            if finite {
                continue;
            }
            let mut poles = [t, u];
            poles.sort_by(|&a, &b| name(a).cmp(name(b)));
            let cand = Suspension { poles, base };
            let key = cand.vertex_set();
            match candidates.get(&key) {
                Some(old)
                    if (name(old.poles[0]), name(old.poles[1]))
                        <= (name(poles[0]), name(poles[1])) => {}
                _ => {
                    candidates.insert(key, cand);
                }
            }
        }
    }
    let sets: Vec<BTreeSet<usize>> = candidates.keys().cloned().collect();
    let mut out: Vec<Suspension> = candidates
        .into_iter()
        .filter(|(k, _)| !sets.iter().any(|s| s != k && k.is_subset(s)))
        .map(|(_, s)| s)
        .collect();
    out.sort_by(|a, b| {
        let key = |s: &Suspension| c.names_of(&s.vertex_set());
        key(a).cmp(&key(b))
    });
    out
}

/// Classes of RA-suspensions glued along Euclidean 4-circuits.
pub fn seifert_subcomplexes(nerve: &SphereNerve, suspensions: &[Suspension]) -> Vec<SeifertClass> {
    let c: &LabeledComplex = nerve;
    let n = suspensions.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let sets: Vec<BTreeSet<usize>> = suspensions.iter().map(Suspension::vertex_set).collect();
    let mut glue: Vec<(usize, usize, Circuit4)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let inter: Vec<usize> = sets[i].intersection(&sets[j]).copied().collect();
            if inter.len() != 4 {
                continue;
            }
            if let Some(circ) = as_euclidean_4circuit(c, &inter) {
                glue.push((i, j, circ));
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut out: Vec<SeifertClass> = classes
        .into_values()
        .map(|members| {
            let gluing_circuits: BTreeSet<Circuit4> = glue
                .iter()
                .filter(|(i, _, _)| members.contains(i))
                .map(|(_, _, circ)| *circ)
                .collect();
            let mut count: BTreeMap<Circuit4, usize> = BTreeMap::new();
            for &m in &members {
                for circ in suspensions[m].frontier(nerve) {
                    *count.entry(circ).or_default() += 1;
                }
            }
            let boundary_circuits = count
                .into_iter()
                .filter(|(circ, k)| *k == 1 && !gluing_circuits.contains(circ))
                .map(|(circ, _)| circ)
                .collect();
            SeifertClass {
                members,
                gluing_circuits,
                boundary_circuits,
            }
        })
        .collect();
    out.sort_by_key(|cls| cls.members.clone());
    out
}

/// Orders four vertices as a Euclidean 4-circuit if they form one.
pub(crate) fn as_euclidean_4circuit(c: &LabeledComplex, vs: &[usize]) -> Option<Circuit4> {
    let [a, b, d, e] = [vs[0], vs[1], vs[2], vs[3]];
    [[a, b, d, e], [a, b, e, d], [a, d, b, e]]
        .into_iter()
        .find(|&cyc| is_euclidean_4circuit(c, cyc))
        .map(|[p, q, r, s]| Circuit4::new(p, q, r, s))
}
