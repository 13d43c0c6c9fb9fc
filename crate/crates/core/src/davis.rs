//! Word-metric balls in the Davis complex of a Coxeter system.
//!
//! The word problem is solved with Tits' elementary operations: a word is
//! reduced iff no word reachable from it by braid moves contains a repeated
//! letter, and two reduced words represent the same element iff they are
//! braid-equivalent. Elements are stored by their ShortLex-least reduced word.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{spherical_poset, CoxeterMatrix};
use crate::nerve::{LabeledComplex, NerveError};

/// Environment variable overriding [`BallConfig::radius_cap`].
pub const RADIUS_CAP_VAR: &str = "COXORB_MAX_RADIUS";

pub type Word = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DavisError {
    #[error("letter {0} is not a generator")]
    LetterOutOfRange(usize),
    #[error("radius {radius} exceeds the cap {cap} (set {RADIUS_CAP_VAR} to raise it)")]
    RadiusOverCap { radius: usize, cap: usize },
    #[error("ball would exceed {0} elements")]
    TooManyElements(usize),
    #[error("element of length {length} is within 2 of the ball boundary (radius {radius})")]
    TooClose { length: usize, radius: usize },
    #[error("element is not in the ball")]
    NotInBall,
    #[error("subgroup on {0:?} is finite by search but not spherical by label, or vice versa")]
    Inconsistent(Vec<String>),
    #[error(transparent)]
    Nerve(#[from] NerveError),
}

/// Normal forms for one Coxeter matrix, with a shared cache of braid classes.
#[derive(Debug)]
pub struct WordProblem {
    matrix: CoxeterMatrix,
    classes: RwLock<HashMap<Word, Arc<BTreeSet<Word>>>>,
}

impl WordProblem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let mut classes = HashMap::new();
        classes.insert(Vec::new(), Arc::new(BTreeSet::from([Vec::new()])));
        Self {
            matrix,
            classes: RwLock::new(classes),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    /// All words reachable from `w` by braid moves.
    fn braid_closure(&self, w: Word) -> BTreeSet<Word> {
        let mut seen = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            for i in 0..u.len().saturating_sub(1) {
                let (s, t) = (u[i], u[i + 1]);
                if s == t {
                    continue;
                }
                let Some(m) = self.matrix.get(s, t) else {
                    continue;
                };
                let m = m as usize;
                if i + m > u.len() || !(0..m).all(|k| u[i + k] == if k % 2 == 0 { s } else { t }) {
                    continue;
                }
                let mut v = u.clone();
                for k in 0..m {
                    v[i + k] = if k % 2 == 0 { t } else { s };
                }
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn class_of(&self, normal_form: &Word) -> Arc<BTreeSet<Word>> {
        if let Some(c) = self.classes.read().unwrap().get(normal_form) {
            return c.clone();
        }
        let class = Arc::new(self.braid_closure(normal_form.clone()));
        self.classes
            .write()
            .unwrap()
            .entry(normal_form.clone())
            .or_insert(class)
            .clone()
    }

    fn store(&self, class: BTreeSet<Word>) -> Word {
        let nf = class.iter().next().expect("classes are nonempty").clone();
        self.classes
            .write()
            .unwrap()
            .entry(nf.clone())
            .or_insert_with(|| Arc::new(class));
        nf
    }

    /// Normal form of `w·s`.
    pub fn multiply(&self, normal_form: &Word, s: usize) -> Word {
        let class = self.class_of(normal_form);
        let shorter: BTreeSet<Word> = class
            .iter()
            .filter(|u| u.last() == Some(&s))
            .map(|u| u[..u.len() - 1].to_vec())
            .collect();
        if !shorter.is_empty() {
            return self.store(shorter);
        }
        let mut longer = normal_form.clone();
        longer.push(s);
        let class = self.braid_closure(longer);
        self.store(class)
    }

    pub fn normal_form(&self, w: &[usize]) -> Result<Word, DavisError> {
        let mut nf = Vec::new();
        for &s in w {
            if s >= self.matrix.rank() {
                return Err(DavisError::LetterOutOfRange(s));
            }
            nf = self.multiply(&nf, s);
        }
        Ok(nf)
    }

    /// Generators `s` with `ℓ(ws) < ℓ(w)`.
    pub fn right_descents(&self, normal_form: &Word) -> BTreeSet<usize> {
        self.class_of(normal_form)
            .iter()
            .filter_map(|u| u.last().copied())
            .collect()
    }

    pub fn word_equal(&self, u: &[usize], v: &[usize]) -> Result<bool, DavisError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Size of the subgroup generated by `gens`, or `None` once it passes
    /// `bound` elements.
    pub fn subgroup_order(&self, gens: &[usize], bound: usize) -> Option<usize> {
        let mut seen: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
        let mut queue = VecDeque::from([Vec::new()]);
        while let Some(w) = queue.pop_front() {
            for &s in gens {
                let ws = self.multiply(&w, s);
                if seen.insert(ws.clone()) {
                    if seen.len() > bound {
                        return None;
                    }
                    queue.push_back(ws);
                }
            }
        }
        Some(seen.len())
    }
}

/// `u` and `v` represent the same element of `W`.
pub fn word_equal(m: &CoxeterMatrix, u: &[usize], v: &[usize]) -> Result<bool, DavisError> {
    WordProblem::new(m.clone()).word_equal(u, v)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub normal_form: Word,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            normal_form: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.normal_form.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallConfig {
    pub radius_cap: usize,
    pub max_elements: usize,
}

impl Default for BallConfig {
    fn default() -> Self {
        Self {
            radius_cap: 4,
            max_elements: 1_000_000,
        }
    }
}

impl BallConfig {
    /// Defaults, with the radius cap taken from the environment if set.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(cap) = std::env::var(RADIUS_CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            config.radius_cap = cap;
        }
        config
    }
}

/// A spherical coset `uW_T`, with `u` its minimal representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub subset: Vec<usize>,
    pub representative: usize,
}

#[derive(Debug)]
pub struct CoxeterBall {
    radius: usize,
    generators: Vec<String>,
    words: WordProblem,
    elements: Vec<GroupElement>,
    index: HashMap<Word, usize>,
    edges: Vec<(usize, usize, usize)>,
    cells: Vec<Cell>,
}

pub fn build_ball(c: &LabeledComplex, radius: usize) -> Result<CoxeterBall, DavisError> {
    build_ball_with(c, radius, &BallConfig::from_env())
}

pub fn build_ball_with(
    c: &LabeledComplex,
    radius: usize,
    config: &BallConfig,
) -> Result<CoxeterBall, DavisError> {
    if radius > config.radius_cap {
        return Err(DavisError::RadiusOverCap {
            radius,
            cap: config.radius_cap,
        });
    }
    let words = WordProblem::new(c.coxeter_matrix());
    let rank = c.vertex_count();
    let mut elements = vec![GroupElement::identity()];
    let mut index = HashMap::from([(Vec::new(), 0)]);
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &layer {
            let w = elements[i].normal_form.clone();
            for s in 0..rank {
                let ws = words.multiply(&w, s);
                if ws.len() < w.len() {
                    continue;
                }
                let j = match index.get(&ws) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= config.max_elements {
                            return Err(DavisError::TooManyElements(config.max_elements));
                        }
                        let j = elements.len();
                        index.insert(ws.clone(), j);
                        elements.push(GroupElement { normal_form: ws });
                        next.push(j);
                        j
                    }
                };
                edges.push((i, j, s));
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let spherical: Vec<Vec<usize>> = spherical_poset(c)
        .elements
        .into_iter()
        .map(|t| t.members)
        .collect();
    let mut cells = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        let descents = words.right_descents(&e.normal_form);
        for t in &spherical {
            if t.iter().all(|s| !descents.contains(s)) {
                cells.push(Cell {
                    subset: t.clone(),
                    representative: i,
                });
            }
        }
    }
    Ok(CoxeterBall {
        radius,
        generators: c.vertices().to_vec(),
        words,
        elements,
        index,
        edges,
        cells,
    })
}

impl CoxeterBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn words(&self) -> &WordProblem {
        &self.words
    }

    /// Cayley graph edges `(w, ws, s)` with `ℓ(ws) = ℓ(w) + 1`.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn element(&self, w: &[usize]) -> Result<GroupElement, DavisError> {
        let nf = self.words.normal_form(w)?;
        if self.index.contains_key(&nf) {
            Ok(GroupElement { normal_form: nf })
        } else {
            Err(DavisError::NotInBall)
        }
    }

    pub fn contains(&self, w: &GroupElement) -> bool {
        self.index.contains_key(&w.normal_form)
    }

    /// The complex of Coxeter cells `wW_T` (`T ≠ ∅`) around the vertex `w`:
    /// one vertex per edge `{w, ws}`, labeled edges from the 2-cells, and
    /// triangles from finite rank-3 cosets found by bounded enumeration.
    pub fn vertex_link(&self, w: &GroupElement) -> Result<LabeledComplex, DavisError> {
        if w.length() + 2 > self.radius {
            return Err(DavisError::TooClose {
                length: w.length(),
                radius: self.radius,
            });
        }
        if !self.contains(w) {
            return Err(DavisError::NotInBall);
        }
        const PAIR_BOUND: u32 = 64;
        const TRIPLE_BOUND: usize = 2000;
        let rank = self.generators.len();
        for s in 0..rank {
            let ws = self.words.multiply(&w.normal_form, s);
            if !self.index.contains_key(&ws) {
                return Err(DavisError::NotInBall);
            }
        }
        let mut edges = Vec::new();
        for s in 0..rank {
            for t in s + 1..rank {
                let alt = |a: usize, b: usize, k: u32| -> Word {
                    let mut u = w.normal_form.clone();
                    u.extend((0..k).map(|i| if i % 2 == 0 { a } else { b }));
                    u
                };
                let order = (2..=PAIR_BOUND).find(|&k| {
                    self.words.normal_form(&alt(s, t, k)).ok()
                        == self.words.normal_form(&alt(t, s, k)).ok()
                });
                if let Some(m) = order {
                    edges.push((self.generators[s].clone(), self.generators[t].clone(), m));
                }
            }
        }
        let link = LabeledComplex::new(
            format!("link({})", self.name_word(&w.normal_form)),
            &self.generators,
            &edges,
        )?;
        for a in 0..rank {
            for b in link.neighbors(a).iter().copied().filter(|&b| b > a) {
                for &d in link.neighbors(a).intersection(link.neighbors(b)) {
                    if d <= b {
                        continue;
                    }
                    let finite = self
                        .words
                        .subgroup_order(&[a, b, d], TRIPLE_BOUND)
                        .is_some();
                    if finite != link.has_triangle(a, b, d) {
                        return Err(DavisError::Inconsistent(link.names_of(&[a, b, d])));
                    }
                }
            }
        }
        Ok(link)
    }

    fn name_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&s| self.generators[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn export(&self) -> BallExport {
        let names = |w: &[usize]| {
            w.iter()
                .map(|&s| self.generators[s].clone())
                .collect::<Vec<_>>()
        };
        BallExport {
            radius: self.radius,
            generators: self.generators.clone(),
            elements: self
                .elements
                .iter()
                .map(|e| names(&e.normal_form))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b, s)| (a, b, self.generators[s].clone()))
                .collect(),
            cells: self
                .cells
                .iter()
                .map(|c| CellExport {
                    subset: names(&c.subset),
                    representative: c.representative,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellExport {
    pub subset: Vec<String>,
    pub representative: usize,
}

/// Cayley graph and cell poset of a ball, for external viewers.
#[derive(Debug, Clone, Serialize)]
pub struct BallExport {
    pub radius: usize,
    pub generators: Vec<String>,
    /// Normal forms as generator names.
    pub elements: Vec<Vec<String>>,
    pub edges: Vec<(usize, usize, String)>,
    pub cells: Vec<CellExport>,
}
