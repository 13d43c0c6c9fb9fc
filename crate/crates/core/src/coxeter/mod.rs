//! Coxeter matrices, spherical subsets and finite group orders.

mod gram;

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::angle::cmp_reciprocal_sum;
use crate::nerve::LabeledComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("subsets of rank {0} are not supported (maximum 4)")]
    UnsupportedRank(usize),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subset {0:?} is not spherical")]
    NotSpherical(Vec<usize>),
    #[error("subset {0:?} contains an infinite label")]
    InfiniteLabel(Vec<usize>),
    #[error("invalid Coxeter matrix: {0}")]
    Invalid(String),
}

/// Symmetric matrix `(m_st)`: `Some(1)` on the diagonal, `Some(m ≥ 2)` or
/// `None` (∞) off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// All off-diagonal entries ∞.
    pub fn free(rank: usize) -> Self {
        let mut entries = vec![None; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Some(1);
        }
        Self { rank, entries }
    }

    /// Builds from explicit rows, checking the Coxeter matrix axioms.
    pub fn from_rows(rows: &[Vec<Option<u32>>]) -> Result<Self, CoxeterError> {
        let rank = rows.len();
        let mut m = Self::free(rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::Invalid("matrix is not square".into()));
            }
            for (j, &e) in row.iter().enumerate() {
                if i == j {
                    if e != Some(1) {
                        return Err(CoxeterError::Invalid(format!(
                            "diagonal entry {i} is not 1"
                        )));
                    }
                } else {
                    if rows[j][i] != e {
                        return Err(CoxeterError::Invalid(format!(
                            "entry ({i},{j}) not symmetric"
                        )));
                    }
                    if matches!(e, Some(x) if x < 2) {
                        return Err(CoxeterError::Invalid(format!("entry ({i},{j}) below 2")));
                    }
                    m.entries[i * rank + j] = e;
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.rank + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, m: Option<u32>) {
        self.entries[i * self.rank + j] = m;
        self.entries[j * self.rank + i] = m;
    }

    /// Builder-style setter for off-diagonal labels.
    pub fn with(mut self, i: usize, j: usize, m: Option<u32>) -> Self {
        assert!(i != j && m.is_none_or(|x| x >= 2));
        self.set(i, j, m);
        self
    }

    fn check(&self, t: &[usize]) -> Result<(), CoxeterError> {
        match t.iter().find(|&&i| i >= self.rank) {
            Some(&i) => Err(CoxeterError::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    fn finite_labels(&self, t: &[usize]) -> Option<Vec<Vec<u32>>> {
        t.iter()
            .map(|&i| {
                t.iter()
                    .map(|&j| self.get(i, j))
                    .collect::<Option<Vec<u32>>>()
            })
            .collect()
    }
}

/// Inertia of the Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramSignature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl GramSignature {
    pub fn new(positives: usize, negatives: usize, zeros: usize) -> Self {
        Self {
            positives,
            negatives,
            zeros,
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negatives == 0 && self.zeros == 0
    }
}

/// `W_t` is finite. Supported for `|t| ≤ 4`.
pub fn is_spherical(m: &CoxeterMatrix, t: &[usize]) -> Result<bool, CoxeterError> {
    m.check(t)?;
    let t = dedup(t);
    let Some(labels) = m.finite_labels(&t) else {
        return match t.len() {
            0..=4 => Ok(false),
            r => Err(CoxeterError::UnsupportedRank(r)),
        };
    };
    match t.len() {
        0..=2 => Ok(true),
        3 => Ok(
            cmp_reciprocal_sum(&[labels[0][1], labels[1][2], labels[0][2]], 1) == Ordering::Greater,
        ),
        4 => Ok(gram_signature(m, &t)?.is_positive_definite()),
        r => Err(CoxeterError::UnsupportedRank(r)),
    }
}

/// Signature of `(-cos(π/m_ij))_{i,j ∈ t}`, certified exactly.
pub fn gram_signature(m: &CoxeterMatrix, t: &[usize]) -> Result<GramSignature, CoxeterError> {
    m.check(t)?;
    let t = dedup(t);
    if t.len() > 4 {
        return Err(CoxeterError::UnsupportedRank(t.len()));
    }
    let labels = m
        .finite_labels(&t)
        .ok_or_else(|| CoxeterError::InfiniteLabel(t.clone()))?;
    let (p, n, z) = gram::inertia(&labels);
    Ok(GramSignature::new(p, n, z))
}

/// `|W_t|` for a spherical subset.
pub fn group_order(m: &CoxeterMatrix, t: &[usize]) -> Result<BigUint, CoxeterError> {
    if !is_spherical(m, t)? {
        return Err(CoxeterError::NotSpherical(t.to_vec()));
    }
    let t = dedup(t);
    let mut order = BigUint::from(1u32);
    for comp in components(m, &t) {
        order *= irreducible_order(m, &comp);
    }
    Ok(order)
}

/// Components of the Coxeter diagram: generators joined when `m_st ≥ 3`.
fn components(m: &CoxeterMatrix, t: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; t.len()];
    let mut out = Vec::new();
    for start in 0..t.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![t[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..t.len() {
                if !seen[j] && m.get(t[i], t[j]) != Some(2) {
                    seen[j] = true;
                    comp.push(t[j]);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn irreducible_order(m: &CoxeterMatrix, t: &[usize]) -> BigUint {
    let lab = |i: usize, j: usize| {
        m.get(t[i], t[j])
            .expect("spherical subsets have finite labels") as u64
    };
    match t.len() {
        1 => BigUint::from(2u32),
        2 => BigUint::from(2 * lab(0, 1)),
        3 => {
            // |W| = 4 / (1/p + 1/q + 1/r - 1)
            let (p, q, r) = (lab(0, 1), lab(1, 2), lab(0, 2));
            let excess = q * r + p * r + p * q - p * q * r;
            BigUint::from(4 * p * q * r / excess)
        }
        4 => {
            let mut degree = [0usize; 4];
            let mut path_labels = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    if lab(i, j) > 2 {
                        degree[i] += 1;
                        degree[j] += 1;
                        path_labels.push(lab(i, j));
                    }
                }
            }
            if degree.contains(&3) {
                return BigUint::from(192u32); // D4
            }
            // A path: read labels from one end.
            let end = (0..4).find(|&i| degree[i] == 1).expect("irreducible tree");
            let mut seq = Vec::new();
            let (mut prev, mut cur) = (usize::MAX, end);
            loop {
                let next = (0..4).find(|&j| j != cur && j != prev && lab(cur, j) > 2);
                match next {
                    Some(j) => {
                        seq.push(lab(cur, j));
                        prev = cur;
                        cur = j;
                    }
                    None => break,
                }
            }
            let mut rev = seq.clone();
            rev.reverse();
            let key = std::cmp::max(seq, rev);
            let order: u32 = match key.as_slice() {
                [3, 3, 3] => 120,
                [4, 3, 3] => 384,
                [3, 4, 3] => 1152,
                [5, 3, 3] => 14400,
                other => unreachable!("positive definite rank-4 diagram {other:?}"),
            };
            BigUint::from(order)
        }
        _ => unreachable!("rank capped at 4"),
    }
}

fn dedup(t: &[usize]) -> Vec<usize> {
    let mut t = t.to_vec();
    t.sort_unstable();
    t.dedup();
    t
}

/// A spherical subset with its group order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalSubset {
    pub members: Vec<usize>,
    #[serde(serialize_with = "crate::ser_display")]
    pub order: BigUint,
}

/// The poset `𝒮` of spherical subsets of a nerve, ordered by inclusion.
#[derive(Debug, Clone, Serialize)]
pub struct SphericalPoset {
    pub elements: Vec<SphericalSubset>,
}

impl SphericalPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        let t = dedup(t);
        self.elements.iter().any(|e| e.members == t)
    }

    /// `T ≤ T'` in the poset.
    pub fn le(a: &SphericalSubset, b: &SphericalSubset) -> bool {
        a.members.iter().all(|x| b.members.contains(x))
    }
}

/// `𝒮 = {∅} ∪ vertices ∪ edges ∪ triangles`, each with `|W_T|`.
pub fn spherical_poset(c: &LabeledComplex) -> SphericalPoset {
    let m = c.coxeter_matrix();
    let mut sets: Vec<Vec<usize>> = vec![vec![]];
    sets.extend((0..c.vertex_count()).map(|v| vec![v]));
    sets.extend(c.edges().keys().map(|&(a, b)| vec![a, b]));
    sets.extend(c.triangles().iter().map(|t| t.to_vec()));
    let elements = sets
        .into_iter()
        .map(|members| {
            let order =
                group_order(&m, &members).expect("cells of a metric-flag nerve are spherical");
            SphericalSubset { members, order }
        })
        .collect();
    SphericalPoset { elements }
}
