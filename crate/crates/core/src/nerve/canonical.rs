//! Canonical forms of labeled complexes, used for isomorphism tests and
//! report digests.
//!
//! Search is individualization-refinement: colors are refined by the
//! multiset of `(label, neighbor color)` pairs until stable, then each vertex
//! of the first non-trivial cell is individualized in turn. Every discrete
//! leaf yields an adjacency encoding; the lexicographically least one wins.
//! Two complexes are label-isomorphic iff their forms are equal.

use std::collections::BTreeMap;

use super::LabeledComplex;

/// Vertex count plus the upper-triangular label matrix in canonical order
/// (`0` for a missing edge).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub code: Vec<u32>,
}

impl CanonicalForm {
    /// Stable byte encoding, suitable for hashing.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = (self.vertex_count as u64).to_le_bytes().to_vec();
        for c in &self.code {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }
}

pub fn canonical_form(c: &LabeledComplex) -> CanonicalForm {
    canonical_labeling(c).0
}

/// Returns the canonical form and an ordering of `c`'s vertex indices that
/// realizes it (position `k` holds the vertex placed `k`-th).
pub fn canonical_labeling(c: &LabeledComplex) -> (CanonicalForm, Vec<usize>) {
    let n = c.vertex_count();
    let adj: Vec<Vec<(usize, u32)>> = (0..n)
        .map(|v| {
            c.neighbors(v)
                .iter()
                .map(|&w| (w, c.label(v, w).unwrap()))
                .collect()
        })
        .collect();
    let colors = refine(&adj, vec![0; n]);
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    search(c, &adj, colors, &mut best);
    let (code, order) = best.unwrap_or_default();
    (
        CanonicalForm {
            vertex_count: n,
            code,
        },
        order,
    )
}

/// A vertex's color and the sorted `(label, neighbor color)` pairs.
type Signature = (usize, Vec<(u32, usize)>);

fn refine(adj: &[Vec<(usize, u32)>], mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let count = distinct(&colors);
        let sigs: Vec<Signature> = adj
            .iter()
            .enumerate()
            .map(|(v, ns)| {
                let mut s: Vec<(u32, usize)> = ns.iter().map(|&(w, m)| (m, colors[w])).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut ranked: Vec<&Signature> = sigs.iter().collect();
        ranked.sort();
        ranked.dedup();
        let rank: BTreeMap<&Signature, usize> = ranked
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        if distinct(&next) == count {
            // colors are already normalized to 0..count by rank order
            return next;
        }
        colors = next;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(
    c: &LabeledComplex,
    adj: &[Vec<(usize, u32)>],
    colors: Vec<usize>,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    let n = colors.len();
    let mut sizes = vec![0usize; n.max(1)];
    for &k in &colors {
        sizes[k] += 1;
    }
    let target = (0..n).find(|&k| sizes[k] > 1);
    let Some(target) = target else {
        let mut order = vec![0; n];
        for (v, &k) in colors.iter().enumerate() {
            order[k] = v;
        }
        let code = encode(c, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == target) {
        // v keeps `target`, its cell-mates move one slot later; colors after
        // the cell shift to make room.
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(w, &k)| {
                if k > target || (k == target && w != v) {
                    k + 1
                } else {
                    k
                }
            })
            .collect();
        search(c, adj, refine(adj, split), best);
    }
}

fn encode(c: &LabeledComplex, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in 0..i {
            code.push(c.label(order[i], order[j]).unwrap_or(0));
        }
    }
    code
}
