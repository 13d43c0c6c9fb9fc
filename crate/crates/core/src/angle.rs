//! Exact comparisons of angle sums `Σ π/m_i` against integer multiples of `π`.

use std::cmp::Ordering;

/// Compares `Σ 1/m_i` with `k` using integer arithmetic only.
pub fn cmp_reciprocal_sum(labels: &[u32], k: u32) -> Ordering {
    let denom: u128 = labels.iter().map(|&m| m as u128).product();
    let numer: u128 = labels
        .iter()
        .enumerate()
        .map(|(i, _)| {
            labels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &m)| m as u128)
                .product::<u128>()
        })
        .sum();
    numer.cmp(&(denom * k as u128))
}

/// A triple of finite labels spans a spherical triangle iff `1/p + 1/q + 1/r > 1`.
pub fn is_spherical_triple(p: u32, q: u32, r: u32) -> bool {
    cmp_reciprocal_sum(&[p, q, r], 1) == Ordering::Greater
}

/// `1/p + 1/q + 1/r = 1`: the three Euclidean triangle groups (3,3,3), (2,4,4), (2,3,6).
pub fn is_euclidean_triple(p: u32, q: u32, r: u32) -> bool {
    cmp_reciprocal_sum(&[p, q, r], 1) == Ordering::Equal
}
