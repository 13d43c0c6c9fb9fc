//! Exact ℓ²-bookkeeping: orbifold Euler characteristics, Künneth
//! convolution for joins, and per-piece Betti vectors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coxeter::{group_order, SphericalPoset};
use crate::decompose::{Geometry, Kind, Piece};
use crate::nerve::LabeledComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Ell2Error {
    #[error("Betti numbers must be nonnegative, got {0}")]
    Negative(BigRational),
    #[error("{kind:?} piece tagged {geometry:?} has no acyclicity reason")]
    Inconsistent { kind: Kind, geometry: Geometry },
}

/// `(β₀, β₁, …)` with exact nonnegative rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    entries: Vec<BigRational>,
}

impl BettiVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self, Ell2Error> {
        if let Some(bad) = entries.iter().find(|e| e.is_negative()) {
            return Err(Ell2Error::Negative(bad.clone()));
        }
        Ok(Self { entries })
    }

    pub fn from_integers(entries: &[u64]) -> Self {
        Self {
            entries: entries
                .iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![BigRational::zero(); len],
        }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Length minus one; `None` for the empty vector.
    pub fn dimension(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|e| e.to_string()))
    }
}

/// `Σ_{T∈𝒮} (−1)^{|T|} / |W_T|`.
pub fn chi_orb(p: &SphericalPoset) -> BigRational {
    p.elements
        .iter()
        .map(|t| {
            let term = BigRational::new(BigInt::from(1), BigInt::from(t.order.clone()));
            if t.members.len() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// χ-orb of the full subcomplex spanned by `vertices`.
pub fn chi_orb_of(c: &LabeledComplex, vertices: &BTreeSet<usize>) -> BigRational {
    let m = c.coxeter_matrix();
    let mut cells: Vec<Vec<usize>> = vec![vec![]];
    cells.extend(vertices.iter().map(|&v| vec![v]));
    cells.extend(
        c.edges()
            .keys()
            .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
            .map(|&(a, b)| vec![a, b]),
    );
    cells.extend(
        c.triangles()
            .iter()
            .filter(|t| t.iter().all(|v| vertices.contains(v)))
            .map(|t| t.to_vec()),
    );
    cells
        .into_iter()
        .map(|t| {
            let order = group_order(&m, &t).expect("cells are spherical");
            let term = BigRational::new(BigInt::from(1), BigInt::from(order));
            if t.len() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// χ-orb of the union of the full subcomplexes on `supports`, assembled by
/// inclusion–exclusion over all intersections.
pub fn chi_orb_inclusion_exclusion(
    c: &LabeledComplex,
    supports: &[BTreeSet<usize>],
) -> BigRational {
    assert!(
        supports.len() < 24,
        "inclusion–exclusion over {} sets",
        supports.len()
    );
    let mut total = BigRational::zero();
    for mask in 1u32..(1 << supports.len()) {
        let mut members = (0..supports.len()).filter(|i| mask & (1 << i) != 0);
        let first = members.next().unwrap();
        let mut inter = supports[first].clone();
        for i in members {
            inter = inter.intersection(&supports[i]).copied().collect();
        }
        let term = chi_orb_of(c, &inter);
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `β_k(A₁ ∗ A₂) = Σ_{i+j=k} β_i(A₁) β_j(A₂)`.
pub fn kunneth_join(a: &BettiVector, b: &BettiVector) -> BettiVector {
    if a.entries.is_empty() || b.entries.is_empty() {
        return BettiVector::zeros(0);
    }
    let mut out = vec![BigRational::zero(); a.entries.len() + b.entries.len() - 1];
    for (i, x) in a.entries.iter().enumerate() {
        for (j, y) in b.entries.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    BettiVector { entries: out }
}

/// Why a piece is ℓ²-acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    EuclideanFactor,
    KunnethSuspension,
    HyperbolicDodziuk,
}

impl Reason {
    /// Identifier of the analytic fact the certificate cites.
    pub fn axiom(self) -> &'static str {
        match self {
            Reason::EuclideanFactor => "cheeger-gromov.euclidean-factor",
            Reason::KunnethSuspension => "kunneth.join-with-euclidean-pair",
            Reason::HyperbolicDodziuk => "dodziuk.odd-dimensional-hyperbolic",
        }
    }

    pub fn for_geometry(kind: Kind, geometry: Geometry) -> Result<Self, Ell2Error> {
        use Geometry::*;
        let consistent = match kind {
            Kind::HyperbolicCapped | Kind::HyperbolicStarIdeal => geometry == H3,
            Kind::RaCone | Kind::EuclideanWall => geometry == E2xI,
            Kind::RaSuspension => matches!(geometry, H2xE | E3 | E2xI),
            Kind::WholeSpecial => true,
        };
        if !consistent {
            return Err(Ell2Error::Inconsistent { kind, geometry });
        }
        Ok(match geometry {
            E3 | E2xI => Reason::EuclideanFactor,
            H2xE => Reason::KunnethSuspension,
            H3 => Reason::HyperbolicDodziuk,
        })
    }
}

/// Betti vector of a 3-dimensional piece (all zeros) and the reason it
/// vanishes.
pub fn piece_betti(piece: &Piece) -> Result<(BettiVector, Reason), Ell2Error> {
    let reason = Reason::for_geometry(piece.kind, piece.geometry)?;
    Ok((BettiVector::zeros(4), reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::spherical_poset;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_vertex() {
        let c = LabeledComplex::new::<&str>("v", &["s"], &[]).unwrap();
        assert_eq!(chi_orb(&spherical_poset(&c)), q(1, 2));
    }

    #[test]
    fn joins() {
        let v = BettiVector::from_integers;
        assert_eq!(kunneth_join(&v(&[1, 0, 0]), &v(&[0, 1])), v(&[0, 1, 0, 0]));
        assert!(kunneth_join(&v(&[5, 7, 1]), &v(&[0, 0])).is_zero());
        assert_eq!(kunneth_join(&v(&[2, 1]), &v(&[3, 0, 1])), v(&[6, 3, 2, 1]));
    }

    #[test]
    fn negative_entries_are_rejected() {
        assert!(BettiVector::new(vec![q(-1, 3)]).is_err());
    }

    fn vector() -> impl Strategy<Value = BettiVector> {
        prop::collection::vec((0i64..20, 1i64..6), 1..5)
            .prop_map(|v| BettiVector::new(v.into_iter().map(|(n, d)| q(n, d)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn join_is_commutative_and_associative(a in vector(), b in vector(), c in vector()) {
            prop_assert_eq!(kunneth_join(&a, &b), kunneth_join(&b, &a));
            prop_assert_eq!(
                kunneth_join(&kunneth_join(&a, &b), &c),
                kunneth_join(&a, &kunneth_join(&b, &c))
            );
        }

        #[test]
        fn join_mass_multiplies(a in vector(), b in vector()) {
            prop_assert_eq!(kunneth_join(&a, &b).total(), a.total() * b.total());
        }
    }
}
