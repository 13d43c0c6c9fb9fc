//! Canonical decomposition of 3-dimensional Coxeter orbifolds.
//!
//! The input is the labeled nerve `L` of a Coxeter system `(W, S)` that
//! triangulates the 2-sphere. The orbifold `K_L = Σ_L / W` is cut along
//! Euclidean suborbifolds into hyperbolic, Euclidean and `H²×E` pieces, the
//! hyperbolic pieces are checked against Andreev's conditions, and exact
//! ℓ²-bookkeeping certificates are produced.

pub mod andreev;
pub mod angle;
pub mod coxeter;
pub mod davis;
pub mod decompose;
pub mod detect;
pub mod ell2;
pub mod nerve;

pub use coxeter::{CoxeterMatrix, GramSignature, SphericalPoset};
pub use nerve::{LabeledComplex, NerveError, SphereNerve, SurfaceReport};

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
