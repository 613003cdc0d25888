//! Quantum orthogonal Cayley-Klein groups and algebras, computed exactly.
//!
//! The coefficient ring ([`scalar`]) carries the contraction parameters `j_k`,
//! the deformation parameter `v` and `E = e^{Jv/2}` as formal symbols. The
//! structural matrices ([`structures`]) are built for `N = 3..=6`, their
//! matrix identities are expanded into noncommutative relations
//! ([`relations`]), and the duality with the quantum algebra is computed in
//! [`pairing`].

pub mod error;
pub mod freealg;
pub mod json;
pub mod pairing;
pub mod relations;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
pub use freealg::{AlgMatrix, Family, NcPoly, Relation, RelationSet, RingMatrix, Symbol, Word};
pub use scalar::{BaseScalar, CkScalar, DualValue, HyperKind, JSignature, JValue, Monomial};
pub use structures::{Basis, StructureBundle};
