//! Other models of the same algebras: pseudo-octonions on traceless 3×3
//! matrices, the Zorn vector-matrix algebra, and the Petersson correspondence
//! between idempotents and order-3 automorphisms.

pub mod p8;
pub mod petersson;
pub mod zorn;

use thiserror::Error;

use crate::field::FieldError;
use crate::okubo::AlgebraError;

pub use p8::{
    nilpotents, p8_bilin, p8_classify_zero_divisor, p8_norm, P8Model, P8ZeroDivisorKind,
    TracelessMatrix,
};
pub use petersson::{
    find_canonical_basis, petersson_reconstruct_check, tau_from_idempotent, tau_report,
    CanonicalBasisSearch, HurwitzFromIdempotent, LinearMap8, PeterssonReport, TauReport,
};
pub use zorn::{ZornAlgebra, ZornElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("3 is not invertible in characteristic 3")]
    Char3,
    #[error("the field has no primitive cube root of unity")]
    NoCubeRoot,
    #[error("matrix has nonzero trace")]
    NotTraceless,
    #[error("element is not a zero divisor")]
    NotZeroDivisor,
    #[error("element is not a nonzero idempotent")]
    NotIdempotent,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(FieldError),
}
