//! Okubo algebras with isotropic norm over exact fields, their orthogonality
//! and zero-divisor graphs, and checks of their structure theory.

pub mod cli;
pub mod constructions;
pub mod field;
pub mod graphs;
pub mod linalg;
pub mod okubo;
