//! Pauli group arithmetic and ring-puzzle tilings of the triangular lattice.
//!
//! The crate is organized bottom-up:
//!
//! - [`pauli`]: exact arithmetic in the 16-element Pauli group, normal form
//!   `i^c X^a Z^b`.
//! - [`matrix`]: an independent 2x2 Gaussian-integer matrix oracle for the
//!   same group, plus the classical relation checks.
//! - [`finite`]: generic finite groups given by multiplication tables, the
//!   semidirect product `U = P ⋊ Z/3`, shortest kernel words of maps from
//!   free products, and exact angles.
//! - [`graph`]: small simple graphs, girth, isomorphism testing, and the
//!   Cayley graph of the Pauli group on {X, Y, Z}.
//! - [`ring`]: cyclically reduced words over involution alphabets and ring
//!   sets (identity-evaluating words of length 6) with their symmetries.
//! - [`lattice`]: faces, vertices, and finite regions (balls, tori, strips)
//!   of the unit triangular tiling, and its isometries.
//! - [`engine`]: puzzle validation, constraint propagation, exhaustive
//!   enumeration, strip analysis, and classification.
//! - [`general`]: ring-puzzle systems for an arbitrary finite group with a
//!   chosen set of involutions.

pub mod engine;
pub mod error;
pub mod finite;
pub mod general;
pub mod graph;
pub mod lattice;
pub mod matrix;
pub mod pauli;
pub mod ring;

pub use error::Error;
