//! Few-weight linear codes over finite fields.
//!
//! The crate builds four families of distance-optimal linear codes from
//! punctured simplex matrices and complements of generalized Reed-Solomon
//! matrices, evaluates their closed-form weight data (weight distributions,
//! generalized Hamming weights, subcode support weight distributions), and
//! verifies every closed form against brute-force subspace enumeration.
//!
//! Layering, bottom up:
//! - [`field`]: exact GF(p^e) arithmetic with a canonical element order;
//! - [`linalg`]: dense matrices, RREF/kernels, subspace and projective-point
//!   enumeration, the column-membership count `m_G`;
//! - [`qcombinat`]: Gaussian binomials and the subspace-counting formulas
//!   behind the closed-form distributions;
//! - [`codes`]: the oracle layer — exhaustive weight distributions, SSWDs,
//!   generalized Hamming weights, Griesmer defects;
//! - [`constructions`]: the code families, their closed-form evaluators and
//!   the closed-form-versus-oracle verification harness.

#![forbid(unsafe_code)]

pub mod codes;
pub mod constructions;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qcombinat;

pub use error::{Error, Result};
pub use field::{field_from_order, FieldDescriptor, FieldElement, FiniteField};
pub use linalg::{MatrixGF, SubspaceBasis};
pub use qcombinat::{gaussian_binomial, BigCount};
