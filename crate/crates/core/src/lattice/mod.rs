//! Exact integer linear algebra: Smith normal form, kernels and cokernels,
//! (co)invariants of finite group actions on lattices, finitely generated
//! abelian groups and their characters.

mod character;
mod circle;
mod group;
mod matrix;
mod smith;

use num_bigint::BigInt;
use thiserror::Error;

pub use character::{character_restrict, divisible_extension, GroupCharacter};
pub use circle::ExactCircle;
pub use group::{
    coinvariants, cokernel, finite_dual, invariants_of_induced_action, kernel, FgAbGroup, GroupHom,
    Lattice, LatticeMap,
};
pub(crate) use matrix::dot;
pub use matrix::{format_vector, ivec, IntMatrix, IntVector};
pub use smith::{
    column_span_basis, kernel_basis, smith_normal_form, solve_integer, solve_integer_matrix,
    unimodular_inverse, SmithForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generator {index} is not an automorphism (determinant is not ±1)")]
    NotUnimodular { index: usize },
    #[error("map does not preserve the relation lattice of the presentation")]
    RelationsNotPreserved,
    #[error("expected a finite group, found free rank {0}")]
    NotFinite(usize),
    #[error("value {value} at generator {index} is not killed by the generator order {order}")]
    TorsionIncompatible {
        index: usize,
        order: BigInt,
        value: String,
    },
    #[error("ambient character is not trivial on the relations")]
    NotTrivialOnRelations,
    #[error("groups do not match")]
    DomainMismatch,
    #[error("map is not injective")]
    NotInjective,
}
