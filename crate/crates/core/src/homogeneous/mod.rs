//! Lie algebras, reductive homogeneous spaces and their invariant calculus.

pub mod algebras;
mod dga;
mod lie;
mod reductive;
mod ricci;

pub use dga::CoframeDGA;
pub use lie::{lie_from_matrices, numbered_labels, LieAlgebraData};
pub use reductive::{
    ce_differential, centralizer, invariant_forms, is_invariant, isotypic_decomposition, m_differentials, reductive_split,
    Bilinear, InvariantMetric, Isotypic, IsotypicBlock, ReductiveSpace, RepKind,
};
pub(crate) use reductive::invariant_differential;
pub use ricci::{einstein_constant, ricci};
