//! Exact real, binary and boolean rank of 0/1 matrices, the bases and base
//! graph of a matrix, and the augmentation property.

pub mod bases;
pub mod config;
pub mod constructions;
mod error;
pub mod matrix;
mod par;
pub mod properties;
pub mod ranks;
pub mod verify;

pub use bases::{
    base_graph, enumerate_bases, has_augmentation_property, is_rank_preserving, sources, spans_base, spans_vector,
    AugmentationVerdict, Base, BaseGraph, BaseSet, Decomposition,
};
pub use constructions::{
    augment_with_source_bases, build_ak, build_gap_binary, build_gap_boolean, fixture, Bound, ClaimCheck, Fixture,
    RankClaim, RankKind,
};
pub use error::{Error, Result};
pub use matrix::{augment, block_diag, product, tensor_identity, BinaryMatrix, ColumnVector, Product, Semiring};
pub use properties::{
    find_disjoint_in_rows_base, has_unique_base_rows_sums, has_unique_base_rows_sums_in, rows_of_a_decomposition,
    rows_of_a_decomposition_in, rows_of_a_verdict, verify_dependency_transfer, RowsOfAVerdict, SumsCounterexample,
    UniqueSumsVerdict,
};
pub use ranks::{binary_rank, boolean_rank, real_rank, RankResult, Rectangle, RectangleSolution, SolutionKind};
