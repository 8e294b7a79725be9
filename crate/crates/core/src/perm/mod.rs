//! Permutations of `{1..n}`, permutation groups and sets, coset systems,
//! subgroup lattices of small symmetric groups, and group/partition
//! matrices.
//!
//! Composition is `(p∘q)(i) = p(q(i))`. Groups act on points by `σ(j)`, on
//! tuples by `σ*y = (y_σ(1), ..., y_σ(n))` and on polynomials by
//! substituting `x_j ↦ x_σ(j)`.

mod group;
pub mod lattice;
mod matrix;
mod permutation;

pub use group::{Action, CosetSide, CosetSystem, PermGroup, PermSet};
pub use lattice::{conjugate_in, maximal_subgroups, subgroup_classes, SubgroupClasses};
pub use matrix::{group_matrix_entry, partition_matrix, GroupMatrixEntry, PartitionMatrix};
pub use permutation::Permutation;
