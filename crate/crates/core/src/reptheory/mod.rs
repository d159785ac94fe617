//! Permutation groups and their exact character theory.

mod classfn;
mod group;
pub mod perm;
mod subgroups;
mod tables;

pub use classfn::{ClassFunction, SubgroupEmbedding};
pub use group::{ConjClasses, PermGroup, MAX_GROUP_ORDER};
pub use subgroups::{cyclic_subgroup, cyclic_subgroups, linear_characters, monomial_witness, subgroups, MAX_LATTICE_ORDER};
pub use tables::{builtin_labels, builtin_table, so3_type_characters, CharacterTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("generator is not a permutation of the stated degree")]
    InvalidPermutation,
    #[error("no built-in character table for {0:?}")]
    UnsupportedGroup(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("expected {expected} class values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("inner product is not a nonnegative integer; input is not a character")]
    NonIntegerResult,
    #[error("class function is not a character")]
    NotACharacter,
}
