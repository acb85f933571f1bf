//! Finitely presented groups and the combinatorics built on them: free
//! words, Fox derivatives, first homology via Smith normal form, cyclic
//! characters, and finite-index covers through Reidemeister-Schreier
//! rewriting.

mod cover;
mod fox;
mod homology;
mod presentation;
mod word;

pub use cover::{reidemeister_schreier, CosetTable, SchreierData};
pub use fox::{fox_derivative, GroupRingSum};
pub use homology::{enumerate_characters, h1_smith, Homology};
pub use presentation::{CohomClass, Presentation};
pub use word::{Letter, Word};

use thiserror::Error;

/// Failures in presentation handling, class validation, and covers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator names must be nonempty and unique; '{0}' is not")]
    BadGeneratorName(String),
    #[error("relator {relator} uses generator index {index}, but there are only {count}")]
    LetterOutOfRange { relator: usize, index: usize, count: usize },
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("class assigns {got} values to {want} generators")]
    ClassLengthMismatch { got: usize, want: usize },
    #[error("class does not vanish on relator {relator} (value {value})")]
    ClassNotCocycle { relator: usize, value: i64 },
    #[error("character does not vanish on relator {relator} mod {modulus} (value {value})")]
    CharacterNotHomomorphism { relator: usize, modulus: u64, value: i64 },
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("coset action of generator {gen} is not a bijection")]
    TableNotBijective { gen: usize },
    #[error("relator {relator} moves coset {coset}; the table is not a coset table")]
    TableRelatorBroken { relator: usize, coset: usize },
    #[error("coset table is not transitive; coset {coset} is unreachable from 1")]
    TableNotTransitive { coset: usize },
    #[error("table has {got} generator actions for {want} generators")]
    TableShapeMismatch { got: usize, want: usize },
}
