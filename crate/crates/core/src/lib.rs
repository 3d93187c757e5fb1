//! Computational group theory for colimits of classifying spaces.
//!
//! The crate evaluates intersection/commutator formulas for homotopy
//! groups of colimits of classifying spaces on two engines: explicit
//! finite groups and free nilpotent quotients in polycyclic form.

pub mod error;
pub mod finite;
pub mod intmat;
pub mod nilpotent;
pub mod cli;
pub mod colimit;
pub mod presentation;
pub mod word;
pub mod tensor;
pub mod wu;

pub use error::{Error, Result};
pub use intmat::AbelianInvariants;
pub use presentation::{parse_presentation, parse_word, Presentation};
pub use word::{commutator, conjugate, hopf_element, left_normed_commutator, reduce, Generator, Word};
