//! Explicit finite-group engine: coset enumeration, element-set subgroups
//! and abelian invariants of quotients.

pub mod catalog;
pub mod coset;
pub mod group;
pub mod schreier;

pub use catalog::{catalog, catalog_names, catalog_names_up_to, catalog_presentation, named_subgroup};
pub use coset::{enumerate_cosets, todd_coxeter, CosetTable, EnumerationStatus, Strategy, DEFAULT_COSET_LIMIT};
pub use group::{abelian_invariants_of_quotient, realize, realize_with, Elem, FinSubgroup, FiniteGroup};
pub use schreier::{reidemeister_schreier, SchreierPresentation};
