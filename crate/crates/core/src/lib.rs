//! k-weights and k-plexes of latin squares.
//!
//! A k-weight assigns integers to the cells of a latin square so that every
//! row, column and symbol sums to `k`; a k-plex is a 0/1 k-weight. This crate
//! builds the standard weights, decides k-weight existence exactly with an
//! integer Hermite normal form, searches for k-plexes and transversals, and
//! checks the group-theoretic identities that govern cyclic and abelian
//! Cayley tables.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod feasibility;
pub mod group;
pub mod hnf;
pub mod io;
pub mod latin;
pub mod pattern;
pub mod plex;
pub mod survey;
pub mod weights;

pub use error::{Error, Result};
pub use feasibility::{decide_k_weight, weight_spectrum, WeightDecision, WeightSpectrum};
pub use group::{AbelianGroup, GroupElement};
pub use latin::{classify, CellTriple, LatinSquare, PartialWeightClass, WeightMatrix};
pub use plex::{find_k_plex, PlexOutcome, SearchBudget};
