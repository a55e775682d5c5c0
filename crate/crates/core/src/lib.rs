//! Constructible directed complexes: oriented graded posets, constructible
//! molecules with merger-tree certificates, merger and substitution rewriting,
//! Gray products and joins, Steiner-style molecules, augmented directed
//! complexes, and homological checks on nerves.
#![allow(clippy::needless_range_loop)]

pub mod chain;
pub mod classes;
pub mod constructions;
pub mod document;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod molecules;
pub mod omega;
pub mod poset;
pub mod rewriting;
pub mod set;
pub mod topology;

pub use chain::AugmentedDirectedComplex;
pub use classes::DirectedGraph;
pub use constructions::{DualitySet, Generator};
pub use embedding::Inclusion;
pub use error::{Error, Result};
pub use molecules::{Budget, MergerTree, MoleculeOracle, Refusal};
pub use omega::CompositionTree;
pub use poset::{Complex, ComplexBuilder, Sign};
pub use set::ElementSet;
pub use topology::{HomologyResult, SimplicialComplex};
