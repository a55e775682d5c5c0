//! Boundary calculus and recognition of constructible molecules.

mod boundary;
mod oracle;

pub use boundary::{BoundarySpec, Side};
pub use oracle::{
    certify_constructible, constructible_directed_complex_witness, is_constructible_atom,
    is_constructible_directed_complex, is_constructible_molecule, is_constructible_submolecule,
    Budget, ComplexWitness, MergerTree, MoleculeOracle, Refusal, Split, BUDGET_ENV,
};
