//! Computable fragments of the infinite-dimensional hypercube graph.
//!
//! Vertices are maximal singular subsets of the nonzero integers, stored as
//! eventually periodic sign functions. Edges join vertices that differ at a
//! single coordinate. Symplectic permutations (signed permutations with
//! finite support) act on vertices as graph automorphisms, and
//! [`automorphism`] recovers such a permutation from any black-box
//! automorphism restricted to a connected component.
//!
//! [`finite`] holds brute-force ground truth for the finite cubes `H_n`.

pub mod automorphism;
pub mod error;
pub mod finite;
pub mod json;
pub mod symplectic;
pub mod vertex;
pub mod window;

pub use automorphism::{
    check_automorphism_on_sample, example1_automorphism, is_regular_verdict, reconstruct_component,
    reconstruct_local, AutomorphismOracle, ReconstructionResult, Verdict,
};
pub use error::{Error, Result};
pub use finite::{CubeAutomorphism, FiniteCube};
pub use symplectic::{SymplecticPerm, WreathPair};
pub use vertex::{Distance, Sign, SignRule, Vertex};
pub use window::Window;
