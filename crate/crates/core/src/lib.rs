//! Exact construction and verification of the three-qubit Kochen-Specker
//! parity proofs built on the Mermin pentagram.
//!
//! The pipeline runs bottom-up: [`pauli`] builds the ten observables and the
//! five measurement contexts, [`rays`] derives the 40 joint eigenrays,
//! [`geometry`] finds the 25 orthogonal bases and the gamma table,
//! [`construct`] runs the tick/cross procedures, [`parity`] checks proofs and
//! colorings, and [`enumerate`] searches every subset of bases. [`io`] holds
//! the serialization formats shared with the command-line tool.

pub mod construct;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod gf2;
pub mod io;
pub mod parity;
pub mod pauli;
pub mod rays;

pub use construct::{
    construct_11, construct_13, construct_15, ConstructionResult, PickOrder, Tableau,
};
pub use enumerate::{enumerate_parity_proofs, IncidenceMatrix, ProofCatalog};
pub use error::{ConstructionError, Error, FixtureError, GeometryError, PauliError, RayError};
pub use fixtures::Fixtures;
pub use geometry::{BasisId, BasisKind, BasisSet, GammaEntry, GammaRef, GammaTable, Geometry};
pub use parity::{find_coloring, is_parity_proof, signature, Signature};
pub use pauli::{mermin_pentagram, Context, Letter, Observable, PauliWord};
pub use rays::{build_ray_table, Ray, RayId, RayTable};

/// Number of qubits in every word handled by this crate.
pub const QUBITS: usize = 3;
/// Hilbert-space dimension, 2^QUBITS.
pub const DIM: usize = 8;
/// Number of rays in the catalog.
pub const RAY_COUNT: usize = 40;
/// Number of orthogonal bases among the rays.
pub const BASIS_COUNT: usize = 25;
