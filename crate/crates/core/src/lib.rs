//! Exact computations with modules of restricted Lie algebras over finite
//! fields: characters and clusters, the cluster decomposition, amenability,
//! and induced modules, together with brute-force oracles for checking them.

pub mod cluster;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod induction;
pub mod lie;
pub mod lmodule;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod random;
pub mod subspace;

pub use cluster::{
    character_field, cluster_decompose, cluster_decompose_in, common_tower, compute_cluster, compute_cluster_in,
    decompose_wrt, decompose_wrt_in, is_amenable, splitting_degree, splitting_tower, AmenabilityReport, Character,
    Cluster, ClusterDecomposition, ClusterPart,
};
pub use error::{Error, ErrorKind, Result};
pub use field::{field_degree_of, galois_orbit, make_field, Elem, FiniteField, Tower};
pub use induction::{extend_character, extend_cluster, induce, induce_in, induce_rational, restricts_simply, InducedModule};
pub use lie::{idealizer, idealizer_of, subnormal_chain, LieAlgebra, Subalgebra, ValidationReport, Violation};
pub use lmodule::LieModule;
pub use matrix::Matrix;
pub use oracle::OracleConfig;
pub use par::Execution;
pub use poly::Poly;
pub use subspace::Subspace;
