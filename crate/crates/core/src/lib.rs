//! Constructive library for packings of three edge-disjoint copies of a
//! 2-factor into a complete graph.
//!
//! Given a cycle-length multiset, the crate decides whether such a packing
//! exists, is unique, or admits at least two non-isomorphic packings, and
//! produces explicit machine-verifiable packings together with certificates
//! that two packings' union graphs are non-isomorphic.

pub mod canon;
pub mod catalog;
pub mod circulant;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod search;

pub use canon::{
    are_isomorphic, canonical_form, certify_distinct, chromatic_number, find_k5, is_bipartite,
    verify_certificate, CanonicalForm, DistinctnessCertificate, Limits,
};
pub use catalog::{catalog_lookup, CatalogEntry};
pub use circulant::{
    build_circulant, hamiltonian_decomposition, select_generator_pair, CirculantSpec,
};
pub use construct::{
    disjoint_union, distinct_packings, grow_family, merge_components, packing_of,
    subdivide_matching, PackingOutcome,
};
pub use enumerate::{brute_force_isomorphic, enumerate_unions, EnumerationResult};
pub use error::{Error, Result};
pub use graph::{
    to_dot, union_graph, validate_packing, CyclePlacement, SimpleGraph, TriplePacking,
    TwoFactorShape, ValidationReport, Violation,
};
pub use search::{search_packing, SearchConstraint, DEFAULT_SEARCH_BUDGET};
