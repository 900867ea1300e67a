//! Torus graphs: 3-valent graphs embedded in the sphere whose darts carry
//! integer lattice labels (an *axial function*), together with the surgery
//! and classification machinery built on top of them.
//!
//! The crate is organized bottom-up:
//!
//! * [`lattice`]: rank-3 integer lattice vectors/covectors, determinants,
//!   unimodularity, and the duality solve used to translate between facet
//!   vectors and axial labels.
//! * [`graph`]: rotation systems (combinatorial sphere embeddings) of
//!   3-valent multigraphs: facet walks, the face poset, niceness checks,
//!   and connectivity queries.
//! * [`torus`]: the [`torus::TorusGraph`] type: axial labels plus an
//!   optional orientation, the validation axioms, the connection, the
//!   characteristic-data round trip, and equivalence tests.
//! * [`surgery`]: connected sums of torus graphs at vertex pairs and the
//!   inverse splits along 3-edge cuts, with gluing records that make the
//!   operations exactly invertible.
//! * [`classify`]: recognition of the basic families (the 2-vertex graph,
//!   the simplex graph, the 4-vertex bundle graphs, 3-connected simple
//!   graphs) and recursive decomposition into a tree of basic leaves.
//! * [`families`]: constructors for the standard example graphs.
//! * [`catalog`]: a generator for small 3-valent sphere maps used as a
//!   test corpus.
//! * [`io`]: JSON parsing/serialization and DOT export.

#![forbid(unsafe_code)]

pub mod catalog;
pub mod classify;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod surgery;
pub mod torus;

pub use catalog::{nice_maps, sphere_maps};
pub use classify::{
    classify, enumerate_characteristic, fold, normalize_sb_params, recognize_basic,
    reduce_multi_edge, reduce_singular_facet, summarize, CharacteristicEnumerator,
    DecompositionTree, Leaf, LeafKind, SingularFacetSplit,
};
pub use error::{Error, OpError, ParseError, Result, ValidationError};
pub use graph::{Dart, EdgeId, FacePoset, Facet, FacetId, RotationGraph, Vertex};
pub use io::{
    any_from_json, characteristic_from_json, characteristic_to_json, graph_from_json, graph_to_dot,
    graph_to_json, torus_from_json, torus_to_dot, torus_to_json, tree_from_json, tree_to_json,
    AnyGraph, CharacteristicDoc, GraphDoc, JsonInt, RecordDoc, TorusDoc, TreeDoc,
};
pub use lattice::{
    det3, det3_cov, is_unimodular_basis, solve_dual, LatticeCovector, LatticeVector, SignClass,
};
pub use surgery::{connected_sum, find_splits, find_sum_sites, split, GluingRecord, SumSite};
pub use torus::{
    compute_connection, ensure_sigma, face_subgraphs, find_isomorphism, find_twisted_isomorphism,
    from_characteristic, is_equivalent, lift_signs, recover_characteristic, synthesize_sigma,
    validate_torus_graph, CharacteristicData, Connection, EquivalenceMode, Isomorphism, Subgraph,
    TorusGraph, UnorientedCharacteristic,
};
