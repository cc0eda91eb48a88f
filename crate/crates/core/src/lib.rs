//! Distance Laplacian and distance signless Laplacian spectra of connected
//! graphs, the graft transformations that control them, and exhaustive
//! extremal searches over trees and small connected graphs.
//!
//! The crate is organized around a handful of small layers:
//!
//! * [`graph`] — exact combinatorics: graphs, BFS distance matrices,
//!   transmissions, and the two distance Laplacians as dense symmetric
//!   matrices.
//! * [`eigen`] — dense symmetric eigensolvers: power iteration for the
//!   spectral radii with a cyclic-Jacobi full-spectrum oracle as fallback.
//! * [`families`] — constructors and recognizers for the named graph
//!   families (paths, stars, double brooms, triple-star paths).
//! * [`transforms`] — graft transformations (branch moves, star
//!   relocation, pendant-path shifts, edge addition) and their eigenvector
//!   side conditions.
//! * [`enumerate`] — free-tree generation by canonical level sequences and
//!   labeled connected-graph enumeration at desk scale.
//! * [`verify`] — extremal searches and corpus-wide inequality sweeps
//!   producing machine-readable certificates.
//! * [`codec`] — edge-list text and graph6 encodings.

pub mod codec;
pub mod eigen;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod transforms;
pub mod verify;

pub use codec::{decode_graph6, encode_graph6, parse_edge_list, write_edge_list, CodecError};
pub use eigen::{
    cmp_rho_values, compare_rho, eps_cmp, jacobi_spectrum, rho_l, rho_q, EigenError, FullSpectrum,
    Method, RhoOrder, SpectralSummary,
};
pub use enumerate::{
    connected_graphs, connected_graphs_with_k_pendants, free_trees, trees_with_k_leaves,
    EnumerateError, GraphClassQuery, TreeClassQuery,
};
pub use families::{
    attach_pendant_paths, double_broom, path, recognize_double_broom, relocate_star, star,
    triple_star_path, DoubleBroomParams, FamilyError, StarEnd, TripleStarPathParams,
};
pub use graph::{DistanceData, Graph, GraphError};
pub use matrix::SymMatrix;
pub use transforms::{
    add_edge, graft_condition, move_branch, shift_pendant_path, BranchDecomposition,
    GraftConditionReport, GraftVariant, TransformError,
};
pub use verify::{
    extremal_search, report_broom_profile, sweep_lemma, BroomProfile, ClassQuery, Corpus,
    ExtremalCertificate, Objective, SweepBounds, SweepReport, VerifyError, Violation,
    SCHEMA_VERSION,
};
