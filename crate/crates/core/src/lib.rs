//! Split vertex deletion: find a minimum-weight vertex set whose removal leaves a
//! split graph.
//!
//! The crate provides an exact branch-and-bound oracle, the local-ratio
//! 5-approximation over induced `2K2`/`C4`/`C5`, and a deterministic
//! (2+ε)-approximation built from induced-path local ratio, clique–stable set
//! separators and weighted vertex cover. Weights are exact rationals throughout.

pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod paths;
pub mod separator;
pub mod solver;
pub mod split;
pub mod vertex_cover;

pub use error::{GraphError, SolverError};
pub use graph::{format_weight, parse_weight, ratio, Graph, IndexMap, VertexSet, Weight, WeightMap};
pub use paths::{choose_k, find_induced_path, find_pk_or_copk, PathKind, PathObstruction, SearchBudget};
pub use separator::{
    exhaustive_separator, find_pure_pair, recursive_separator, verify_separator, Cut, PurePair,
    SeparatorFamily, VerifyMode,
};
pub use solver::{
    exact_svd, five_approx, prune_minimal, two_plus_eps, verify_hitting_set, Algorithm, HittingSetResult,
    LocalRatioTrace, SeparatorStrategy, TwoPlusEpsOptions,
};
pub use split::{
    find_small_obstruction, find_split_partition, is_split, is_split_by_degrees, SmallObstruction,
    SmallObstructionKind, SplitCertificate,
};
pub use vertex_cover::{vc_exact, vc_two_approx, CoverResult};
