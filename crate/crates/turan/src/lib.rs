//! Exact tools for generalized Turán problems at desk scale.
//!
//! Everything is built around a 16-vertex bitmask graph kernel:
//!
//! * [`graph`] — the [`Graph`] type, isomorphism via canonical forms,
//!   chromatic invariants and graph6 I/O;
//! * [`families`] — parametrized constructions (paths, cycles, cliques,
//!   stars, books, fans, matching complements, Turán graphs, complete
//!   multipartite graphs) behind a tiny textual DSL;
//! * [`count`] — exact subgraph/induced-copy counting plus closed forms
//!   for complete multipartite hosts;
//! * [`spectral`] — walk counting and the spectral-radius path bound;
//! * [`search`] — isomorph-free exhaustive enumeration, the `ex(n, H, F)`
//!   oracle, Turán-goodness verdicts and the class-vector optimizer.
//!
//! Counts of copies are always unlabeled subgraph counts: the number of
//! injective edge-preserving maps divided by the automorphism group order
//! of the pattern. Induced counting is a separate entry point.

pub mod canon;
pub mod chromatic;
pub mod count;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod spectral;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use chromatic::{chromatic_number, clique_number, color_critical_edges};
pub use count::{
    contains, copies_containing_edge, count_induced, count_subgraph, edges_in_triangles,
    multipartite_count, pair_count_slack, turan_c4_count, turan_clique_count, turan_p4_count,
    CountReport,
};
pub use families::{
    complete_multipartite, extend_with_clique, parse_family, turan, turan_class_sizes,
    ClassVector, FamilySpec,
};
pub use graph::{Edge, Graph, MAX_VERTICES};
pub use graph6::{parse_graph6, write_graph6};
pub use search::{
    check_turan_good, count_classes, enumerate_classes, enumerate_graphs, ex_generalized,
    ex_generalized_with, find_k0, optimize_multipartite, vertex_move_delta, ExtremalRecord,
    GoodnessRow, GoodnessVerdict, MultipartiteOptimum, SearchOptions, MAX_SEARCH_VERTICES,
};
pub use spectral::{
    check_path_bound, path_spectral_bound, spectral_radius, walk_count, SpectralEstimate,
};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph capacity is {} vertices, got {0}", MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("{0}-{1} is not an edge of the host")]
    NotAnEdge(usize, usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("family syntax error at byte {offset}: {message}")]
    FamilyParse { offset: usize, message: String },
    #[error("family parameter out of range: {0}")]
    FamilyRange(String),
    #[error("class vector parts must all be positive")]
    EmptyPart,
    #[error("Turán graph needs 1 <= r <= n, got r={r}, n={n}")]
    PartsExceedVertices { r: usize, n: usize },
    #[error("the selected vertex set does not induce a clique")]
    NotAClique,
    #[error("clique size r={r} must satisfy 1 <= r <= k-1 for forbidden K_{k}")]
    CliqueRange { r: usize, k: usize },
    #[error("exhaustive search is capped at {cap} vertices, got {n}")]
    SearchCapacity { n: usize, cap: usize },
    #[error("degenerate query: the counted graph contains the forbidden graph")]
    DegenerateQuery,
    #[error("need at least {need} parts (chromatic number of the pattern), got {got}")]
    TooFewParts { need: usize, got: usize },
    #[error("invalid part index {0}")]
    InvalidPart(usize),
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("spectral radius of an empty graph is undefined")]
    EmptyGraph,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
