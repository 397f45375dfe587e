//! Isomorph-free exhaustive search: enumeration by canonical augmentation,
//! the `ex(n, H, F)` oracle, Turán-goodness verdicts, and the exact
//! optimizer over complete multipartite hosts.

mod enumerate;
mod extremal;
mod optimize;

pub use enumerate::{count_classes, enumerate_classes, enumerate_graphs, MAX_SEARCH_VERTICES};
pub(crate) use enumerate::enumerate_fold;
pub use extremal::{
    check_turan_good, ex_generalized, ex_generalized_with, ExtremalRecord, GoodnessRow,
    GoodnessVerdict, SearchOptions,
};
pub use optimize::{find_k0, optimize_multipartite, vertex_move_delta, MultipartiteOptimum};
