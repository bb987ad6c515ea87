//! Finding large blow-up witnesses in graphs that contain many copies of a
//! small pattern.
//!
//! Given a host graph G and a pattern H with many (induced) embeddings, the
//! extractor produces a witness subgraph whose vertex classes realize H with
//! class sizes (s, …, s, t): the classes of pattern-adjacent vertices span
//! complete cross bipartite graphs (and, in induced mode, pattern
//! non-adjacent classes span none). The pipeline is: enumerate embeddings,
//! prune prefixes of low extension degree, recurse on the restricted pattern,
//! and finish with an exact complete-bipartite-subgraph search whose achieved
//! t is compared against an exact rational density guarantee.

pub mod bitset;
pub mod bounds;
pub mod embed;
pub mod error;
pub mod extract;
pub mod graph;
pub mod report;
pub mod zarankiewicz;

pub use bounds::{
    check_density_preconditions, compute_c, compute_s, compute_t_threshold, parse_rational,
    rational_string, BoundsReport, CountKind, Density, PreconditionFlags,
};
pub use embed::{
    automorphism_count, copies_from_embeddings, enumerate_embeddings, restrict, EmbeddingSet, Mode,
};
pub use error::Error;
pub use extract::{
    extract, prune, verify_covers, verify_type, BlowupWitness, CoverReport, ExtractFailure,
    ExtractOutcome, ExtractParams, ExtractReport, ExtractorKind, FailureKind, LevelReport,
    PruneOutcome, SPolicy, DEFAULT_COUNTING_CAP, DEFAULT_ENUM_CAP, DEFAULT_EXACT_CAP,
};
pub use graph::{Graph, Pattern};
pub use report::{FailureJson, WitnessJson};
pub use zarankiewicz::{
    density_guarantee, greedy_biclique, is_complete_biclique, max_t_counting, max_t_exact,
    BicliqueWitness, BipartiteGraph, DensityGuarantee,
};
