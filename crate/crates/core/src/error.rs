//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: self-loop {v} {v} is not allowed")]
    SelfLoop { line: usize, v: u32 },

    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: u32, n: usize },

    #[error("duplicate vertex {v} in selection")]
    DuplicateVertex { v: u32 },

    #[error("pattern must have between 2 and {max} vertices, got {r}")]
    PatternSize { r: usize, max: usize },

    #[error("enumeration exceeded the member cap of {cap}")]
    EnumerationCap { cap: usize },

    #[error("embedding count {count} is not divisible by automorphism count {aut}")]
    NonDivisibleEmbeddings { count: u64, aut: u64 },

    #[error("zero pattern copies: density c would be 0")]
    ZeroDensity,

    #[error("s must be at least 1")]
    SIsZero,

    #[error("s = {s} exceeds the left part size m = {m}")]
    STooLarge { s: usize, m: usize },

    #[error(
        "exact search needs {required} subset evaluations, above the cap {cap}; \
         use the counting or greedy extractor, or raise the cap"
    )]
    ExactCapExceeded { required: u128, cap: u128 },

    #[error("counting search needs {required} subset insertions, above the cap {cap}")]
    CountingCapExceeded { required: u128, cap: u128 },

    #[error("witness classes overlap at vertex {v}")]
    OverlappingClasses { v: u32 },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}
