//! Experiment harness: deterministic random instances, planted blow-ups, the
//! end-to-end pipeline, and the random-biclique bench.

pub mod bench;
pub mod gen;
pub mod pipeline;

pub use bench::{bench_random_biclique, BenchResult};
pub use gen::{gen_gnp, plant_blowup};
pub use pipeline::{run_pipeline, CPolicy, GraphSource, PipelineConfig, PipelineRun};
