//! Blocking toolkit for entity resolution.
//!
//! Records are canonicalized into character k-shingle sets, then grouped into
//! candidate pairs by one of three engines:
//!
//! - **KLSH**: IDF-weighted shingle vectors are reduced with Gaussian random
//!   projections and partitioned into `c` disjoint blocks by k-means.
//! - **DOPH**: densified one-permutation hashing produces a K*L minhash-style
//!   signature in a single pass over each record; banding the signature into
//!   L tables of K values yields overlapping candidate pairs.
//! - **Weighted DOPH**: the same engine over binary sets sampled from
//!   IDF-weighted vectors with corpus-shared coins, so collisions track the
//!   weighted Jaccard similarity.
//!
//! Candidate sets are scored pair-wise against ground truth (recall,
//! precision, reduction ratio). The `minhash` module carries the exact
//! similarity oracles and classical minwise hashing the fast engines are
//! validated against.
//!
//! See the crate `examples/` directory for a runnable tour of each
//! capability, and the `shingleblock` binary for the CLI.

pub mod banding;
pub mod corpus;
pub mod doph;
pub mod error;
pub mod hashing;
pub mod klsh;
pub mod metrics;
pub mod minhash;
pub mod pipeline;
pub mod shingle;
pub mod vectorize;

pub use banding::CandidatePairSet;
pub use corpus::{Corpus, GroundTruth, Record, SynthConfig};
pub use error::{Error, Result};
pub use metrics::BlockingReport;
pub use pipeline::{EngineKind, Pipeline, RunConfig};
pub use shingle::{ShingleConfig, ShingleSet, Vocabulary};
