//! Unsupervised keyphrase extraction built on a complete directed
//! multipartite candidate graph.
//!
//! The pipeline: select candidate phrases by POS pattern, group them into
//! topics by agglomerative clustering over stem overlap, build a k-partite
//! graph weighted by inverse positional distance, promote each topic's
//! first-occurring candidate by inflating its incoming edge weights, and
//! rank nodes with weighted TextRank. SingleRank and TopicRank baselines
//! plus F1@k / MAP / topic-coverage scoring are included for comparison.

pub mod baselines;
pub mod candidates;
pub mod corpus;
pub mod eval;
pub mod graph;
pub mod pipeline;
pub mod rank;
pub mod stem;
pub mod topics;

pub use candidates::{extract_candidates, Candidate, PatternKind};
pub use corpus::{Coarse, Document, GoldReferences, TagMap, Token};
pub use graph::{AdjustmentConfig, AdjustmentVariant, WeightedDigraph};
pub use pipeline::{ExtractionOutput, ModelKind, RunConfig};
pub use rank::{select_top, textrank, RankedList, TieKey};
pub use stem::{stem_phrase, stem_word, StemmedPhrase};
pub use topics::{cluster_topics, stem_set_distance, TopicPartition};
