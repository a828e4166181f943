//! Word-level coreference toolkit.
//!
//! * [`conll`] and [`jsonl`] read and write the two corpus formats.
//! * [`headword`] picks one head-word per mention, with either the baseline
//!   rule or the conjunction-aware rule.
//! * [`wl_dataset`] turns span clusters into word clusters and reports
//!   head-word collisions.
//! * [`clustering`] and [`span_extract`] run inference from score files.
//! * [`metrics`] scores a response against a key with MUC, B-cubed and
//!   CEAF-phi4.

pub mod clustering;
pub mod conll;
pub mod demo;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod headword;
pub mod jsonl;
pub mod metrics;
pub mod span_extract;
pub mod wl_dataset;

pub use clustering::{ClusterPartition, ScoreKind, ScoreMatrix};
pub use conll::{emit_conll, parse_conll, ColumnConfig};
pub use document::{Cluster, Document, MentionSpan, Token};
pub use error::{Error, Result};
pub use headword::{baseline_headword, HeadFinder, HeadwordAssignment, Rule};
pub use jsonl::{emit_jsonlines, parse_jsonlines};
pub use wl_dataset::{build_wl, corpus_stats, reconstruct_spans, ConflictReport, WordLevelDoc};

/// Version of the jsonlines, score-matrix and boundary-score schemas.
pub const SCHEMA_VERSION: u32 = 1;

/// Gold or predicted clusters of a document as a partition of spans.
pub fn span_partition(doc: &Document) -> Result<ClusterPartition<MentionSpan>> {
    ClusterPartition::new(doc.clusters.iter().map(|c| c.spans.clone()).collect()).map_err(|e| {
        Error::Validation {
            doc: doc.name(),
            message: e.to_string(),
        }
    })
}
