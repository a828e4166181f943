//! Hand-annotated documents bundled with the toolkit.
//!
//! Dependency parses follow Stanford basic dependencies: a coordinating
//! conjunction and the second conjunct both attach to the first conjunct.

use crate::document::Document;
use crate::jsonl::parse_jsonlines;

pub const SIBLINGS_JSONL: &str = include_str!("../fixtures/siblings.jsonl");
pub const CONJOINED_PAIRS_JSONL: &str = include_str!("../fixtures/conjoined_pairs.jsonl");
pub const CONJUNCTION_CASES_JSONL: &str = include_str!("../fixtures/conjunction_cases.jsonl");

fn load(text: &str) -> Vec<Document> {
    parse_jsonlines(text).expect("bundled fixture is valid")
}

fn by_id(text: &str, doc_id: &str) -> Document {
    load(text)
        .into_iter()
        .find(|d| d.doc_id == doc_id)
        .expect("bundled fixture exists")
}

/// "Tom and Mary are playing . He is 7 years old . They are siblings ."
/// Clusters: {Tom, He}, {Tom and Mary, They}, {Mary}.
pub fn siblings() -> Document {
    by_id(SIBLINGS_JSONL, "siblings")
}

/// The three two-sentence examples used by `demo`, gold clusters only.
pub fn conjoined_pairs() -> Vec<Document> {
    load(CONJOINED_PAIRS_JSONL)
}

/// "David , whose children are called Tom and Ann , laughed ."
pub fn relative_clause() -> Document {
    by_id(CONJUNCTION_CASES_JSONL, "relative-clause")
}

/// "Tom and Mary and David are here ."
pub fn sequential() -> Document {
    by_id(CONJUNCTION_CASES_JSONL, "sequential")
}

/// "Tom , Mary were there . Tom - Mary left ."
pub fn punctuation() -> Document {
    by_id(CONJUNCTION_CASES_JSONL, "punctuation")
}
