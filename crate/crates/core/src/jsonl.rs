//! The jsonlines document format: one JSON object per line with parallel
//! per-token arrays and clusters as lists of `[start, end)` pairs.
//!
//! ```json
//! {"doc_id":"d","part":0,"words":["Tom"],"pos":["NNP"],"sent_id":[0],"head":[null],"clusters":[]}
//! ```
//!
//! Optional fields: `deprel` (per-token labels, kept but unused),
//! `cluster_ids` (written only when ids differ from list positions) and
//! `conll_extra` (opaque CoNLL columns).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::document::{Cluster, Document, MentionSpan, Token};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    doc_id: String,
    part: u32,
    words: Vec<String>,
    pos: Vec<String>,
    sent_id: Vec<usize>,
    head: Vec<Option<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deprel: Option<Vec<Option<String>>>,
    clusters: Vec<Vec<MentionSpan>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cluster_ids: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conll_extra: Option<Vec<Vec<String>>>,
}

impl RawDocument {
    fn into_document(self) -> Result<Document> {
        let name = format!("{} part {}", self.doc_id, self.part);
        let n = self.words.len();
        let check = |field: &str, len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(Error::validation(
                    name.clone(),
                    format!("{} has {} entries but words has {}", field, len, n),
                ))
            }
        };
        check("pos", self.pos.len())?;
        check("sent_id", self.sent_id.len())?;
        check("head", self.head.len())?;
        if let Some(deprel) = &self.deprel {
            check("deprel", deprel.len())?;
        }
        if let Some(extra) = &self.conll_extra {
            check("conll_extra", extra.len())?;
        }
        let ids: Vec<u64> = match self.cluster_ids {
            Some(ids) if ids.len() != self.clusters.len() => {
                return Err(Error::validation(
                    name,
                    format!(
                        "cluster_ids has {} entries but clusters has {}",
                        ids.len(),
                        self.clusters.len()
                    ),
                ))
            }
            Some(ids) => ids,
            None => (0..self.clusters.len() as u64).collect(),
        };

        let mut deprel = self.deprel.map(|d| d.into_iter());
        let mut extra = self.conll_extra.map(|e| e.into_iter());
        let tokens = self
            .words
            .into_iter()
            .zip(self.pos)
            .zip(self.sent_id.into_iter().zip(self.head))
            .enumerate()
            .map(|(index, ((word, pos), (sent_id, head)))| Token {
                index,
                word,
                pos,
                sent_id,
                head,
                deprel: deprel.as_mut().and_then(|d| d.next()).flatten(),
                extra: extra.as_mut().and_then(|e| e.next()).unwrap_or_default(),
            })
            .collect();
        let clusters = ids
            .into_iter()
            .zip(self.clusters)
            .map(|(id, spans)| Cluster::new(id, spans))
            .collect();
        let doc = Document {
            doc_id: self.doc_id,
            part: self.part,
            tokens,
            clusters,
        };
        doc.validate()?;
        Ok(doc)
    }

    fn from_document(doc: &Document) -> Self {
        let ids: Vec<u64> = doc.clusters.iter().map(|c| c.id).collect();
        let positional = ids.iter().enumerate().all(|(i, &id)| id == i as u64);
        let has_deprel = doc.tokens.iter().any(|t| t.deprel.is_some());
        let has_extra = doc.tokens.iter().any(|t| !t.extra.is_empty());
        RawDocument {
            doc_id: doc.doc_id.clone(),
            part: doc.part,
            words: doc.tokens.iter().map(|t| t.word.clone()).collect(),
            pos: doc.tokens.iter().map(|t| t.pos.clone()).collect(),
            sent_id: doc.tokens.iter().map(|t| t.sent_id).collect(),
            head: doc.tokens.iter().map(|t| t.head).collect(),
            deprel: has_deprel.then(|| doc.tokens.iter().map(|t| t.deprel.clone()).collect()),
            clusters: doc.clusters.iter().map(|c| c.spans.clone()).collect(),
            cluster_ids: (!positional).then_some(ids),
            conll_extra: has_extra.then(|| doc.tokens.iter().map(|t| t.extra.clone()).collect()),
        }
    }
}

/// Decodes a single document from an already-parsed JSON value. Unknown
/// fields (such as those added by the `headwords` or `build-wl` commands)
/// are ignored.
pub fn document_from_value(value: Value) -> Result<Document> {
    let raw: RawDocument = serde_json::from_value(value)
        .map_err(|e| Error::validation("<unknown>", e.to_string()))?;
    raw.into_document()
}

/// Encodes a document as a JSON object with a stable field order.
pub fn document_to_value(doc: &Document) -> Value {
    serde_json::to_value(RawDocument::from_document(doc)).expect("document serializes")
}

pub fn parse_jsonlines(text: &str) -> Result<Vec<Document>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let raw: RawDocument =
                serde_json::from_str(l).map_err(|e| Error::parse(i + 1, e.to_string()))?;
            raw.into_document()
        })
        .collect()
}

pub fn emit_jsonlines(docs: &[Document]) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(
            &serde_json::to_string(&RawDocument::from_document(doc)).expect("document serializes"),
        );
        out.push('\n');
    }
    out
}
