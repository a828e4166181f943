//! Span reconstruction around a coreferent head-word from boundary scores.
//!
//! Selection looks at one head at a time and never at the predicted
//! clusters, so two mentions sharing a head cannot both be recovered.

use serde::{Deserialize, Serialize};

use crate::document::MentionSpan;
use crate::error::{Error, Result};
use crate::wl_dataset::WordLevelDoc;

/// Start and end scores for the spans around one head-word.
///
/// `start_scores[s - sent_start]` scores a span starting at `s` for
/// `s` in `sent_start..=head`; `end_scores[e - head - 1]` scores an
/// exclusive end `e` in `head + 1..=sent_end`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryScores {
    pub head: usize,
    pub sent_start: usize,
    pub sent_end: usize,
    pub start_scores: Vec<f64>,
    pub end_scores: Vec<f64>,
}

impl BoundaryScores {
    pub fn validate(&self) -> Result<()> {
        if !(self.sent_start <= self.head && self.head < self.sent_end) {
            return Err(Error::Argument(format!(
                "head {} outside its sentence [{}, {})",
                self.head, self.sent_start, self.sent_end
            )));
        }
        let starts = self.head - self.sent_start + 1;
        let ends = self.sent_end - self.head;
        if self.start_scores.len() != starts || self.end_scores.len() != ends {
            return Err(Error::Argument(format!(
                "head {}: expected {} start and {} end scores, got {} and {}",
                self.head,
                starts,
                ends,
                self.start_scores.len(),
                self.end_scores.len()
            )));
        }
        if self
            .start_scores
            .iter()
            .chain(&self.end_scores)
            .any(|s| !s.is_finite())
        {
            return Err(Error::Argument(format!(
                "head {}: boundary scores must be finite",
                self.head
            )));
        }
        Ok(())
    }
}

/// Best-scoring span containing the head. Scores add; among equal totals
/// the narrowest span wins (latest start, then earliest end).
pub fn select_span(b: &BoundaryScores) -> Result<MentionSpan> {
    b.validate()?;
    let mut best_start = None::<(usize, f64)>;
    for (offset, &score) in b.start_scores.iter().enumerate() {
        if best_start.is_none_or(|(_, best)| score >= best) {
            best_start = Some((b.sent_start + offset, score));
        }
    }
    let mut best_end = None::<(usize, f64)>;
    for (offset, &score) in b.end_scores.iter().enumerate() {
        if best_end.is_none_or(|(_, best)| score > best) {
            best_end = Some((b.head + 1 + offset, score));
        }
    }
    match (best_start, best_end) {
        (Some((s, _)), Some((e, _))) => Ok(MentionSpan::new(s, e)),
        _ => Err(Error::Argument(format!(
            "head {} has no candidate boundaries",
            b.head
        ))),
    }
}

/// One-hot boundary scores at the gold span of `head`. The window is the
/// head's sentence, widened to cover the gold span if it crosses a sentence
/// boundary.
pub fn oracle_boundaries(wl: &WordLevelDoc, head: usize) -> Result<BoundaryScores> {
    let gold = wl.span_of(head)?;
    let sentence = wl
        .sentence_of(head)
        .unwrap_or(MentionSpan::new(head, head + 1));
    let sent_start = sentence.start.min(gold.start);
    let sent_end = sentence.end.max(gold.end);
    Ok(BoundaryScores {
        head,
        sent_start,
        sent_end,
        start_scores: (sent_start..=head)
            .map(|s| if s == gold.start { 1.0 } else { 0.0 })
            .collect(),
        end_scores: (head + 1..=sent_end)
            .map(|e| if e == gold.end { 1.0 } else { 0.0 })
            .collect(),
    })
}

/// A boundary-score record as stored in jsonlines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub doc_id: String,
    pub part: u32,
    #[serde(flatten)]
    pub scores: BoundaryScores,
}

pub fn parse_boundaries(text: &str) -> Result<Vec<BoundaryRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let rec: BoundaryRecord =
                serde_json::from_str(l).map_err(|e| Error::parse(i + 1, e.to_string()))?;
            rec.scores
                .validate()
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
            Ok(rec)
        })
        .collect()
}

pub fn emit_boundaries(records: &[BoundaryRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec).expect("finite scores serialize"));
        out.push('\n');
    }
    out
}
