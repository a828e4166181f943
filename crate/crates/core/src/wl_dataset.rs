//! Decomposition of span-level gold clusters into word-level clusters plus a
//! word-to-span map, with a report of head-word collisions.
//!
//! A collision is one token heading spans from two or more gold clusters.
//! Word-level links cannot represent both clusters at that token, so the
//! narrowest span keeps the word (ties: left-most, then lower cluster id)
//! and the other clusters lose it. A cluster that loses a word this way and
//! is left with fewer than two words is dropped. Spans of one cluster that
//! share a head collapse to a single word.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::document::{Document, MentionSpan};
use crate::error::{Error, Result};
use crate::headword::{HeadFinder, Rule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCluster {
    /// Id of the gold cluster this word cluster came from.
    pub cluster_id: u64,
    /// Head-word indices, ascending.
    pub words: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordLevelDoc {
    pub doc_id: String,
    pub part: u32,
    pub rule_used: Rule,
    pub word_clusters: Vec<WordCluster>,
    pub word_to_span: BTreeMap<usize, MentionSpan>,
    /// Sentence ranges of the source document.
    pub sentences: Vec<MentionSpan>,
}

impl WordLevelDoc {
    pub fn span_of(&self, word: usize) -> Result<MentionSpan> {
        self.word_to_span
            .get(&word)
            .copied()
            .ok_or(Error::UnknownWord(word))
    }

    pub fn sentence_of(&self, word: usize) -> Option<MentionSpan> {
        self.sentences.iter().copied().find(|s| s.contains(word))
    }

    /// Word clusters with at least two words, as plain index lists.
    pub fn word_partition(&self) -> Vec<Vec<usize>> {
        self.word_clusters
            .iter()
            .filter(|c| c.words.len() >= 2)
            .map(|c| c.words.clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub doc: String,
    pub token: usize,
    /// Every (cluster id, span) whose head is `token`.
    pub claims: Vec<(u64, MentionSpan)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConflictReport {
    pub collisions: Vec<Collision>,
    pub conjoined_span_count: usize,
    pub total_span_count: usize,
    pub sequential_count: usize,
    pub punctuation_coordination_count: usize,
    /// Same-cluster spans that collapsed onto an already used head-word.
    pub same_cluster_merges: usize,
}

impl ConflictReport {
    /// Fraction of spans that are conjoined mentions; `None` when there are
    /// no spans at all.
    pub fn conjoined_ratio(&self) -> Option<f64> {
        (self.total_span_count > 0)
            .then(|| self.conjoined_span_count as f64 / self.total_span_count as f64)
    }

    /// `12.34%` or `n/a`.
    pub fn conjoined_ratio_display(&self) -> String {
        match self.conjoined_ratio() {
            Some(r) => format!("{:.2}%", 100.0 * r),
            None => "n/a".to_owned(),
        }
    }

    /// True when gold spans survive the word-level round trip unchanged.
    pub fn is_lossless(&self) -> bool {
        self.collisions.is_empty() && self.same_cluster_merges == 0
    }

    pub fn merge(&mut self, other: ConflictReport) {
        self.collisions.extend(other.collisions);
        self.conjoined_span_count += other.conjoined_span_count;
        self.total_span_count += other.total_span_count;
        self.sequential_count += other.sequential_count;
        self.punctuation_coordination_count += other.punctuation_coordination_count;
        self.same_cluster_merges += other.same_cluster_merges;
    }
}

/// Maps every gold span through `rule` and builds the word-level document.
pub fn build_wl(doc: &Document, finder: &HeadFinder, rule: Rule) -> (WordLevelDoc, ConflictReport) {
    let mut report = ConflictReport::default();
    let mut claims: BTreeMap<usize, Vec<(u64, MentionSpan)>> = BTreeMap::new();

    for (cluster_id, span) in doc.mentions() {
        let conj = finder.analyze_conjunction(doc, span);
        report.total_span_count += 1;
        report.conjoined_span_count += conj.is_conjoined as usize;
        report.sequential_count += conj.is_sequential as usize;
        report.punctuation_coordination_count += conj.is_punctuation_coordination as usize;

        let head = finder.assign(doc, span, rule).head_index;
        claims.entry(head).or_default().push((cluster_id, span));
    }

    let mut word_to_span = BTreeMap::new();
    let mut owner: BTreeMap<usize, u64> = BTreeMap::new();
    let mut lost: BTreeSet<u64> = BTreeSet::new();
    for (&head, spans) in &claims {
        let &(winner, span) = spans
            .iter()
            .min_by_key(|(id, s)| (s.width(), s.start, *id))
            .expect("claims are nonempty");
        word_to_span.insert(head, span);
        owner.insert(head, winner);

        let clusters: BTreeSet<u64> = spans.iter().map(|(id, _)| *id).collect();
        report.same_cluster_merges += spans.len() - clusters.len();
        if clusters.len() > 1 {
            lost.extend(clusters.iter().filter(|&&id| id != winner));
            report.collisions.push(Collision {
                doc: doc.name(),
                token: head,
                claims: spans.clone(),
            });
        }
    }

    let word_clusters = doc
        .clusters
        .iter()
        .filter_map(|cluster| {
            let words: Vec<usize> = owner
                .iter()
                .filter(|(_, &id)| id == cluster.id)
                .map(|(&w, _)| w)
                .collect();
            let keep = if lost.contains(&cluster.id) {
                words.len() >= 2
            } else {
                !words.is_empty()
            };
            keep.then_some(WordCluster {
                cluster_id: cluster.id,
                words,
            })
        })
        .collect();

    let wl = WordLevelDoc {
        doc_id: doc.doc_id.clone(),
        part: doc.part,
        rule_used: rule,
        word_clusters,
        word_to_span,
        sentences: doc.sentence_ranges(),
    };
    (wl, report)
}

/// Sums per-document reports over a corpus.
pub fn corpus_stats<'a, I>(docs: I, finder: &HeadFinder, rule: Rule) -> ConflictReport
where
    I: IntoIterator<Item = &'a Document>,
{
    docs.into_iter()
        .map(|d| build_wl(d, finder, rule).1)
        .fold(ConflictReport::default(), |mut acc, r| {
            acc.merge(r);
            acc
        })
}

/// Expands word clusters to span clusters through the gold word-to-span map.
pub fn reconstruct_spans(wl: &WordLevelDoc, clusters: &[Vec<usize>]) -> Result<Vec<Vec<MentionSpan>>> {
    clusters
        .iter()
        .map(|words| words.iter().map(|&w| wl.span_of(w)).collect())
        .collect()
}
