//! End-to-end walk-through of three hand-built examples under both
//! head-word rules.
//!
//! Each example has a gold document, the other mentions a reader would see
//! in it (not coreferent, so absent from the gold clusters), and hand-set
//! word-level scores for each rule that mirror the qualitative behaviour of
//! trained models. Span extraction uses boundary scores built from every
//! mention the predicted head-word heads under the active rule; when a word
//! heads several mentions the extractor cannot tell them apart and returns
//! the narrowest one.

use std::fmt::Write as _;

use crate::clustering::{infer_links, links_to_partition, ClusterPartition, ScoreKind, ScoreMatrix};
use crate::document::{Document, MentionSpan};
use crate::error::Result;
use crate::fixtures;
use crate::headword::{HeadFinder, Rule};
use crate::span_extract::{select_span, BoundaryScores};
use crate::wl_dataset::build_wl;

/// Score of the dummy antecedent.
pub const DUMMY: f64 = 0.0;

pub struct DemoExample {
    pub doc: Document,
    /// Mentions outside the gold clusters.
    pub other_mentions: Vec<MentionSpan>,
    pub baseline_scores: ScoreMatrix,
    pub caw_scores: ScoreMatrix,
}

impl DemoExample {
    pub fn scores(&self, rule: Rule) -> &ScoreMatrix {
        match rule {
            Rule::Baseline => &self.baseline_scores,
            Rule::Caw => &self.caw_scores,
        }
    }

    fn inventory(&self) -> impl Iterator<Item = MentionSpan> + '_ {
        self.doc
            .mentions()
            .map(|(_, s)| s)
            .chain(self.other_mentions.iter().copied())
    }
}

fn matrix(n: usize, entries: &[(usize, usize, f64)]) -> ScoreMatrix {
    ScoreMatrix::from_entries(n, ScoreKind::Combined, entries.iter().copied())
        .expect("demo scores are well formed")
}

fn spans(pairs: &[(usize, usize)]) -> Vec<MentionSpan> {
    pairs.iter().map(|&(s, e)| MentionSpan::new(s, e)).collect()
}

pub fn examples() -> Vec<DemoExample> {
    let mut docs = fixtures::conjoined_pairs().into_iter();
    let mut next = || docs.next().expect("three bundled examples");

    // Tom and Anna are talking . They are talking .
    let tom_anna = DemoExample {
        doc: next(),
        other_mentions: spans(&[(0, 1), (2, 3)]),
        baseline_scores: matrix(10, &[(2, 0, -2.0), (6, 0, 5.0), (6, 2, -1.0)]),
        caw_scores: matrix(10, &[(2, 0, -2.0), (6, 0, -0.5), (6, 1, 5.0), (6, 2, -1.0)]),
    };
    // My friend David and my dad Bert are talking . They are talking .
    let friend_dad = DemoExample {
        doc: next(),
        other_mentions: spans(&[(0, 3), (4, 7)]),
        baseline_scores: matrix(
            14,
            &[(4, 0, 5.0), (6, 2, -1.0), (10, 0, -1.0), (10, 2, -0.5), (10, 6, -0.5)],
        ),
        caw_scores: matrix(
            14,
            &[(4, 0, 5.0), (6, 2, -1.0), (10, 2, -0.5), (10, 3, 5.0), (10, 6, -0.5)],
        ),
    };
    // The Guardian and The Chronicle had a secret meeting . Both newspapers are on thin ice .
    let newspapers = DemoExample {
        doc: next(),
        other_mentions: spans(&[(0, 2), (3, 5), (6, 9)]),
        baseline_scores: matrix(17, &[(4, 1, -1.0), (11, 1, -0.5), (11, 4, -0.5)]),
        caw_scores: matrix(17, &[(4, 1, -1.0), (11, 1, -0.5), (11, 2, 5.0), (11, 4, -0.5)]),
    };
    vec![tom_anna, friend_dad, newspapers]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Word,
    Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoRow {
    pub example: usize,
    pub rule: Rule,
    pub step: Step,
    /// Sentence text with predicted mentions bracketed and labelled by cluster.
    pub rendered: String,
    pub correct: bool,
}

/// Boundary scores marking the starts and ends of every inventory mention
/// that `head` heads under `rule`.
pub fn inventory_boundaries(
    example: &DemoExample,
    finder: &HeadFinder,
    rule: Rule,
    head: usize,
) -> BoundaryScores {
    let doc = &example.doc;
    let sentence = doc.sentence_of(head);
    let mut candidates: Vec<MentionSpan> = example
        .inventory()
        .filter(|&s| finder.assign(doc, s, rule).head_index == head)
        .collect();
    if candidates.is_empty() {
        candidates.push(MentionSpan::new(head, head + 1));
    }
    BoundaryScores {
        head,
        sent_start: sentence.start,
        sent_end: sentence.end,
        start_scores: (sentence.start..=head)
            .map(|s| candidates.iter().any(|c| c.start == s) as u8 as f64)
            .collect(),
        end_scores: (head + 1..=sentence.end)
            .map(|e| candidates.iter().any(|c| c.end == e) as u8 as f64)
            .collect(),
    }
}

/// Runs one example under one rule and returns its word and span rows.
pub fn run_example(index: usize, example: &DemoExample, finder: &HeadFinder, rule: Rule) -> Result<[DemoRow; 2]> {
    let doc = &example.doc;
    let (wl, _) = build_wl(doc, finder, rule);
    let gold_words = ClusterPartition::new(wl.word_partition())?;
    let gold_spans = ClusterPartition::new(
        doc.clusters
            .iter()
            .filter(|c| c.spans.len() > 1)
            .map(|c| c.spans.clone())
            .collect(),
    )?;

    let links = infer_links(example.scores(rule), DUMMY);
    let words = links_to_partition(doc.n(), &links)?;
    let mut span_clusters = Vec::new();
    for cluster in words.clusters() {
        let mut out = Vec::new();
        for &w in cluster {
            let span = select_span(&inventory_boundaries(example, finder, rule, w))?;
            if !out.contains(&span) {
                out.push(span);
            }
        }
        span_clusters.push(out);
    }
    let predicted_spans = ClusterPartition::new(span_clusters)?;

    let word_marks: Vec<(MentionSpan, usize)> = words
        .clusters()
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.iter().map(move |&w| (MentionSpan::new(w, w + 1), ci)))
        .collect();
    let span_marks: Vec<(MentionSpan, usize)> = predicted_spans
        .clusters()
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.iter().map(move |&s| (s, ci)))
        .collect();

    Ok([
        DemoRow {
            example: index,
            rule,
            step: Step::Word,
            rendered: render(doc, &word_marks),
            correct: words == gold_words,
        },
        DemoRow {
            example: index,
            rule,
            step: Step::Span,
            rendered: render(doc, &span_marks),
            correct: predicted_spans == gold_spans,
        },
    ])
}

/// All twelve rows: for each example, baseline word/span then CAW word/span.
pub fn run_demo() -> Result<Vec<DemoRow>> {
    let finder = HeadFinder::default();
    let mut rows = Vec::new();
    for (i, example) in examples().iter().enumerate() {
        for rule in [Rule::Baseline, Rule::Caw] {
            rows.extend(run_example(i + 1, example, &finder, rule)?);
        }
    }
    Ok(rows)
}

fn label(cluster: usize) -> char {
    (b'a' + (cluster % 26) as u8) as char
}

/// Brackets each marked span and suffixes the closing bracket with its
/// cluster label.
pub fn render(doc: &Document, marks: &[(MentionSpan, usize)]) -> String {
    let mut out = Vec::with_capacity(doc.n());
    for (t, token) in doc.tokens.iter().enumerate() {
        let mut opening: Vec<&(MentionSpan, usize)> = marks.iter().filter(|(s, _)| s.start == t).collect();
        opening.sort_by_key(|(s, _)| std::cmp::Reverse(s.end));
        let mut closing: Vec<&(MentionSpan, usize)> = marks.iter().filter(|(s, _)| s.end == t + 1).collect();
        closing.sort_by_key(|(s, _)| std::cmp::Reverse(s.start));
        let mut word = "[".repeat(opening.len());
        word.push_str(&token.word);
        for (_, c) in closing {
            word.push(']');
            word.push(label(*c));
        }
        out.push(word);
    }
    out.join(" ")
}

pub fn format_rows(rows: &[DemoRow]) -> String {
    let mut out = String::new();
    let mut current = 0;
    for row in rows {
        if row.example != current {
            current = row.example;
            writeln!(out, "Example {}", current).unwrap();
        }
        let system = match row.rule {
            Rule::Baseline => "wl-coref",
            Rule::Caw => "caw-coref",
        };
        let step = match row.step {
            Step::Word => "word",
            Step::Span => "span",
        };
        let verdict = if row.correct { "Correct" } else { "Incorrect" };
        writeln!(out, "  {:<10} {:<5} {:<9}  {}", system, step, verdict, row.rendered).unwrap();
    }
    out
}
