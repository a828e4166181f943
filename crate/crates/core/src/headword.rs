//! Head-word selection for mention spans.
//!
//! The baseline rule picks the single token of the span whose dependency
//! head lies outside the span, falling back to the right-most token when
//! there is no such token or more than one.
//!
//! The conjunction-aware rule first looks for coordinating conjunctions
//! inside the span. A conjunction whose head-link chain reaches the baseline
//! head in fewer than two steps, without leaving the span, becomes the head.
//! This gives `Tom and Mary` the head `and`, so it no longer shares a head
//! with the nested mention `Tom`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::document::{Document, MentionSpan};

/// Which selection rule to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Baseline,
    Caw,
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" | "wl" => Ok(Rule::Baseline),
            "caw" => Ok(Rule::Caw),
            _ => Err(format!("unknown head-word rule {:?} (expected baseline or caw)", s)),
        }
    }
}

/// The rule that produced a particular assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeadSource {
    Baseline,
    CawConjunction,
    /// Conjunction-aware rule found no qualifying conjunction and used the
    /// baseline result.
    CawFallbackBaseline,
}

/// Why the baseline rule fell back to the right-most token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FallbackReason {
    NoExternalDependent,
    MultipleExternalDependents,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadwordAssignment {
    pub span: MentionSpan,
    pub head_index: usize,
    pub rule: HeadSource,
    pub fallback_reason: Option<FallbackReason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjunctionReport {
    pub span: MentionSpan,
    /// Coordinating conjunctions inside the span, left to right.
    pub cc_positions: Vec<usize>,
    /// Head-link steps from each conjunction to the span's baseline head;
    /// `None` when the chain leaves the span first.
    pub depths: Vec<Option<usize>>,
    pub is_conjoined: bool,
    /// Two or more qualifying conjunctions.
    pub is_sequential: bool,
    /// Comma or hyphen coordination suspected. Reported only.
    pub is_punctuation_coordination: bool,
}

impl ConjunctionReport {
    /// Qualifying conjunction with the smallest depth, left-most on ties.
    pub fn best_conjunction(&self) -> Option<usize> {
        self.cc_positions
            .iter()
            .zip(&self.depths)
            .filter_map(|(&pos, &depth)| depth.filter(|&d| d < MAX_CC_DEPTH).map(|d| (d, pos)))
            .min()
            .map(|(_, pos)| pos)
    }
}

/// A conjunction qualifies when its depth is strictly below this.
pub const MAX_CC_DEPTH: usize = 2;

/// Head-word selection with configurable conjunction and punctuation sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadFinder {
    cc_tags: BTreeSet<String>,
    punctuation: BTreeSet<String>,
}

impl Default for HeadFinder {
    fn default() -> Self {
        HeadFinder::new(["CC"])
    }
}

impl HeadFinder {
    pub fn new<I, S>(cc_tags: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        HeadFinder {
            cc_tags: cc_tags.into_iter().map(Into::into).collect(),
            punctuation: [",", "-", "--"].into_iter().map(String::from).collect(),
        }
    }

    pub fn cc_tags(&self) -> impl Iterator<Item = &str> {
        self.cc_tags.iter().map(String::as_str)
    }

    pub fn is_conjunction(&self, doc: &Document, index: usize) -> bool {
        self.cc_tags.contains(&doc.tokens[index].pos)
    }

    fn is_coordinating_punctuation(&self, doc: &Document, index: usize) -> bool {
        self.punctuation.contains(&doc.tokens[index].word)
    }

    pub fn assign(&self, doc: &Document, span: MentionSpan, rule: Rule) -> HeadwordAssignment {
        match rule {
            Rule::Baseline => baseline_headword(doc, span),
            Rule::Caw => self.caw_headword(doc, span),
        }
    }

    pub fn analyze_conjunction(&self, doc: &Document, span: MentionSpan) -> ConjunctionReport {
        let head = baseline_headword(doc, span).head_index;
        let cc_positions: Vec<usize> = span
            .indices()
            .filter(|&i| self.is_conjunction(doc, i))
            .collect();
        let depths: Vec<Option<usize>> = cc_positions
            .iter()
            .map(|&cc| depth_within_span(doc, span, cc, head))
            .collect();
        let qualifying = depths
            .iter()
            .filter(|d| d.is_some_and(|d| d < MAX_CC_DEPTH))
            .count();
        let is_punctuation_coordination = qualifying == 0
            && span.indices().any(|i| {
                i > span.start
                    && i + 1 < span.end
                    && doc.head(i) == Some(head)
                    && self.is_coordinating_punctuation(doc, i)
            });
        ConjunctionReport {
            span,
            cc_positions,
            depths,
            is_conjoined: qualifying > 0,
            is_sequential: qualifying >= 2,
            is_punctuation_coordination,
        }
    }

    pub fn caw_headword(&self, doc: &Document, span: MentionSpan) -> HeadwordAssignment {
        let report = self.analyze_conjunction(doc, span);
        match report.best_conjunction() {
            Some(cc) => HeadwordAssignment {
                span,
                head_index: cc,
                rule: HeadSource::CawConjunction,
                fallback_reason: None,
            },
            None => HeadwordAssignment {
                rule: HeadSource::CawFallbackBaseline,
                ..baseline_headword(doc, span)
            },
        }
    }
}

/// Baseline rule: the unique token whose head is outside the span (or a
/// root), else the right-most token.
pub fn baseline_headword(doc: &Document, span: MentionSpan) -> HeadwordAssignment {
    let mut external = span
        .indices()
        .filter(|&i| doc.head(i).is_none_or(|h| !span.contains(h)));
    let (head_index, fallback_reason) = match (external.next(), external.next()) {
        (Some(only), None) => (only, None),
        (None, _) => (span.end - 1, Some(FallbackReason::NoExternalDependent)),
        (Some(_), Some(_)) => (span.end - 1, Some(FallbackReason::MultipleExternalDependents)),
    };
    HeadwordAssignment {
        span,
        head_index,
        rule: HeadSource::Baseline,
        fallback_reason,
    }
}

/// Steps from `from` up to `target` following head links inside `span`.
fn depth_within_span(doc: &Document, span: MentionSpan, from: usize, target: usize) -> Option<usize> {
    let mut cur = from;
    for steps in 0..=span.width() {
        if cur == target {
            return Some(steps);
        }
        match doc.head(cur) {
            Some(h) if span.contains(h) => cur = h,
            _ => return None,
        }
    }
    None
}
