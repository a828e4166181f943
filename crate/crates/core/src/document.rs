//! Documents, tokens and mention spans shared by every other module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-open token interval `[start, end)` inside one document part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct MentionSpan {
    pub start: usize,
    pub end: usize,
}

impl MentionSpan {
    pub fn new(start: usize, end: usize) -> Self {
        MentionSpan { start, end }
    }

    pub fn width(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index < self.end
    }

    pub fn is_valid_in(&self, n: usize) -> bool {
        self.start < self.end && self.end <= n
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

impl From<[usize; 2]> for MentionSpan {
    fn from([start, end]: [usize; 2]) -> Self {
        MentionSpan { start, end }
    }
}

impl From<MentionSpan> for [usize; 2] {
    fn from(span: MentionSpan) -> Self {
        [span.start, span.end]
    }
}

impl fmt::Display for MentionSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    /// Document-wide position, 0-based.
    pub index: usize,
    pub word: String,
    pub pos: String,
    pub sent_id: usize,
    /// Document-wide index of the dependency head; `None` for roots.
    pub head: Option<usize>,
    /// Dependency relation label. Preserved but never consulted.
    pub deprel: Option<String>,
    /// CoNLL columns the toolkit does not interpret (speaker, parse bit, ...).
    pub extra: Vec<String>,
}

impl Token {
    pub fn new(index: usize, word: &str, pos: &str, sent_id: usize, head: Option<usize>) -> Self {
        Token {
            index,
            word: word.to_owned(),
            pos: pos.to_owned(),
            sent_id,
            head,
            deprel: None,
            extra: Vec::new(),
        }
    }
}

/// A gold (or predicted) coreference cluster. `id` is the CoNLL cluster
/// number; for jsonlines input it defaults to the cluster's list position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub id: u64,
    pub spans: Vec<MentionSpan>,
}

impl Cluster {
    pub fn new(id: u64, spans: Vec<MentionSpan>) -> Self {
        Cluster { id, spans }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub part: u32,
    pub tokens: Vec<Token>,
    pub clusters: Vec<Cluster>,
}

impl Document {
    /// Word count.
    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    /// `doc_id` and part as printed in diagnostics.
    pub fn name(&self) -> String {
        format!("{} part {}", self.doc_id, self.part)
    }

    pub fn head(&self, index: usize) -> Option<usize> {
        self.tokens[index].head
    }

    /// Half-open token range of every sentence, indexed by position of first
    /// appearance (not by `sent_id` value).
    pub fn sentence_ranges(&self) -> Vec<MentionSpan> {
        let mut ranges: Vec<MentionSpan> = Vec::new();
        for (i, token) in self.tokens.iter().enumerate() {
            match ranges.last_mut() {
                Some(last) if i > 0 && self.tokens[i - 1].sent_id == token.sent_id => {
                    last.end = i + 1
                }
                _ => ranges.push(MentionSpan::new(i, i + 1)),
            }
        }
        ranges
    }

    /// The sentence containing `index`.
    pub fn sentence_of(&self, index: usize) -> MentionSpan {
        let sent = self.tokens[index].sent_id;
        let mut start = index;
        while start > 0 && self.tokens[start - 1].sent_id == sent {
            start -= 1;
        }
        let mut end = index + 1;
        while end < self.tokens.len() && self.tokens[end].sent_id == sent {
            end += 1;
        }
        MentionSpan::new(start, end)
    }

    pub fn words(&self, span: MentionSpan) -> String {
        self.tokens[span.indices()]
            .iter()
            .map(|t| t.word.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Every span of every cluster, tagged with its cluster id.
    pub fn mentions(&self) -> impl Iterator<Item = (u64, MentionSpan)> + '_ {
        self.clusters
            .iter()
            .flat_map(|c| c.spans.iter().map(move |s| (c.id, *s)))
    }

    pub fn span_count(&self) -> usize {
        self.clusters.iter().map(|c| c.spans.len()).sum()
    }

    /// Clusters with a single span. OntoNotes has none; they are legal here.
    pub fn singleton_clusters(&self) -> impl Iterator<Item = &Cluster> {
        self.clusters.iter().filter(|c| c.spans.len() == 1)
    }

    /// Clusters sorted by id, spans sorted within each cluster. This is the
    /// order `parse_conll` produces.
    pub fn canonicalize(&mut self) {
        for cluster in &mut self.clusters {
            cluster.spans.sort();
        }
        self.clusters.sort_by_key(|c| c.id);
    }

    /// Checks every token, span and cluster invariant.
    pub fn validate(&self) -> Result<()> {
        let name = self.name();
        let n = self.n();
        if n == 0 {
            return Err(Error::validation(name, "document has no tokens"));
        }
        for (i, token) in self.tokens.iter().enumerate() {
            if token.index != i {
                return Err(Error::validation(
                    name,
                    format!("token at position {} carries index {}", i, token.index),
                ));
            }
            if i > 0 && token.sent_id < self.tokens[i - 1].sent_id {
                return Err(Error::validation(
                    name,
                    format!("sentence id decreases at token {}", i),
                ));
            }
            match token.head {
                Some(h) if h == i => {
                    return Err(Error::validation(name, format!("token {} heads itself", i)))
                }
                Some(h) if h >= n => {
                    return Err(Error::validation(
                        name,
                        format!("token {} has head {} outside the document (n = {})", i, h, n),
                    ))
                }
                _ => {}
            }
        }
        if let Some(cycle) = self.find_head_cycle() {
            let cycle = cycle
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" -> ");
            return Err(Error::validation(name, format!("dependency cycle {}", cycle)));
        }

        let mut ids = Vec::with_capacity(self.clusters.len());
        for cluster in &self.clusters {
            if cluster.spans.is_empty() {
                return Err(Error::validation(
                    name,
                    format!("cluster {} has no spans", cluster.id),
                ));
            }
            let mut seen = cluster.spans.clone();
            seen.sort();
            for pair in seen.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::validation(
                        name,
                        format!("cluster {} lists span {} twice", cluster.id, pair[0]),
                    ));
                }
            }
            for span in &cluster.spans {
                if !span.is_valid_in(n) {
                    return Err(Error::validation(
                        name,
                        format!(
                            "span {} of cluster {} is out of bounds (n = {})",
                            span, cluster.id, n
                        ),
                    ));
                }
            }
            ids.push(cluster.id);
        }
        ids.sort_unstable();
        if let Some(pair) = ids.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::validation(
                name,
                format!("cluster id {} used twice", pair[0]),
            ));
        }
        Ok(())
    }

    /// Returns the token indices of a head-link cycle, if any, starting and
    /// ending at the same token.
    fn find_head_cycle(&self) -> Option<Vec<usize>> {
        const UNSEEN: u8 = 0;
        const ACTIVE: u8 = 1;
        const DONE: u8 = 2;
        let n = self.n();
        let mut state = vec![UNSEEN; n];
        for start in 0..n {
            if state[start] != UNSEEN {
                continue;
            }
            let mut path = Vec::new();
            let mut cur = Some(start);
            while let Some(i) = cur {
                if i >= n {
                    break;
                }
                match state[i] {
                    DONE => break,
                    ACTIVE => {
                        let from = path.iter().position(|&p| p == i).unwrap();
                        let mut cycle = path[from..].to_vec();
                        cycle.push(i);
                        return Some(cycle);
                    }
                    _ => {
                        state[i] = ACTIVE;
                        path.push(i);
                        cur = self.tokens[i].head;
                    }
                }
            }
            for i in path {
                state[i] = DONE;
            }
        }
        None
    }
}
