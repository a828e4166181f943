//! Random generators shared by the property tests and the acceptance suite.
#![allow(dead_code)]

pub mod oracle;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use wlcoref_core::clustering::{ClusterPartition, ScoreKind, ScoreMatrix};
use wlcoref_core::{Cluster, Document, HeadFinder, MentionSpan, Rule, Token};

const WORDS: &[&str] = &["Tom", "Mary", "and", "or", "the", "dog", ",", "-", "saw", "it", "they", "."];
const TAGS: &[&str] = &["NNP", "NN", "CC", "DT", "PRP", ",", "HYPH", "VBD", "."];

fn sentence_ids(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut sent = 0;
    (0..n)
        .map(|i| {
            if i > 0 && rng.gen_bool(0.15) {
                sent += 1;
            }
            sent
        })
        .collect()
}

/// Acyclic heads: tokens are visited in a random order and each may attach
/// to a token visited earlier.
pub fn random_heads(rng: &mut StdRng, n: usize) -> Vec<Option<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut heads = vec![None; n];
    for (pos, &tok) in order.iter().enumerate() {
        if pos > 0 && rng.gen_bool(0.85) {
            heads[tok] = Some(order[rng.gen_range(0..pos)]);
        }
    }
    heads
}

fn random_span(rng: &mut StdRng, n: usize) -> MentionSpan {
    let start = rng.gen_range(0..n);
    let end = rng.gen_range(start + 1..=n.min(start + 5));
    MentionSpan::new(start, end)
}

/// Spans for one cluster that are pairwise nested or disjoint, so bracket
/// notation can encode them.
fn laminar_spans(rng: &mut StdRng, n: usize, count: usize) -> Vec<MentionSpan> {
    let mut spans: Vec<MentionSpan> = Vec::new();
    for _ in 0..count * 3 {
        if spans.len() == count {
            break;
        }
        let s = random_span(rng, n);
        let compatible = spans.iter().all(|o| {
            *o != s
                && (s.end <= o.start
                    || o.end <= s.start
                    || (o.start <= s.start && s.end <= o.end)
                    || (s.start <= o.start && o.end <= s.end))
        });
        if compatible {
            spans.push(s);
        }
    }
    spans
}

/// A document suitable for CoNLL round trips: no dependency heads, a fixed
/// number of opaque columns, nested bracket clusters with sparse ids.
pub fn random_conll_document(rng: &mut StdRng, doc_id: String, part: u32) -> Document {
    let n = rng.gen_range(1..=30);
    let sent = sentence_ids(rng, n);
    let extra_cols = rng.gen_range(0..3);
    let tokens = (0..n)
        .map(|i| {
            let mut t = Token::new(
                i,
                WORDS.choose(rng).unwrap(),
                TAGS.choose(rng).unwrap(),
                sent[i],
                None,
            );
            t.extra = (0..extra_cols).map(|c| format!("x{}_{}", c, rng.gen_range(0..9))).collect();
            t
        })
        .collect();
    let mut clusters = Vec::new();
    let mut id = 0u64;
    for _ in 0..rng.gen_range(0..6) {
        id += rng.gen_range(1..4);
        let count = rng.gen_range(1..5);
        let spans = laminar_spans(rng, n, count);
        if !spans.is_empty() {
            clusters.push(Cluster::new(id, spans));
        }
    }
    let mut doc = Document {
        doc_id,
        part,
        tokens,
        clusters,
    };
    doc.canonicalize();
    doc.validate().expect("generated document is valid");
    doc
}

pub fn random_conll_corpus(rng: &mut StdRng) -> Vec<Document> {
    (0..rng.gen_range(1..4))
        .map(|i| {
            let part = rng.gen_range(0..3);
            random_conll_document(rng, format!("gen/doc_{}", i), part)
        })
        .collect()
}

/// A document with a random dependency forest, optional labels and random
/// (possibly crossing) clusters.
pub fn random_parsed_document(rng: &mut StdRng) -> Document {
    let n = rng.gen_range(1..=24);
    let sent = sentence_ids(rng, n);
    let heads = random_heads(rng, n);
    let labelled = rng.gen_bool(0.3);
    let tokens = (0..n)
        .map(|i| {
            let mut t = Token::new(
                i,
                WORDS.choose(rng).unwrap(),
                TAGS.choose(rng).unwrap(),
                sent[i],
                heads[i],
            );
            if labelled && rng.gen_bool(0.8) {
                t.deprel = Some(["nsubj", "cc", "conj", "det"].choose(rng).unwrap().to_string());
            }
            t
        })
        .collect();
    let clusters = (0..rng.gen_range(0..5))
        .map(|id| {
            let mut spans: Vec<MentionSpan> = (0..rng.gen_range(1..4)).map(|_| random_span(rng, n)).collect();
            spans.sort();
            spans.dedup();
            Cluster::new(id, spans)
        })
        .collect();
    let doc = Document {
        doc_id: format!("parsed_{}", rng.gen_range(0..1000)),
        part: 0,
        tokens,
        clusters,
    };
    doc.validate().expect("generated document is valid");
    doc
}

/// A parsed document whose gold spans all have distinct head-words under
/// `rule`, so the word-level decomposition loses nothing.
pub fn collision_free_document(rng: &mut StdRng, rule: Rule) -> Document {
    let finder = HeadFinder::default();
    let mut doc = random_parsed_document(rng);
    doc.clusters.clear();
    let n = doc.n();
    let mut used_heads = Vec::new();
    let mut clusters: Vec<Cluster> = Vec::new();
    for id in 0..rng.gen_range(0..5u64) {
        let mut spans = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            let s = random_span(rng, n);
            let head = finder.assign(&doc, s, rule).head_index;
            if !used_heads.contains(&head) {
                used_heads.push(head);
                spans.push(s);
            }
        }
        if !spans.is_empty() {
            clusters.push(Cluster::new(id, spans));
        }
    }
    doc.clusters = clusters;
    doc.validate().expect("generated document is valid");
    doc
}

/// "pre X cc Y verb post" with X, Y and "X cc Y" as mentions of three
/// clusters (Y optionally absent). Returns the document and the three
/// spans (X, X cc Y, Y).
pub fn conjoined_pattern(rng: &mut StdRng, with_y_mention: bool) -> (Document, [MentionSpan; 3]) {
    let pre = rng.gen_range(0..3);
    let x_len = rng.gen_range(1..4);
    let y_len = rng.gen_range(1..4);
    let post = rng.gen_range(0..3);
    let x = MentionSpan::new(pre, pre + x_len);
    let cc = x.end;
    let y = MentionSpan::new(cc + 1, cc + 1 + y_len);
    let verb = y.end;
    let n = verb + 1 + post + 3;
    let x_head = x.end - 1;
    let y_head = y.end - 1;

    let mut tokens = Vec::with_capacity(n);
    for i in 0..n {
        let (word, pos, head) = if i < x.start {
            ("so", "RB", Some(verb))
        } else if x.contains(i) {
            ("Tom", "NNP", if i == x_head { Some(verb) } else { Some(x_head) })
        } else if i == cc {
            ("and", "CC", Some(x_head))
        } else if y.contains(i) {
            ("Mary", "NNP", if i == y_head { Some(x_head) } else { Some(y_head) })
        } else if i == verb {
            ("met", "VBD", None)
        } else if i < n - 3 {
            ("today", "NN", Some(verb))
        } else {
            (["he", "they", "she"][i - (n - 3)], "PRP", Some(verb))
        };
        tokens.push(Token::new(i, word, pos, 0, head));
    }
    let whole = MentionSpan::new(x.start, y.end);
    let pron = |k: usize| MentionSpan::new(n - 3 + k, n - 2 + k);
    let mut clusters = vec![
        Cluster::new(0, vec![x, pron(0)]),
        Cluster::new(1, vec![whole, pron(1)]),
    ];
    if with_y_mention {
        clusters.push(Cluster::new(2, vec![y, pron(2)]));
    }
    let doc = Document {
        doc_id: "pattern".into(),
        part: 0,
        tokens,
        clusters,
    };
    doc.validate().expect("pattern is valid");
    (doc, [x, whole, y])
}

/// Random coarse scores over every earlier word for a random subset of words.
pub fn random_scores(rng: &mut StdRng, n: usize) -> ScoreMatrix {
    let mut entries = Vec::new();
    for i in 1..n {
        for j in 0..i {
            if rng.gen_bool(0.6) {
                // coarse grid so ties happen
                entries.push((i, j, rng.gen_range(-8..8) as f64 * 0.5));
            }
        }
    }
    ScoreMatrix::from_entries(n, ScoreKind::Coarse, entries).unwrap()
}

pub fn random_links(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    (0..rng.gen_range(0..=n))
        .filter_map(|_| {
            let i = rng.gen_range(0..n);
            (i > 0).then(|| (i, rng.gen_range(0..i)))
        })
        .collect()
}

/// A partition of a random subset of `0..universe` into at most
/// `max_clusters` clusters.
pub fn random_partition(rng: &mut StdRng, universe: usize, max_clusters: usize) -> ClusterPartition<usize> {
    let k = rng.gen_range(0..=max_clusters);
    if k == 0 {
        return ClusterPartition::empty();
    }
    let mut clusters = vec![Vec::new(); k];
    for m in 0..universe {
        if rng.gen_bool(0.75) {
            clusters[rng.gen_range(0..k)].push(m);
        }
    }
    clusters.retain(|c| !c.is_empty());
    ClusterPartition::new(clusters).unwrap()
}

/// Key/response pair over at most 12 mentions with at most 6 clusters each.
pub fn random_partition_pair(rng: &mut StdRng) -> (ClusterPartition<usize>, ClusterPartition<usize>) {
    let universe = rng.gen_range(1..=12);
    let key = random_partition(rng, universe, 6);
    let response = if rng.gen_bool(0.1) {
        key.clone()
    } else {
        random_partition(rng, universe, 6)
    };
    (key, response)
}
