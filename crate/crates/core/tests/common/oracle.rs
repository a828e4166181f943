//! Slow reference implementations written straight from the definitions.

use wlcoref_core::clustering::{ClusterPartition, ScoreMatrix};
use wlcoref_core::{Document, MentionSpan};

fn cluster_of(p: &ClusterPartition<usize>, m: usize) -> Option<&Vec<usize>> {
    p.clusters().iter().find(|c| c.contains(&m))
}

fn intersection(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|m| b.contains(m)).count()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// MUC recall of `gold` against `other`: each gold cluster counts |K| minus
/// the number of pieces `other` cuts it into.
fn muc_side(gold: &ClusterPartition<usize>, other: &ClusterPartition<usize>) -> f64 {
    let mut num = 0usize;
    let mut den = 0usize;
    for k in gold.clusters() {
        let mut pieces: Vec<Option<&Vec<usize>>> = Vec::new();
        let mut unmatched = 0;
        for &m in k {
            match cluster_of(other, m) {
                Some(c) => {
                    if !pieces.contains(&Some(c)) {
                        pieces.push(Some(c));
                    }
                }
                None => unmatched += 1,
            }
        }
        num += k.len() - pieces.len() - unmatched;
        den += k.len() - 1;
    }
    ratio(num as f64, den as f64)
}

/// (precision, recall)
pub fn muc(key: &ClusterPartition<usize>, response: &ClusterPartition<usize>) -> (f64, f64) {
    (muc_side(response, key), muc_side(key, response))
}

fn b3_side(gold: &ClusterPartition<usize>, other: &ClusterPartition<usize>) -> f64 {
    let mut total = 0.0;
    let mut count = 0;
    for k in gold.clusters() {
        for &m in k {
            count += 1;
            if let Some(r) = cluster_of(other, m) {
                total += intersection(k, r) as f64 / k.len() as f64;
            }
        }
    }
    ratio(total, count as f64)
}

pub fn b_cubed(key: &ClusterPartition<usize>, response: &ClusterPartition<usize>) -> (f64, f64) {
    (b3_side(response, key), b3_side(key, response))
}

fn phi4(k: &[usize], r: &[usize]) -> f64 {
    2.0 * intersection(k, r) as f64 / (k.len() + r.len()) as f64
}

fn best_alignment(key: &[Vec<usize>], response: &[Vec<usize>], used: &mut Vec<bool>) -> f64 {
    let Some((first, rest)) = key.split_first() else {
        return 0.0;
    };
    let mut best = best_alignment(rest, response, used);
    for j in 0..response.len() {
        if !used[j] {
            used[j] = true;
            best = best.max(phi4(first, &response[j]) + best_alignment(rest, response, used));
            used[j] = false;
        }
    }
    best
}

/// CEAF-phi4 by trying every one-to-one alignment.
pub fn ceaf_phi4(key: &ClusterPartition<usize>, response: &ClusterPartition<usize>) -> (f64, f64) {
    let total = best_alignment(key.clusters(), response.clusters(), &mut vec![false; response.len()]);
    (ratio(total, response.len() as f64), ratio(total, key.len() as f64))
}

/// Connected components of the link graph by repeated reachability
/// sweeps; components of size one are dropped.
pub fn transitive_closure(n: usize, links: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in links {
        reach[a][b] = true;
        reach[b][a] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&j| reach[i][j]).collect();
        for &j in &comp {
            seen[j] = true;
        }
        if comp.len() > 1 {
            out.push(comp);
        }
    }
    out
}

/// Best antecedent per word: highest score, smaller j on ties, kept only if
/// it beats the dummy.
pub fn best_links(scores: &ScoreMatrix, dummy: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..scores.n() {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..i {
            if let Some(s) = scores.get(i, j) {
                if best.is_none_or(|(_, b)| s > b) {
                    best = Some((j, s));
                }
            }
        }
        if let Some((j, s)) = best {
            if s > dummy {
                out.push((i, j));
            }
        }
    }
    out
}

fn head_of(doc: &Document, t: usize) -> Option<usize> {
    doc.tokens[t].head
}

/// Tokens of `span` whose head is outside the span or absent; the head-word
/// is the single such token, or the right-most token otherwise.
pub fn baseline_head(doc: &Document, span: MentionSpan) -> usize {
    let external: Vec<usize> = (span.start..span.end)
        .filter(|&t| head_of(doc, t).is_none_or(|h| h < span.start || h >= span.end))
        .collect();
    if external.len() == 1 {
        external[0]
    } else {
        span.end - 1
    }
}

/// Number of head links from `t` up to `target` without leaving `span`.
pub fn steps_to(doc: &Document, span: MentionSpan, mut t: usize, target: usize) -> Option<usize> {
    let mut steps = 0;
    while t != target {
        t = head_of(doc, t)?;
        if t < span.start || t >= span.end {
            return None;
        }
        steps += 1;
        if steps > span.width() {
            return None;
        }
    }
    Some(steps)
}

/// Conjunction-aware head: the shallowest CC-tagged token within depth 1 of
/// the baseline head (left-most on ties), or the baseline head.
pub fn caw_head(doc: &Document, span: MentionSpan) -> usize {
    let base = baseline_head(doc, span);
    let mut best: Option<(usize, usize)> = None;
    for t in span.start..span.end {
        if doc.tokens[t].pos != "CC" {
            continue;
        }
        if let Some(d) = steps_to(doc, span, t, base) {
            if d < 2 && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, t));
            }
        }
    }
    best.map_or(base, |(_, t)| t)
}
