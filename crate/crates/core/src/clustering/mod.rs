//! Word-level inference from antecedent score matrices.
//!
//! Coarse scores cover every earlier word; [`prune_topk`] keeps the best `k`
//! per word, a fine scorer rescores those, and [`combine`] adds the two.
//! [`infer_links`] picks each word's best antecedent and keeps it only if it
//! beats the dummy (no-antecedent) score. [`links_to_partition`] closes the
//! links transitively.

mod union_find;
pub mod wire;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use union_find::UnionFind;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Coarse,
    Fine,
    Combined,
}

/// Sparse antecedent scores: row `i` holds `(j, score)` pairs with `j < i`,
/// sorted by `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreMatrix {
    n: usize,
    kind: ScoreKind,
    k: Option<usize>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl ScoreMatrix {
    pub fn new(n: usize, kind: ScoreKind, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::Argument(format!(
                "score matrix has {} rows for n = {}",
                rows.len(),
                n
            )));
        }
        let mut rows = rows;
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|&(j, _)| j);
            for (idx, &(j, score)) in row.iter().enumerate() {
                if j >= i {
                    return Err(Error::Argument(format!(
                        "antecedent {} of word {} is not earlier",
                        j, i
                    )));
                }
                if !score.is_finite() {
                    return Err(Error::Argument(format!("score ({}, {}) is not finite", i, j)));
                }
                if idx > 0 && row[idx - 1].0 == j {
                    return Err(Error::Argument(format!(
                        "antecedent {} listed twice for word {}",
                        j, i
                    )));
                }
            }
        }
        Ok(ScoreMatrix {
            n,
            kind,
            k: None,
            rows,
        })
    }

    /// Builds a matrix from `(i, j, score)` triples.
    pub fn from_entries<I>(n: usize, kind: ScoreKind, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut rows = vec![Vec::new(); n];
        for (i, j, score) in entries {
            let row = rows.get_mut(i).ok_or_else(|| {
                Error::Argument(format!("word {} outside the matrix (n = {})", i, n))
            })?;
            row.push((j, score));
        }
        ScoreMatrix::new(n, kind, rows)
    }

    /// Records a top-k bound, checking every row respects it.
    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("k must be at least 1".into()));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() > k) {
            return Err(Error::Argument(format!(
                "row {} holds {} antecedents, more than k = {}",
                i,
                self.rows[i].len(),
                k
            )));
        }
        self.k = Some(k);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ScoreKind {
        self.kind
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[(usize, f64)])> {
        self.rows.iter().enumerate().map(|(i, r)| (i, r.as_slice()))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let row = self.rows.get(i)?;
        row.binary_search_by_key(&j, |&(j, _)| j)
            .ok()
            .map(|idx| row[idx].1)
    }

    /// Applies `f` to every score.
    pub fn map_scores(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&(j, s)| (j, f(i, j, s))).collect())
            .collect();
        let mut m = ScoreMatrix::new(self.n, self.kind, rows)?;
        m.k = self.k;
        Ok(m)
    }
}

/// Orders by score descending, then antecedent ascending.
fn by_preference(a: &(usize, f64), b: &(usize, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

/// Keeps the `k` best antecedents of every word (ties: earlier word first).
pub fn prune_topk(coarse: &ScoreMatrix, k: usize) -> Result<ScoreMatrix> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    if coarse.kind != ScoreKind::Coarse {
        return Err(Error::Argument(format!(
            "top-k pruning expects coarse scores, got {:?}",
            coarse.kind
        )));
    }
    let rows = coarse
        .rows
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.sort_by(by_preference);
            row.truncate(k);
            row.sort_by_key(|&(j, _)| j);
            row
        })
        .collect();
    Ok(ScoreMatrix {
        n: coarse.n,
        kind: ScoreKind::Coarse,
        k: Some(k),
        rows,
    })
}

/// Sums coarse and fine scores over the fine matrix's support.
pub fn combine(coarse: &ScoreMatrix, fine: &ScoreMatrix) -> Result<ScoreMatrix> {
    if coarse.n != fine.n {
        return Err(Error::Argument(format!(
            "coarse matrix has n = {} but fine has n = {}",
            coarse.n, fine.n
        )));
    }
    let mut rows = Vec::with_capacity(fine.n);
    for (i, row) in fine.rows() {
        let summed = row
            .iter()
            .map(|&(j, f)| {
                coarse
                    .get(i, j)
                    .map(|c| (j, c + f))
                    .ok_or(Error::Support { i, j })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(summed);
    }
    Ok(ScoreMatrix {
        n: fine.n,
        kind: ScoreKind::Combined,
        k: fine.k,
        rows,
    })
}

/// Best antecedent of every word whose best score beats `dummy`, as
/// `(word, antecedent)` pairs in word order.
pub fn infer_links(scores: &ScoreMatrix, dummy: f64) -> Vec<(usize, usize)> {
    scores
        .rows()
        .filter_map(|(i, row)| {
            row.iter()
                .min_by(|a, b| by_preference(a, b))
                .filter(|&&(_, s)| s > dummy)
                .map(|&(j, _)| (i, j))
        })
        .collect()
}

/// A set of disjoint, nonempty clusters, stored with each cluster sorted and
/// clusters ordered by their first item.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClusterPartition<T> {
    clusters: Vec<Vec<T>>,
}

impl<T: Ord + Clone> ClusterPartition<T> {
    pub fn new(clusters: Vec<Vec<T>>) -> Result<Self> {
        let mut clusters = clusters;
        let mut seen = BTreeMap::new();
        for (ci, cluster) in clusters.iter_mut().enumerate() {
            if cluster.is_empty() {
                return Err(Error::Argument(format!("cluster {} is empty", ci)));
            }
            cluster.sort();
            cluster.dedup();
            for item in cluster.iter() {
                if let Some(prev) = seen.insert(item.clone(), ci) {
                    return Err(Error::Argument(format!(
                        "clusters {} and {} share an item",
                        prev, ci
                    )));
                }
            }
        }
        clusters.sort();
        Ok(ClusterPartition { clusters })
    }
}

impl<T> ClusterPartition<T> {
    pub fn empty() -> Self {
        ClusterPartition {
            clusters: Vec::new(),
        }
    }

    pub fn clusters(&self) -> &[Vec<T>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn mention_count(&self) -> usize {
        self.clusters.iter().map(Vec::len).sum()
    }

    pub fn mentions(&self) -> impl Iterator<Item = &T> {
        self.clusters.iter().flatten()
    }

    /// Partition with clusters of a single item removed.
    pub fn without_singletons(&self) -> Self
    where
        T: Clone,
    {
        ClusterPartition {
            clusters: self
                .clusters
                .iter()
                .filter(|c| c.len() > 1)
                .cloned()
                .collect(),
        }
    }
}

impl<T> IntoIterator for ClusterPartition<T> {
    type Item = Vec<T>;
    type IntoIter = std::vec::IntoIter<Vec<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.clusters.into_iter()
    }
}

/// Connected components of the link graph over `n` words. Unlinked words
/// are left out.
pub fn links_to_partition(n: usize, links: &[(usize, usize)]) -> Result<ClusterPartition<usize>> {
    let mut uf = UnionFind::new(n);
    for &(i, j) in links {
        if i >= n || j >= i {
            return Err(Error::Argument(format!(
                "malformed link ({}, {}) for n = {}",
                i, j, n
            )));
        }
        uf.union(i, j);
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        if uf.size_of(x) > 1 {
            let root = uf.find(x);
            components.entry(root).or_default().push(x);
        }
    }
    ClusterPartition::new(components.into_values().collect())
}
