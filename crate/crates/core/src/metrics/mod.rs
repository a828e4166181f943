//! MUC, B-cubed and CEAF-phi4 coreference scores and their CoNLL average.
//!
//! Mentions match by equality of their ids only (exact span match when ids
//! are spans). Each metric first produces [`Counts`], the numerators and
//! denominators of recall and precision. Corpus scores add counts over
//! documents before dividing, as the reference CoNLL scorer does.

mod assignment;

use std::collections::BTreeMap;

use serde::Serialize;

pub use assignment::max_weight_assignment;

use crate::clustering::ClusterPartition;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScoreTriple {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ScoreTriple {
    pub fn new(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        ScoreTriple {
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorefScore {
    pub muc: ScoreTriple,
    pub b3: ScoreTriple,
    pub ceaf_phi4: ScoreTriple,
    pub avg_f1: f64,
}

impl CorefScore {
    pub fn from_triples(muc: ScoreTriple, b3: ScoreTriple, ceaf_phi4: ScoreTriple) -> Self {
        CorefScore {
            muc,
            b3,
            ceaf_phi4,
            avg_f1: (muc.f1 + b3.f1 + ceaf_phi4.f1) / 3.0,
        }
    }
}

/// Recall and precision fractions before division.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Counts {
    pub recall_num: f64,
    pub recall_den: f64,
    pub precision_num: f64,
    pub precision_den: f64,
}

impl Counts {
    pub fn triple(&self) -> ScoreTriple {
        let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
        ScoreTriple::new(
            ratio(self.precision_num, self.precision_den),
            ratio(self.recall_num, self.recall_den),
        )
    }

    pub fn add(&mut self, other: &Counts) {
        self.recall_num += other.recall_num;
        self.recall_den += other.recall_den;
        self.precision_num += other.precision_num;
        self.precision_den += other.precision_den;
    }

    fn from_halves((recall_num, recall_den): (f64, f64), (precision_num, precision_den): (f64, f64)) -> Self {
        Counts {
            recall_num,
            recall_den,
            precision_num,
            precision_den,
        }
    }
}

/// Cluster index of every mention.
fn index<M: Ord>(p: &ClusterPartition<M>) -> BTreeMap<&M, usize> {
    p.clusters()
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.iter().map(move |m| (m, ci)))
        .collect()
}

/// For every cluster of `gold`, the sizes of its overlaps with `other`'s
/// clusters, plus the number of its mentions `other` lacks.
fn overlaps<M: Ord>(gold: &ClusterPartition<M>, other: &ClusterPartition<M>) -> Vec<(BTreeMap<usize, usize>, usize)> {
    let other_index = index(other);
    gold.clusters()
        .iter()
        .map(|cluster| {
            let mut shared: BTreeMap<usize, usize> = BTreeMap::new();
            let mut missing = 0;
            for m in cluster {
                match other_index.get(m) {
                    Some(&ci) => *shared.entry(ci).or_default() += 1,
                    None => missing += 1,
                }
            }
            (shared, missing)
        })
        .collect()
}

fn muc_half<M: Ord>(gold: &ClusterPartition<M>, other: &ClusterPartition<M>) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for (cluster, (shared, missing)) in gold.clusters().iter().zip(overlaps(gold, other)) {
        let blocks = shared.len() + missing;
        num += (cluster.len() - blocks) as f64;
        den += (cluster.len() - 1) as f64;
    }
    (num, den)
}

fn b3_half<M: Ord>(gold: &ClusterPartition<M>, other: &ClusterPartition<M>) -> (f64, f64) {
    let mut num = 0.0;
    for (cluster, (shared, _)) in gold.clusters().iter().zip(overlaps(gold, other)) {
        let size = cluster.len() as f64;
        num += shared.values().map(|&k| (k * k) as f64).sum::<f64>() / size;
    }
    (num, gold.mention_count() as f64)
}

pub fn muc_counts<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> Counts {
    Counts::from_halves(muc_half(key, response), muc_half(response, key))
}

pub fn b_cubed_counts<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> Counts {
    Counts::from_halves(b3_half(key, response), b3_half(response, key))
}

pub fn ceaf_phi4_counts<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> Counts {
    let ncols = response.len();
    let similarity: Vec<Vec<f64>> = key
        .clusters()
        .iter()
        .zip(overlaps(key, response))
        .map(|(k, (shared, _))| {
            let mut row = vec![0.0; ncols];
            for (ci, common) in shared {
                let r = response.clusters()[ci].len();
                row[ci] = 2.0 * common as f64 / (k.len() + r) as f64;
            }
            row
        })
        .collect();
    let (_, total) = max_weight_assignment(&similarity);
    Counts {
        recall_num: total,
        recall_den: key.len() as f64,
        precision_num: total,
        precision_den: response.len() as f64,
    }
}

pub fn muc<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> ScoreTriple {
    muc_counts(key, response).triple()
}

pub fn b_cubed<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> ScoreTriple {
    b_cubed_counts(key, response).triple()
}

pub fn ceaf_phi4<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> ScoreTriple {
    ceaf_phi4_counts(key, response).triple()
}

pub fn conll_average<M: Ord>(key: &ClusterPartition<M>, response: &ClusterPartition<M>) -> CorefScore {
    CorefScore::from_triples(
        muc(key, response),
        b_cubed(key, response),
        ceaf_phi4(key, response),
    )
}

/// Accumulates counts over documents.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusScorer {
    pub muc: Counts,
    pub b3: Counts,
    pub ceaf_phi4: Counts,
}

impl CorpusScorer {
    pub fn add_document<M: Ord>(&mut self, key: &ClusterPartition<M>, response: &ClusterPartition<M>) {
        self.muc.add(&muc_counts(key, response));
        self.b3.add(&b_cubed_counts(key, response));
        self.ceaf_phi4.add(&ceaf_phi4_counts(key, response));
    }

    pub fn merge(&mut self, other: &CorpusScorer) {
        self.muc.add(&other.muc);
        self.b3.add(&other.b3);
        self.ceaf_phi4.add(&other.ceaf_phi4);
    }

    pub fn score(&self) -> CorefScore {
        CorefScore::from_triples(self.muc.triple(), self.b3.triple(), self.ceaf_phi4.triple())
    }
}
