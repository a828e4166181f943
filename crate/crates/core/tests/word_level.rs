mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use wlcoref_core::span_extract::{oracle_boundaries, select_span};
use wlcoref_core::{build_wl, fixtures, reconstruct_spans, corpus_stats, HeadFinder, MentionSpan, Rule};

fn sorted(mut clusters: Vec<Vec<MentionSpan>>) -> Vec<Vec<MentionSpan>> {
    for c in &mut clusters {
        c.sort();
    }
    clusters.sort();
    clusters
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lossless_documents_reconstruct_exactly(seed in any::<u64>(), caw in any::<bool>()) {
        let rule = if caw { Rule::Caw } else { Rule::Baseline };
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::collision_free_document(&mut rng, rule);
        let (wl, report) = build_wl(&doc, &HeadFinder::default(), rule);
        prop_assert!(report.is_lossless());
        let words: Vec<Vec<usize>> = wl.word_clusters.iter().map(|c| c.words.clone()).collect();
        let spans = reconstruct_spans(&wl, &words).unwrap();
        let gold: Vec<Vec<MentionSpan>> = doc.clusters.iter().map(|c| c.spans.clone()).collect();
        prop_assert_eq!(sorted(spans), sorted(gold));
    }

    #[test]
    fn oracle_extraction_recovers_gold_spans(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::collision_free_document(&mut rng, Rule::Caw);
        let (wl, _) = build_wl(&doc, &HeadFinder::default(), Rule::Caw);
        for (&word, &span) in &wl.word_to_span {
            prop_assert_eq!(select_span(&oracle_boundaries(&wl, word).unwrap()).unwrap(), span);
        }
    }

    #[test]
    fn cluster_count_drops_only_through_collisions(seed in any::<u64>(), caw in any::<bool>()) {
        let rule = if caw { Rule::Caw } else { Rule::Baseline };
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::random_parsed_document(&mut rng);
        let (wl, report) = build_wl(&doc, &HeadFinder::default(), rule);
        prop_assert!(wl.word_clusters.len() <= doc.clusters.len());
        if report.collisions.is_empty() {
            prop_assert_eq!(wl.word_clusters.len(), doc.clusters.len());
        }
        // every gold head-word is claimed by exactly one cluster
        let heads: BTreeSet<usize> = doc
            .mentions()
            .map(|(_, s)| HeadFinder::default().assign(&doc, s, rule).head_index)
            .collect();
        prop_assert_eq!(wl.word_to_span.keys().copied().collect::<BTreeSet<_>>(), heads);
        let mut owned: Vec<usize> = wl.word_clusters.iter().flat_map(|c| c.words.clone()).collect();
        let total = owned.len();
        owned.sort();
        owned.dedup();
        prop_assert_eq!(owned.len(), total);
        for (&w, span) in &wl.word_to_span {
            prop_assert!(span.contains(w));
        }
    }

    #[test]
    fn reports_count_every_span(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::random_parsed_document(&mut rng);
        let (_, report) = build_wl(&doc, &HeadFinder::default(), Rule::Caw);
        prop_assert_eq!(report.total_span_count, doc.span_count());
        prop_assert!(report.conjoined_span_count <= report.total_span_count);
        prop_assert!(report.sequential_count <= report.conjoined_span_count);
    }
}

#[test]
fn conjoined_pairs_ratio() {
    let docs = fixtures::conjoined_pairs();
    let report = corpus_stats(&docs, &HeadFinder::default(), Rule::Caw);
    assert_eq!((report.conjoined_span_count, report.total_span_count), (3, 8));
    assert_eq!(report.conjoined_ratio_display(), "37.50%");
    // the ratio does not depend on the rule used to build the data
    let base = corpus_stats(&docs, &HeadFinder::default(), Rule::Baseline);
    assert_eq!(base.conjoined_ratio(), report.conjoined_ratio());
    assert!(report.collisions.is_empty());
}

#[test]
fn unknown_word_is_reported() {
    let (wl, _) = build_wl(&fixtures::siblings(), &HeadFinder::default(), Rule::Caw);
    assert!(reconstruct_spans(&wl, &[vec![0, 4]]).is_err());
}
