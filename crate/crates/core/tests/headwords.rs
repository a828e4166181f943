mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::oracle;
use wlcoref_core::headword::HeadSource;
use wlcoref_core::{baseline_headword, build_wl, fixtures, HeadFinder, MentionSpan, Rule};

fn all_spans(n: usize) -> impl Iterator<Item = MentionSpan> {
    (0..n).flat_map(move |s| (s + 1..=n).map(move |e| MentionSpan::new(s, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rules_agree_with_reference(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::random_parsed_document(&mut rng);
        let finder = HeadFinder::default();
        for span in all_spans(doc.n()) {
            let base = baseline_headword(&doc, span);
            let caw = finder.caw_headword(&doc, span);
            prop_assert!(span.contains(base.head_index));
            prop_assert!(span.contains(caw.head_index));
            prop_assert_eq!(base.head_index, oracle::baseline_head(&doc, span));
            prop_assert_eq!(caw.head_index, oracle::caw_head(&doc, span));
        }
    }

    #[test]
    fn rules_differ_only_on_conjoined_spans(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::random_parsed_document(&mut rng);
        let finder = HeadFinder::default();
        for span in all_spans(doc.n()) {
            let conj = finder.analyze_conjunction(&doc, span);
            let caw = finder.caw_headword(&doc, span);
            if !conj.is_conjoined {
                prop_assert_eq!(caw.head_index, baseline_headword(&doc, span).head_index);
                prop_assert_eq!(caw.rule, HeadSource::CawFallbackBaseline);
            } else {
                prop_assert_eq!(caw.rule, HeadSource::CawConjunction);
                prop_assert!(finder.is_conjunction(&doc, caw.head_index));
            }
            prop_assert!(!conj.is_sequential || conj.is_conjoined);
            prop_assert!(!(conj.is_punctuation_coordination && conj.is_conjoined));
        }
    }

    #[test]
    fn assignment_is_deterministic(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::random_parsed_document(&mut rng);
        let finder = HeadFinder::default();
        for span in all_spans(doc.n()) {
            for rule in [Rule::Baseline, Rule::Caw] {
                prop_assert_eq!(finder.assign(&doc, span, rule), finder.assign(&doc, span, rule));
            }
        }
    }

    #[test]
    fn conjoined_pattern_heads(seed in any::<u64>(), with_y in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (doc, [x, whole, y]) = common::conjoined_pattern(&mut rng, with_y);
        let finder = HeadFinder::default();
        let heads = |rule: Rule| -> BTreeSet<usize> {
            [x, whole, y].iter().map(|&s| finder.assign(&doc, s, rule).head_index).collect()
        };
        prop_assert!(heads(Rule::Baseline).len() <= 2);
        prop_assert_eq!(heads(Rule::Caw).len(), 3);

        let (_, base) = build_wl(&doc, &finder, Rule::Baseline);
        let (_, caw) = build_wl(&doc, &finder, Rule::Caw);
        prop_assert_eq!(base.collisions.len(), 1);
        prop_assert_eq!(caw.collisions.len(), 0);
    }
}

#[test]
fn relative_clause_is_not_coordination() {
    let doc = fixtures::relative_clause();
    let span = MentionSpan::new(0, 9);
    let finder = HeadFinder::default();
    assert_eq!(
        finder.caw_headword(&doc, span).head_index,
        baseline_headword(&doc, span).head_index
    );
    assert_eq!(doc.tokens[baseline_headword(&doc, span).head_index].word, "David");
}

#[test]
fn custom_conjunction_tags() {
    let mut doc = fixtures::siblings();
    doc.tokens[1].pos = "CONJ".into();
    let span = MentionSpan::new(0, 3);
    assert_eq!(HeadFinder::default().caw_headword(&doc, span).head_index, 0);
    assert_eq!(HeadFinder::new(["CONJ"]).caw_headword(&doc, span).head_index, 1);
}
