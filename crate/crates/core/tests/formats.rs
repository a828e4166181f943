mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use wlcoref_core::clustering::wire::{emit_score_matrices, parse_score_matrices, ScoreRecord};
use wlcoref_core::span_extract::{emit_boundaries, parse_boundaries, oracle_boundaries, BoundaryRecord};
use wlcoref_core::{build_wl, emit_conll, emit_jsonlines, parse_conll, parse_jsonlines, ColumnConfig, HeadFinder, Rule};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn conll_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let docs = common::random_conll_corpus(&mut rng);
        let config = ColumnConfig::default();
        let text = emit_conll(&docs, &config).unwrap();
        let parsed = parse_conll(&text, &config).unwrap();
        prop_assert_eq!(&parsed, &docs);
        prop_assert_eq!(emit_conll(&parsed, &config).unwrap(), text);
    }

    #[test]
    fn jsonl_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let docs: Vec<_> = (0..3).map(|_| common::random_parsed_document(&mut rng)).collect();
        let text = emit_jsonlines(&docs);
        let parsed = parse_jsonlines(&text).unwrap();
        prop_assert_eq!(&parsed, &docs);
        prop_assert_eq!(emit_jsonlines(&parsed), text);
    }

    #[test]
    fn conll_through_jsonl(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let docs = common::random_conll_corpus(&mut rng);
        let config = ColumnConfig::default();
        let via = parse_jsonlines(&emit_jsonlines(&docs)).unwrap();
        prop_assert_eq!(emit_conll(&via, &config).unwrap(), emit_conll(&docs, &config).unwrap());
    }

    #[test]
    fn score_matrix_wire_round_trip(seed in any::<u64>(), n in 1usize..20) {
        let mut rng = StdRng::seed_from_u64(seed);
        let records = vec![ScoreRecord {
            doc_id: "d".into(),
            part: 3,
            matrix: common::random_scores(&mut rng, n),
        }];
        let text = emit_score_matrices(&records);
        let parsed = parse_score_matrices(&text).unwrap();
        prop_assert_eq!(&parsed, &records);
    }

    #[test]
    fn boundary_wire_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let doc = common::collision_free_document(&mut rng, Rule::Caw);
        let (wl, _) = build_wl(&doc, &HeadFinder::default(), Rule::Caw);
        let records: Vec<BoundaryRecord> = wl
            .word_to_span
            .keys()
            .map(|&w| BoundaryRecord {
                doc_id: doc.doc_id.clone(),
                part: doc.part,
                scores: oracle_boundaries(&wl, w).unwrap(),
            })
            .collect();
        let parsed = parse_boundaries(&emit_boundaries(&records)).unwrap();
        prop_assert_eq!(parsed, records);
    }
}

#[test]
fn bundled_fixtures_survive_conll() {
    let config = ColumnConfig::default();
    for docs in [
        wlcoref_core::fixtures::conjoined_pairs(),
        vec![wlcoref_core::fixtures::siblings()],
    ] {
        let parsed = parse_conll(&emit_conll(&docs, &config).unwrap(), &config).unwrap();
        for (a, b) in parsed.iter().zip(&docs) {
            assert_eq!(a.clusters, b.clusters);
            assert_eq!(a.sentence_ranges(), b.sentence_ranges());
        }
    }
}

#[test]
fn malformed_inputs_name_the_line() {
    let config = ColumnConfig::default();
    let unmatched = "#begin document (d); part 000\nd 0 0 Tom NNP 1)\n#end document\n";
    let err = parse_conll(unmatched, &config).unwrap_err().to_string();
    assert!(err.contains("line 2"), "{}", err);

    let bad_json = "{\"doc_id\": \"d\"}\nnot json\n";
    assert!(parse_jsonlines(bad_json).is_err());
}
