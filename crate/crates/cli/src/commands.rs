use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use wlcoref_core::clustering::wire::parse_score_matrices;
use wlcoref_core::clustering::{combine, infer_links, links_to_partition, prune_topk};
use wlcoref_core::demo::{self, DemoRow, Step};
use wlcoref_core::metrics::{CorpusScorer, ScoreTriple};
use wlcoref_core::span_extract::{oracle_boundaries, parse_boundaries, select_span, BoundaryScores};
use wlcoref_core::{
    build_wl as build_word_level, span_partition, Cluster, ClusterPartition, ConflictReport, Document, Error,
    MentionSpan, Rule, ScoreKind, ScoreMatrix,
};

use crate::config::PipelineConfig;
use crate::io::{read_documents, read_text, render_documents, write_output, DocFormat};
use crate::{ColorChoice, DocsInput, OutputFormat};

type DocKey = (String, u32);

fn key_of(doc: &Document) -> DocKey {
    (doc.doc_id.clone(), doc.part)
}

fn load(config: &PipelineConfig, input: &DocsInput) -> Result<Vec<Document>> {
    read_documents(&input.input, input.from, &config.columns)
}

pub fn ingest(config: &PipelineConfig, input: &DocsInput, to: Option<DocFormat>, output: Option<&PathBuf>) -> Result<()> {
    let from = input.from.unwrap_or_else(|| DocFormat::from_path(&input.input));
    let docs = load(config, input)?;
    let to = to.unwrap_or(match from {
        DocFormat::Conll => DocFormat::Jsonl,
        DocFormat::Jsonl => DocFormat::Conll,
    });
    write_output(output, &render_documents(&docs, to, &config.columns)?)
}

pub fn headwords(config: &PipelineConfig, input: &DocsInput, format: OutputFormat, output: Option<&PathBuf>) -> Result<()> {
    let docs = load(config, input)?;
    let finder = config.finder();
    let blocks: Vec<String> = docs
        .par_iter()
        .map(|doc| {
            let mut out = String::new();
            for (cluster, span) in doc.mentions() {
                let a = finder.assign(doc, span, config.rule);
                let conj = finder.analyze_conjunction(doc, span);
                match format {
                    OutputFormat::Text => {
                        writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}\t{:?}\t{}",
                            doc.name(),
                            cluster,
                            span,
                            a.head_index,
                            doc.tokens[a.head_index].word,
                            a.rule,
                            doc.words(span)
                        )
                        .unwrap();
                    }
                    OutputFormat::Json => {
                        let record = json!({
                            "doc_id": doc.doc_id,
                            "part": doc.part,
                            "cluster": cluster,
                            "span": span,
                            "head": a.head_index,
                            "head_word": doc.tokens[a.head_index].word,
                            "source": a.rule,
                            "fallback_reason": a.fallback_reason,
                            "conjoined": conj.is_conjoined,
                        });
                        writeln!(out, "{}", record).unwrap();
                    }
                }
            }
            out
        })
        .collect();
    write_output(output, &blocks.concat())
}

pub fn build_wl(config: &PipelineConfig, input: &DocsInput, output: Option<&PathBuf>) -> Result<()> {
    let docs = load(config, input)?;
    let finder = config.finder();
    let built: Vec<_> = docs
        .par_iter()
        .map(|doc| build_word_level(doc, &finder, config.rule))
        .collect();
    let mut text = String::new();
    let mut total = ConflictReport::default();
    for (wl, report) in built {
        writeln!(text, "{}", serde_json::to_string(&wl)?).unwrap();
        total.merge(report);
    }
    write_output(output, &text)?;
    eprintln!(
        "{} documents, {} spans, {} collisions, {} same-cluster merges",
        docs.len(),
        total.total_span_count,
        total.collisions.len(),
        total.same_cluster_merges
    );
    Ok(())
}

fn corpus_report(config: &PipelineConfig, docs: &[Document], rule: Rule) -> ConflictReport {
    let finder = config.finder();
    docs.par_iter()
        .map(|doc| build_word_level(doc, &finder, rule).1)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(ConflictReport::default(), |mut acc, r| {
            acc.merge(r);
            acc
        })
}

pub fn analyze_conflicts(config: &PipelineConfig, input: &DocsInput, format: OutputFormat) -> Result<()> {
    let docs = load(config, input)?;
    let baseline = corpus_report(config, &docs, Rule::Baseline);
    let caw = corpus_report(config, &docs, Rule::Caw);
    let text = match format {
        OutputFormat::Json => {
            let value = json!({
                "documents": docs.len(),
                "conjoined_ratio": caw.conjoined_ratio(),
                "baseline": baseline,
                "caw": caw,
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        OutputFormat::Text => {
            let by_name: HashMap<String, &Document> = docs.iter().map(|d| (d.name(), d)).collect();
            let mut out = String::new();
            writeln!(out, "documents                 {}", docs.len()).unwrap();
            writeln!(out, "spans                     {}", caw.total_span_count).unwrap();
            writeln!(
                out,
                "conjoined spans           {} ({})",
                caw.conjoined_span_count,
                caw.conjoined_ratio_display()
            )
            .unwrap();
            writeln!(out, "sequential conjunctions   {}", caw.sequential_count).unwrap();
            writeln!(out, "punctuation coordination  {}", caw.punctuation_coordination_count).unwrap();
            for (name, report) in [("baseline", &baseline), ("caw", &caw)] {
                writeln!(out, "collisions ({})", name).unwrap();
                writeln!(out, "  count                   {}", report.collisions.len()).unwrap();
                for c in &report.collisions {
                    let doc = by_name[&c.doc];
                    let claims: Vec<String> = c
                        .claims
                        .iter()
                        .map(|(id, s)| format!("{}:{:?}", id, doc.words(*s)))
                        .collect();
                    writeln!(
                        out,
                        "  {} token {} {:?}: {}",
                        c.doc,
                        c.token,
                        doc.tokens[c.token].word,
                        claims.join(", ")
                    )
                    .unwrap();
                }
            }
            out
        }
    };
    write_output(None, &text)
}

pub enum SpanSource {
    Boundaries(PathBuf),
    Oracle,
}

#[derive(Default)]
struct DocScores {
    coarse: Option<ScoreMatrix>,
    fine: Option<ScoreMatrix>,
    combined: Option<ScoreMatrix>,
}

impl DocScores {
    fn resolve(self, top_k: Option<usize>) -> Result<Option<ScoreMatrix>> {
        let pruned = match (self.coarse, top_k) {
            (Some(c), Some(k)) => Some(prune_topk(&c, k)?),
            (c, _) => c,
        };
        Ok(match (pruned, self.fine, self.combined) {
            (None, None, None) => None,
            (None, None, Some(m)) => Some(m),
            (Some(c), None, None) => Some(c),
            (Some(c), Some(f), None) => Some(combine(&c, &f)?),
            (None, Some(_), _) => return Err(anyhow!("fine scores without coarse scores")),
            (Some(_), _, Some(_)) => return Err(anyhow!("both coarse and combined scores")),
        })
    }
}

fn load_scores(path: &Path, docs: &HashMap<DocKey, &Document>) -> Result<HashMap<DocKey, DocScores>> {
    let records = parse_score_matrices(&read_text(path)?).with_context(|| path.display().to_string())?;
    let mut out: HashMap<DocKey, DocScores> = HashMap::new();
    for r in records {
        let key = (r.doc_id.clone(), r.part);
        let doc = docs
            .get(&key)
            .ok_or_else(|| anyhow!("{}: scores for unknown document {} part {}", path.display(), r.doc_id, r.part))
            .map_err(|e| validation(&key, e))?;
        if r.matrix.n() != doc.n() {
            return Err(validation(
                &key,
                anyhow!("score matrix has n = {}, document has {} words", r.matrix.n(), doc.n()),
            ));
        }
        let entry = out.entry(key.clone()).or_default();
        let slot = match r.matrix.kind() {
            ScoreKind::Coarse => &mut entry.coarse,
            ScoreKind::Fine => &mut entry.fine,
            ScoreKind::Combined => &mut entry.combined,
        };
        if slot.replace(r.matrix).is_some() {
            return Err(validation(&key, anyhow!("duplicate score matrix of the same kind")));
        }
    }
    Ok(out)
}

fn validation(key: &DocKey, err: anyhow::Error) -> anyhow::Error {
    Error::Validation {
        doc: format!("{} part {}", key.0, key.1),
        message: err.to_string(),
    }
    .into()
}

type BoundaryIndex = HashMap<DocKey, BTreeMap<usize, BoundaryScores>>;

fn load_boundaries(path: &Path) -> Result<BoundaryIndex> {
    let records = parse_boundaries(&read_text(path)?).with_context(|| path.display().to_string())?;
    let mut out: BoundaryIndex = HashMap::new();
    for r in records {
        out.entry((r.doc_id, r.part)).or_default().insert(r.scores.head, r.scores);
    }
    Ok(out)
}

/// Turns predicted word clusters into span clusters. A span already taken
/// by an earlier cluster is dropped, and clusters left with fewer than two
/// spans are dropped.
fn span_clusters(words: &ClusterPartition<usize>, mut span_of: impl FnMut(usize) -> Result<MentionSpan>) -> Result<Vec<Cluster>> {
    let mut taken = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for cluster in words.clusters() {
        let mut spans = Vec::new();
        for &w in cluster {
            let span = span_of(w)?;
            if taken.insert(span) {
                spans.push(span);
            }
        }
        if spans.len() >= 2 {
            spans.sort();
            out.push(Cluster::new(out.len() as u64, spans));
        }
    }
    Ok(out)
}

pub fn cluster(
    config: &PipelineConfig,
    scores_path: &Path,
    docs_path: &Path,
    docs_format: Option<DocFormat>,
    spans: SpanSource,
    output: Option<&PathBuf>,
    to: DocFormat,
) -> Result<()> {
    let docs = read_documents(docs_path, docs_format, &config.columns)?;
    let by_key: HashMap<DocKey, &Document> = docs.iter().map(|d| (key_of(d), d)).collect();
    let mut scores = load_scores(scores_path, &by_key)?;
    let boundaries = match &spans {
        SpanSource::Boundaries(path) => Some(load_boundaries(path)?),
        SpanSource::Oracle => None,
    };
    let finder = config.finder();
    let empty = BTreeMap::new();

    let jobs: Vec<(&Document, Option<DocScores>)> = docs.iter().map(|d| (d, scores.remove(&key_of(d)))).collect();
    let responses: Vec<Document> = jobs
        .into_par_iter()
        .map(|(doc, doc_scores)| -> Result<Document> {
            let key = key_of(doc);
            let mut response = Document {
                clusters: Vec::new(),
                ..doc.clone()
            };
            let Some(matrix) = doc_scores
                .map(|s| s.resolve(config.top_k))
                .transpose()
                .map_err(|e| validation(&key, e))?
                .flatten()
            else {
                return Ok(response);
            };
            let links = infer_links(&matrix, config.dummy);
            let words = links_to_partition(doc.n(), &links)?;
            response.clusters = match &boundaries {
                Some(index) => {
                    let doc_bounds = index.get(&key).unwrap_or(&empty);
                    span_clusters(&words, |w| {
                        let b = doc_bounds.get(&w).ok_or(Error::MissingBoundaries(w))?;
                        Ok(select_span(b)?)
                    })
                }
                None => {
                    let (wl, _) = build_word_level(doc, &finder, config.rule);
                    span_clusters(&words, |w| match oracle_boundaries(&wl, w) {
                        Ok(b) => Ok(select_span(&b)?),
                        Err(Error::UnknownWord(_)) => Ok(MentionSpan::new(w, w + 1)),
                        Err(e) => Err(e.into()),
                    })
                }
            }
            .map_err(|e| match e.downcast::<Error>() {
                Ok(Error::MissingBoundaries(w)) => validation(&key, anyhow!("head word {} has no boundary scores", w)),
                Ok(other) => other.into(),
                Err(e) => e,
            })?;
            Ok(response)
        })
        .collect::<Result<_>>()?;
    write_output(output, &render_documents(&responses, to, &config.columns)?)
}

fn percent(x: f64) -> f64 {
    (x * 10000.0).round() / 100.0
}

fn triple_json(t: ScoreTriple) -> serde_json::Value {
    json!({"recall": percent(t.recall), "precision": percent(t.precision), "f1": percent(t.f1)})
}

pub fn score(config: &PipelineConfig, key_path: &Path, response_path: &Path, format: OutputFormat) -> Result<()> {
    let key = read_documents(key_path, None, &config.columns)?;
    let response = read_documents(response_path, None, &config.columns)?;
    let mut responses: HashMap<DocKey, &Document> = response.iter().map(|d| (key_of(d), d)).collect();
    let pairs: Vec<(&Document, Option<&Document>)> = key.iter().map(|k| (k, responses.remove(&key_of(k)))).collect();
    let mut ignored: Vec<&DocKey> = responses.keys().collect();
    ignored.sort();
    for (id, part) in ignored {
        eprintln!("warning: response document {} part {} has no key and is ignored", id, part);
    }

    let per_doc: Vec<CorpusScorer> = pairs
        .into_par_iter()
        .map(|(k, r)| -> Result<CorpusScorer> {
            let key_part = span_partition(k)?;
            let resp_part = match r {
                Some(r) => span_partition(r)?,
                None => ClusterPartition::empty(),
            };
            let mut scorer = CorpusScorer::default();
            scorer.add_document(&key_part, &resp_part);
            Ok(scorer)
        })
        .collect::<Result<_>>()?;
    let mut total = CorpusScorer::default();
    for s in &per_doc {
        total.merge(s);
    }
    let result = total.score();

    let text = match format {
        OutputFormat::Json => {
            let value = json!({
                "documents": key.len(),
                "muc": triple_json(result.muc),
                "b3": triple_json(result.b3),
                "ceaf_phi4": triple_json(result.ceaf_phi4),
                "conll_f1": percent(result.avg_f1),
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            writeln!(out, "documents {}", key.len()).unwrap();
            writeln!(out, "{:<10} {:>9} {:>9} {:>9}", "metric", "recall", "precision", "f1").unwrap();
            for (name, t) in [("MUC", result.muc), ("B3", result.b3), ("CEAF_phi4", result.ceaf_phi4)] {
                writeln!(
                    out,
                    "{:<10} {:>9.2} {:>9.2} {:>9.2}",
                    name,
                    t.recall * 100.0,
                    t.precision * 100.0,
                    t.f1 * 100.0
                )
                .unwrap();
            }
            writeln!(out, "{:<10} {:>29.2}", "CoNLL F1", result.avg_f1 * 100.0).unwrap();
            out
        }
    };
    write_output(None, &text)
}

const PALETTE: [&str; 6] = ["31", "34", "32", "35", "36", "33"];

/// Colors each bracketed span by its cluster label.
fn colorize(rendered: &str) -> String {
    let chars: Vec<char> = rendered.chars().collect();
    let mut label_of_open = vec![None; chars.len()];
    let mut stack = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '[' => stack.push(i),
            ']' => {
                if let (Some(open), Some(&label)) = (stack.pop(), chars.get(i + 1)) {
                    label_of_open[open] = Some(label);
                }
            }
            _ => {}
        }
    }
    let color = |label: char| PALETTE[(label as usize - 'a' as usize) % PALETTE.len()];
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '[' => {
                let code = label_of_open[i].map_or("0", color);
                write!(out, "\x1b[{}m[\x1b[0m", code).unwrap();
            }
            ']' if i + 1 < chars.len() => {
                write!(out, "\x1b[{}m]{}\x1b[0m", color(chars[i + 1]), chars[i + 1]).unwrap();
                i += 1;
            }
            c => out.push(c),
        }
        i += 1;
    }
    out
}

fn demo_json(rows: &[DemoRow]) -> Result<String> {
    let mut out = String::new();
    for r in rows {
        let record = json!({
            "example": r.example,
            "rule": r.rule,
            "step": match r.step { Step::Word => "word", Step::Span => "span" },
            "prediction": r.rendered,
            "correct": r.correct,
        });
        writeln!(out, "{}", serde_json::to_string(&record)?).unwrap();
    }
    Ok(out)
}

pub fn demo(format: OutputFormat, color: ColorChoice) -> Result<()> {
    let rows = demo::run_demo()?;
    let text = match format {
        OutputFormat::Json => demo_json(&rows)?,
        OutputFormat::Text => {
            let colored = match color {
                ColorChoice::Always => true,
                ColorChoice::Never => false,
                ColorChoice::Auto => std::io::stdout().is_terminal(),
            };
            if colored {
                let painted: Vec<DemoRow> = rows
                    .iter()
                    .map(|r| DemoRow {
                        rendered: colorize(&r.rendered),
                        ..r.clone()
                    })
                    .collect();
                demo::format_rows(&painted)
            } else {
                demo::format_rows(&rows)
            }
        }
    };
    write_output(None, &text)
}
