//! CoNLL-2012 reader and writer.
//!
//! Only the document id, part number, word, POS and coreference columns are
//! interpreted. Every other column is carried through as opaque text in
//! [`Token::extra`].
//!
//! The coreference cell holds `-` or a `|`-separated list of entries:
//! `(12` opens a mention of cluster 12, `12)` closes the most recent open
//! mention of cluster 12 and `(12)` is a single-token mention. Entries are
//! applied left to right. The writer orders the entries of one cell as
//! closes, then single-token mentions, then opens, each group sorted by
//! cluster id.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::document::{Cluster, Document, MentionSpan, Token};
use crate::error::{Error, Result};

/// Column positions of the interpreted fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnConfig {
    pub doc: usize,
    pub part: usize,
    pub word_number: usize,
    pub word: usize,
    pub pos: usize,
    /// `None` means the last column of the line.
    pub coref: Option<usize>,
}

impl Default for ColumnConfig {
    fn default() -> Self {
        ColumnConfig {
            doc: 0,
            part: 1,
            word_number: 2,
            word: 3,
            pos: 4,
            coref: None,
        }
    }
}

impl ColumnConfig {
    fn fixed(&self) -> [usize; 5] {
        [self.doc, self.part, self.word_number, self.word, self.pos]
    }

    pub fn validate(&self) -> Result<()> {
        let mut cols: Vec<usize> = self.fixed().to_vec();
        cols.extend(self.coref);
        let mut sorted = cols.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cols.len() {
            return Err(Error::Argument(format!(
                "column layout assigns one column twice: {:?}",
                self
            )));
        }
        Ok(())
    }

    /// Smallest column count a token line must have.
    fn min_columns(&self) -> usize {
        let max_fixed = self.fixed().into_iter().max().unwrap_or(0);
        match self.coref {
            Some(c) => max_fixed.max(c) + 1,
            None => max_fixed + 2,
        }
    }

    fn coref_column(&self, ncols: usize) -> usize {
        self.coref.unwrap_or(ncols - 1)
    }

    fn is_interpreted(&self, col: usize, ncols: usize) -> bool {
        self.fixed().contains(&col) || col == self.coref_column(ncols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Open(u64),
    Close(u64),
    Unit(u64),
}

fn parse_cluster_id(s: &str, line: usize) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::parse(line, format!("cluster id {:?} is not an integer", s)))
}

fn parse_coref_cell(cell: &str, line: usize) -> Result<Vec<Entry>> {
    if cell == "-" || cell == "_" {
        return Ok(Vec::new());
    }
    cell.split('|')
        .map(|entry| {
            if let Some(rest) = entry.strip_prefix('(') {
                match rest.strip_suffix(')') {
                    Some(id) => Ok(Entry::Unit(parse_cluster_id(id, line)?)),
                    None => Ok(Entry::Open(parse_cluster_id(rest, line)?)),
                }
            } else if let Some(id) = entry.strip_suffix(')') {
                Ok(Entry::Close(parse_cluster_id(id, line)?))
            } else {
                Err(Error::parse(
                    line,
                    format!("malformed coreference entry {:?}", entry),
                ))
            }
        })
        .collect()
}

struct DocBuilder {
    doc_id: String,
    part: u32,
    ncols: usize,
    tokens: Vec<Token>,
    sent_id: usize,
    sentence_open: bool,
    /// Per cluster id: stack of (start token, line of the open bracket).
    open: HashMap<u64, Vec<(usize, usize)>>,
    spans: BTreeMap<u64, Vec<MentionSpan>>,
}

impl DocBuilder {
    fn new(doc_id: String, part: u32, ncols: usize) -> Self {
        DocBuilder {
            doc_id,
            part,
            ncols,
            tokens: Vec::new(),
            sent_id: 0,
            sentence_open: false,
            open: HashMap::new(),
            spans: BTreeMap::new(),
        }
    }

    fn sentence_break(&mut self) {
        if self.sentence_open {
            self.sent_id += 1;
            self.sentence_open = false;
        }
    }

    fn push(&mut self, cols: &[&str], config: &ColumnConfig, line: usize) -> Result<()> {
        let index = self.tokens.len();
        for entry in parse_coref_cell(cols[config.coref_column(cols.len())], line)? {
            match entry {
                Entry::Unit(id) => self
                    .spans
                    .entry(id)
                    .or_default()
                    .push(MentionSpan::new(index, index + 1)),
                Entry::Open(id) => self.open.entry(id).or_default().push((index, line)),
                Entry::Close(id) => {
                    let (start, _) = self
                        .open
                        .get_mut(&id)
                        .and_then(|stack| stack.pop())
                        .ok_or_else(|| {
                            Error::parse(
                                line,
                                format!("cluster {} closed without a matching open", id),
                            )
                        })?;
                    self.spans
                        .entry(id)
                        .or_default()
                        .push(MentionSpan::new(start, index + 1));
                }
            }
        }
        let extra = (0..cols.len())
            .filter(|&c| !config.is_interpreted(c, cols.len()))
            .map(|c| cols[c].to_owned())
            .collect();
        self.tokens.push(Token {
            index,
            word: cols[config.word].to_owned(),
            pos: cols[config.pos].to_owned(),
            sent_id: self.sent_id,
            head: None,
            deprel: None,
            extra,
        });
        self.sentence_open = true;
        Ok(())
    }

    fn finish(self) -> Result<Document> {
        if let Some((id, line)) = self
            .open
            .iter()
            .flat_map(|(id, stack)| stack.iter().map(move |&(_, line)| (*id, line)))
            .min_by_key(|&(_, line)| line)
        {
            return Err(Error::parse(
                line,
                format!("cluster {} opened but never closed", id),
            ));
        }
        let clusters = self
            .spans
            .into_iter()
            .map(|(id, mut spans)| {
                spans.sort();
                Cluster::new(id, spans)
            })
            .collect();
        let doc = Document {
            doc_id: self.doc_id,
            part: self.part,
            tokens: self.tokens,
            clusters,
        };
        doc.validate()?;
        Ok(doc)
    }
}

/// Parses CoNLL-2012 text into one document per (doc id, part).
pub fn parse_conll(text: &str, config: &ColumnConfig) -> Result<Vec<Document>> {
    config.validate()?;
    let mut docs = Vec::new();
    let mut seen: HashSet<(String, u32)> = HashSet::new();
    let mut current: Option<DocBuilder> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            if let Some(b) = current.as_mut() {
                b.sentence_break();
            }
            continue;
        }
        if trimmed.starts_with("#begin document") || trimmed.starts_with("#end document") {
            if let Some(b) = current.take() {
                docs.push(b.finish()?);
            }
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }

        let cols: Vec<&str> = trimmed.split_whitespace().collect();
        if cols.len() < config.min_columns() {
            return Err(Error::parse(
                line,
                format!(
                    "expected at least {} columns, found {}",
                    config.min_columns(),
                    cols.len()
                ),
            ));
        }
        let doc_id = cols[config.doc];
        let part = cols[config.part]
            .parse::<u32>()
            .map_err(|_| Error::parse(line, format!("part {:?} is not an integer", cols[config.part])))?;

        let same_doc = current
            .as_ref()
            .is_some_and(|b| b.doc_id == doc_id && b.part == part);
        if !same_doc {
            if let Some(b) = current.take() {
                docs.push(b.finish()?);
            }
            if !seen.insert((doc_id.to_owned(), part)) {
                return Err(Error::parse(
                    line,
                    format!("document {} part {} appears in two separate blocks", doc_id, part),
                ));
            }
            current = Some(DocBuilder::new(doc_id.to_owned(), part, cols.len()));
        }
        let builder = current.as_mut().unwrap();
        if cols.len() != builder.ncols {
            return Err(Error::parse(
                line,
                format!(
                    "ragged columns: expected {}, found {}",
                    builder.ncols,
                    cols.len()
                ),
            ));
        }
        builder.push(&cols, config, line)?;
    }
    if let Some(b) = current.take() {
        docs.push(b.finish()?);
    }
    Ok(docs)
}

/// Renders the coreference cell of every token.
fn coref_cells(doc: &Document) -> Result<Vec<String>> {
    let n = doc.n();
    let mut closes: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut units: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut opens: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (id, span) in doc.mentions() {
        if !span.is_valid_in(n) {
            return Err(Error::Emit {
                doc: doc.name(),
                message: format!("span {} exceeds the document (n = {})", span, n),
            });
        }
        if span.width() == 1 {
            units[span.start].push(id);
        } else {
            opens[span.start].push(id);
            closes[span.end - 1].push(id);
        }
    }
    Ok((0..n)
        .map(|t| {
            closes[t].sort_unstable();
            units[t].sort_unstable();
            opens[t].sort_unstable();
            let entries: Vec<String> = closes[t]
                .iter()
                .map(|id| format!("{})", id))
                .chain(units[t].iter().map(|id| format!("({})", id)))
                .chain(opens[t].iter().map(|id| format!("({}", id)))
                .collect();
            if entries.is_empty() {
                "-".to_owned()
            } else {
                entries.join("|")
            }
        })
        .collect())
}

/// Writes documents as CoNLL-2012, tab-separated, with `#begin document` /
/// `#end document` delimiters and a blank line after every sentence.
pub fn emit_conll(docs: &[Document], config: &ColumnConfig) -> Result<String> {
    config.validate()?;
    let mut out = String::new();
    for doc in docs {
        let cells = coref_cells(doc)?;
        writeln!(out, "#begin document ({}); part {:03}", doc.doc_id, doc.part).unwrap();
        let mut sentence_start = 0;
        for (t, token) in doc.tokens.iter().enumerate() {
            if t > 0 && token.sent_id != doc.tokens[t - 1].sent_id {
                out.push('\n');
                sentence_start = t;
            }
            let mut fixed: Vec<(usize, String)> = vec![
                (config.doc, doc.doc_id.clone()),
                (config.part, doc.part.to_string()),
                (config.word_number, (t - sentence_start).to_string()),
                (config.word, token.word.clone()),
                (config.pos, token.pos.clone()),
            ];
            let ncols = config
                .min_columns()
                .max(fixed.len() + 1 + token.extra.len());
            fixed.push((config.coref_column(ncols), cells[t].clone()));
            let mut extra = token.extra.iter();
            let row: Vec<String> = (0..ncols)
                .map(|c| match fixed.iter().find(|(col, _)| *col == c) {
                    Some((_, value)) => value.clone(),
                    None => extra.next().cloned().unwrap_or_else(|| "-".to_owned()),
                })
                .collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out.push('\n');
        out.push_str("#end document\n");
    }
    Ok(out)
}
