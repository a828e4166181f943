use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;

use wlcoref_core::{emit_conll, emit_jsonlines, parse_conll, parse_jsonlines, ColumnConfig, Document};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Conll,
    Jsonl,
}

impl DocFormat {
    /// `.jsonl`, `.jsonlines` and `.json` are jsonlines; anything else is CoNLL.
    pub fn from_path(path: &Path) -> DocFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "jsonlines" | "json") => DocFormat::Jsonl,
            _ => DocFormat::Conll,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_documents(path: &Path, format: Option<DocFormat>, columns: &ColumnConfig) -> Result<Vec<Document>> {
    let text = read_text(path)?;
    let docs = match format.unwrap_or_else(|| DocFormat::from_path(path)) {
        DocFormat::Conll => parse_conll(&text, columns),
        DocFormat::Jsonl => parse_jsonlines(&text),
    };
    docs.with_context(|| path.display().to_string())
}

pub fn render_documents(docs: &[Document], format: DocFormat, columns: &ColumnConfig) -> Result<String> {
    Ok(match format {
        DocFormat::Conll => emit_conll(docs, columns)?,
        DocFormat::Jsonl => emit_jsonlines(docs),
    })
}

/// Writes to the file, or to stdout when no path is given.
pub fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
            out.flush().context("writing to stdout")
        }
    }
}
