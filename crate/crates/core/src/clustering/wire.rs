//! Score-matrix jsonlines: one matrix per line,
//! `{"doc_id", "part", "n", "kind", "rows": [[i, [[j, score], ...]], ...]}`,
//! with an optional `"k"` top-k bound. Only nonempty rows are written.

use serde::{Deserialize, Serialize};

use super::{ScoreKind, ScoreMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreRecord {
    pub doc_id: String,
    pub part: u32,
    pub matrix: ScoreMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    doc_id: String,
    part: u32,
    n: usize,
    kind: ScoreKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    rows: Vec<(usize, Vec<(usize, f64)>)>,
}

pub fn parse_score_matrices(text: &str) -> Result<Vec<ScoreRecord>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let raw: RawMatrix =
            serde_json::from_str(line).map_err(|e| Error::parse(lineno, e.to_string()))?;
        let mut rows = vec![Vec::new(); raw.n];
        for (i, entries) in raw.rows {
            let row = rows.get_mut(i).ok_or_else(|| {
                Error::parse(lineno, format!("row {} outside the matrix (n = {})", i, raw.n))
            })?;
            if !row.is_empty() {
                return Err(Error::parse(lineno, format!("row {} listed twice", i)));
            }
            *row = entries;
        }
        let mut matrix = ScoreMatrix::new(raw.n, raw.kind, rows)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        if let Some(k) = raw.k {
            matrix = matrix
                .with_k(k)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        out.push(ScoreRecord {
            doc_id: raw.doc_id,
            part: raw.part,
            matrix,
        });
    }
    Ok(out)
}

pub fn emit_score_matrices(records: &[ScoreRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        let raw = RawMatrix {
            doc_id: rec.doc_id.clone(),
            part: rec.part,
            n: rec.matrix.n(),
            kind: rec.matrix.kind(),
            k: rec.matrix.k(),
            rows: rec
                .matrix
                .rows()
                .filter(|(_, r)| !r.is_empty())
                .map(|(i, r)| (i, r.to_vec()))
                .collect(),
        };
        out.push_str(&serde_json::to_string(&raw).expect("finite scores serialize"));
        out.push('\n');
    }
    out
}
