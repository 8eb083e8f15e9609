//! Corpus readers: a directory of `.txt` files, JSONL, or CSV.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    /// One document per `*.txt` file; the file name is the id.
    TxtDir,
    /// One JSON object per line with `id` and `text` fields.
    Jsonl,
    /// Header row with `id` and `text` columns.
    Csv,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "txt-dir" | "txt" | "dir" => Ok(CorpusFormat::TxtDir),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "csv" => Ok(CorpusFormat::Csv),
            other => Err(Error::Config(format!("unknown corpus format {other:?}"))),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::TxtDir => "txt-dir",
            CorpusFormat::Jsonl => "jsonl",
            CorpusFormat::Csv => "csv",
        })
    }
}

#[derive(Deserialize)]
struct Record {
    id: String,
    text: String,
}

pub fn read_corpus(path: &Path, format: CorpusFormat, label: &str) -> Result<Vec<Document>> {
    let docs = match format {
        CorpusFormat::TxtDir => read_txt_dir(path, label)?,
        CorpusFormat::Jsonl => read_jsonl(path, label)?,
        CorpusFormat::Csv => read_csv(path, label)?,
    };
    let mut seen = BTreeSet::new();
    for doc in &docs {
        if !seen.insert(doc.id.as_str()) {
            return Err(Error::parse(
                path,
                0,
                format!("duplicate document id {:?}", doc.id),
            ));
        }
    }
    Ok(docs)
}

fn read_txt_dir(dir: &Path, label: &str) -> Result<Vec<Document>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            files.push(path);
        }
    }
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            let id = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            Document::from_bytes(id, bytes, label)
        })
        .collect()
}

fn read_jsonl(path: &Path, label: &str) -> Result<Vec<Document>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|source| Error::Decode {
        id: path.display().to_string(),
        source,
    })?;
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: Record =
            serde_json::from_str(line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        docs.push(Document::new(record.id, record.text, label));
    }
    Ok(docs)
}

fn read_csv(path: &Path, label: &str) -> Result<Vec<Document>> {
    let csv_err = |source| Error::Csv {
        path: path.into(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let headers = reader.byte_headers().map_err(csv_err)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name.as_bytes())
            .ok_or_else(|| Error::parse(path, 1, format!("missing column {name:?}")))
    };
    let (id_col, text_col) = (column("id")?, column("text")?);
    let mut docs = Vec::new();
    for (i, row) in reader.byte_records().enumerate() {
        let row = row.map_err(csv_err)?;
        let id = std::str::from_utf8(row.get(id_col).unwrap_or_default())
            .map_err(|_| Error::parse(path, i + 2, "document id is not valid UTF-8"))?
            .trim()
            .to_string();
        let text = row.get(text_col).unwrap_or_default().to_vec();
        docs.push(Document::from_bytes(id, text, label)?);
    }
    Ok(docs)
}
