//! Text cleaning: sentence splitting, tokenization, stopword filtering and
//! stemming.
//!
//! Documents become ordered sentences of Porter stems. Hyperlinks, numbers,
//! punctuation and symbols are discarded; negations such as "no" and "not"
//! survive stopword removal.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::porter::porter_stem;

const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

/// Suffix fragments dropped after splitting a contraction on its apostrophe.
const CONTRACTION_SUFFIXES: &[&str] = &["t", "s", "re", "ve", "ll", "d", "m"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub corpus_label: String,
}

impl Document {
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        corpus_label: impl Into<String>,
    ) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            corpus_label: corpus_label.into(),
        }
    }

    /// Builds a document from raw bytes, rejecting invalid UTF-8.
    pub fn from_bytes(
        id: impl Into<String>,
        bytes: Vec<u8>,
        corpus_label: impl Into<String>,
    ) -> Result<Self> {
        let id = id.into();
        let text = String::from_utf8(bytes).map_err(|source| Error::Decode {
            id: id.clone(),
            source,
        })?;
        Ok(Document {
            id,
            text,
            corpus_label: corpus_label.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDocument {
    pub id: String,
    pub sentences: Vec<Vec<String>>,
}

impl TokenizedDocument {
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.sentences.iter().flatten().map(String::as_str)
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

/// Parse a stopword list: one word per line, `#` starts a comment.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

pub fn read_stopwords(path: &Path) -> Result<BTreeSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_stopwords(&text))
}

/// The bundled English list. The pronoun "i" is commented out of it.
pub fn bundled_stopwords() -> BTreeSet<String> {
    parse_stopwords(BUNDLED_STOPWORDS)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub stopwords: BTreeSet<String>,
    pub negation_whitelist: BTreeSet<String>,
    pub lowercase: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stopwords: bundled_stopwords(),
            negation_whitelist: ["no", "not"].iter().map(|s| s.to_string()).collect(),
            lowercase: true,
        }
    }
}

impl PipelineConfig {
    pub fn with_stopwords(stopwords: BTreeSet<String>) -> Self {
        PipelineConfig {
            stopwords,
            ..PipelineConfig::default()
        }
    }

    /// Whether `word` is removed. Whitelisted negations never are.
    pub fn is_stopword(&self, word: &str) -> bool {
        if self.negation_whitelist.contains(word) {
            return false;
        }
        if self.stopwords.contains(word) {
            return true;
        }
        !self.lowercase && self.stopwords.contains(&word.to_lowercase())
    }

    /// Stopword list minus the negation whitelist.
    pub fn effective_stopwords(&self) -> BTreeSet<String> {
        self.stopwords
            .difference(&self.negation_whitelist)
            .cloned()
            .collect()
    }

    /// Stems of the negation whitelist, the node labels that trigger
    /// antonym handling downstream.
    pub fn negation_stems(&self) -> BTreeSet<String> {
        self.negation_whitelist
            .iter()
            .map(|w| porter_stem(w))
            .collect()
    }
}

fn is_sentence_end(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '\u{2018}')
}

fn is_hyperlink(chunk: &str) -> bool {
    let lower = chunk
        .trim_start_matches(|c: char| !c.is_alphanumeric())
        .to_ascii_lowercase();
    lower.starts_with("http") || lower.starts_with("www")
}

/// Split a whitespace-free chunk into raw words, reporting sentence
/// boundaries that occur inside or after it.
fn split_chunk(
    chunk: &str,
    words: &mut Vec<String>,
    mut on_boundary: impl FnMut(&mut Vec<String>),
) {
    let mut piece = String::new();
    for c in chunk.chars() {
        if is_sentence_end(c) {
            flush_piece(&mut piece, words);
            on_boundary(words);
        } else {
            piece.push(c);
        }
    }
    flush_piece(&mut piece, words);
}

fn flush_piece(piece: &mut String, words: &mut Vec<String>) {
    if piece.is_empty() {
        return;
    }
    let raw = std::mem::take(piece);
    if raw.chars().any(|c| c.is_ascii_digit() || c.is_numeric()) {
        return;
    }
    for word in split_contraction(&raw) {
        // remaining punctuation and symbols separate words
        for part in word.split(|c: char| !c.is_alphabetic()) {
            if !part.is_empty() {
                words.push(part.to_string());
            }
        }
    }
}

/// "don't" -> ["do"], "she's" -> ["she"], "o'clock" -> ["o", "clock"].
fn split_contraction(raw: &str) -> Vec<String> {
    if !raw.chars().any(is_apostrophe) {
        return vec![raw.to_string()];
    }
    let normalized: String = raw
        .chars()
        .map(|c| if is_apostrophe(c) { '\'' } else { c })
        .collect();
    let lower = normalized.to_lowercase();
    if let Some(stem) = lower.strip_suffix("n't") {
        let base = match stem {
            "ca" => "can",
            "wo" => "will",
            "sha" => "shall",
            _ => stem,
        };
        // keep original casing where lengths allow
        let kept = if base == stem {
            normalized
                .get(..stem.len())
                .filter(|orig| orig.to_lowercase() == stem)
                .unwrap_or(stem)
                .to_string()
        } else {
            base.to_string()
        };
        return if kept.is_empty() { vec![] } else { vec![kept] };
    }
    let mut parts = normalized.split('\'');
    let mut out = Vec::new();
    if let Some(first) = parts.next() {
        if !first.is_empty() {
            out.push(first.to_string());
        }
    }
    for part in parts {
        if !part.is_empty() && !CONTRACTION_SUFFIXES.contains(&part.to_lowercase().as_str()) {
            out.push(part.to_string());
        }
    }
    out
}

/// Clean and tokenize one document into sentences of stems.
pub fn clean_and_tokenize(doc: &Document, cfg: &PipelineConfig) -> TokenizedDocument {
    let mut sentences: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();

    let finish = |words: &mut Vec<String>, sentences: &mut Vec<Vec<String>>| {
        let stems: Vec<String> = words
            .drain(..)
            .filter_map(|w| process_word(&w, cfg))
            .collect();
        if !stems.is_empty() {
            sentences.push(stems);
        }
    };

    for line in doc.text.lines() {
        for chunk in line.split_whitespace() {
            if is_hyperlink(chunk) {
                if chunk.ends_with(is_sentence_end) {
                    finish(&mut current, &mut sentences);
                }
                continue;
            }
            let mut pending: Vec<Vec<String>> = Vec::new();
            split_chunk(chunk, &mut current, |words| {
                pending.push(std::mem::take(words));
            });
            for mut sentence in pending {
                finish(&mut sentence, &mut sentences);
            }
        }
        finish(&mut current, &mut sentences);
    }
    finish(&mut current, &mut sentences);

    TokenizedDocument {
        id: doc.id.clone(),
        sentences,
    }
}

fn process_word(word: &str, cfg: &PipelineConfig) -> Option<String> {
    let word = if cfg.lowercase {
        word.to_lowercase()
    } else {
        word.to_string()
    };
    if cfg.is_stopword(&word) {
        return None;
    }
    let stem = porter_stem(&word);
    // a stem can collide with a stopword ("owned" -> "own")
    if cfg.is_stopword(&stem) {
        return None;
    }
    Some(stem)
}

/// Tokenize a whole corpus. Documents are processed in parallel; output
/// order follows input order.
pub fn tokenize_corpus(docs: &[Document], cfg: &PipelineConfig) -> Vec<TokenizedDocument> {
    docs.par_iter()
        .map(|d| clean_and_tokenize(d, cfg))
        .collect()
}

/// Raw stem occurrence counts over a cleaned corpus.
pub fn word_frequencies(corpus: &[TokenizedDocument]) -> BTreeMap<String, u64> {
    let mut freq = BTreeMap::new();
    for token in corpus.iter().flat_map(TokenizedDocument::tokens) {
        *freq.entry(token.to_string()).or_insert(0) += 1;
    }
    freq
}
