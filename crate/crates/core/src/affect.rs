//! Valence and emotion lexicons merged onto stems.
//!
//! Input files follow the NRC layouts: a tab-separated VAD table (`word`,
//! `valence`, `arousal`, `dominance`, optional header) and the word-level
//! emotion association file (`word`, `emotion`, `0|1`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Plutchik's eight basic emotions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emotion {
    Anger,
    Anticipation,
    Disgust,
    Fear,
    Joy,
    Sadness,
    Surprise,
    Trust,
}

impl Emotion {
    /// Alphabetical order.
    pub const ALL: [Emotion; 8] = [
        Emotion::Anger,
        Emotion::Anticipation,
        Emotion::Disgust,
        Emotion::Fear,
        Emotion::Joy,
        Emotion::Sadness,
        Emotion::Surprise,
        Emotion::Trust,
    ];

    /// Clockwise order around the wheel, as petals are drawn.
    pub const WHEEL: [Emotion; 8] = [
        Emotion::Anger,
        Emotion::Anticipation,
        Emotion::Joy,
        Emotion::Trust,
        Emotion::Fear,
        Emotion::Surprise,
        Emotion::Sadness,
        Emotion::Disgust,
    ];

    pub fn opposite(self) -> Emotion {
        match self {
            Emotion::Joy => Emotion::Sadness,
            Emotion::Sadness => Emotion::Joy,
            Emotion::Trust => Emotion::Disgust,
            Emotion::Disgust => Emotion::Trust,
            Emotion::Fear => Emotion::Anger,
            Emotion::Anger => Emotion::Fear,
            Emotion::Anticipation => Emotion::Surprise,
            Emotion::Surprise => Emotion::Anticipation,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Anger => "anger",
            Emotion::Anticipation => "anticipation",
            Emotion::Disgust => "disgust",
            Emotion::Fear => "fear",
            Emotion::Joy => "joy",
            Emotion::Sadness => "sadness",
            Emotion::Surprise => "surprise",
            Emotion::Trust => "trust",
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emotion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Emotion::ALL
            .iter()
            .copied()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown emotion {s:?}"))
    }
}

pub type EmotionSet = BTreeSet<Emotion>;

/// Map each emotion to its opposite on the wheel.
pub fn antonym_emotions(emotions: &EmotionSet) -> EmotionSet {
    emotions.iter().map(|e| e.opposite()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValenceLabel {
    Positive,
    Negative,
    Neutral,
}

impl fmt::Display for ValenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValenceLabel::Positive => "positive",
            ValenceLabel::Negative => "negative",
            ValenceLabel::Neutral => "neutral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffectLexicon {
    pub valence: BTreeMap<String, f64>,
    pub arousal: BTreeMap<String, f64>,
    pub dominance: BTreeMap<String, f64>,
    pub emotions: BTreeMap<String, EmotionSet>,
    /// Lower and upper quartile of the merged valence distribution.
    pub valence_quartiles: (f64, f64),
}

/// Quantile with linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Mean of values, summed in sorted order so the result does not depend on
/// file row order.
fn order_free_mean(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values.iter().sum::<f64>() / values.len() as f64
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split('\t').map(str::trim).collect()
}

fn parse_unit(path: &Path, line: usize, field: &str, what: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| Error::parse(path, line, format!("{what} {field:?} is not a number")))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::parse(
            path,
            line,
            format!("{what} {v} outside [0, 1]"),
        ));
    }
    Ok(v)
}

impl AffectLexicon {
    /// Build from file contents. `vad_name`/`emolex_name` are used in error
    /// messages only.
    pub fn from_sources(
        vad: &str,
        vad_name: &Path,
        emolex: &str,
        emolex_name: &Path,
        stemmer: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let mut valence: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut arousal: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut dominance: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut first_data = true;
        for (i, raw) in vad.lines().enumerate() {
            let line_no = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields = split_fields(raw);
            if fields.len() < 4 {
                return Err(Error::parse(
                    vad_name,
                    line_no,
                    format!("expected 4 tab-separated fields, found {}", fields.len()),
                ));
            }
            if first_data && fields[1].parse::<f64>().is_err() {
                // header row
                first_data = false;
                continue;
            }
            first_data = false;
            let stem = stemmer(&fields[0].to_lowercase());
            valence
                .entry(stem.clone())
                .or_default()
                .push(parse_unit(vad_name, line_no, fields[1], "valence")?);
            arousal
                .entry(stem.clone())
                .or_default()
                .push(parse_unit(vad_name, line_no, fields[2], "arousal")?);
            dominance.entry(stem).or_default().push(parse_unit(
                vad_name,
                line_no,
                fields[3],
                "dominance",
            )?);
        }
        if valence.is_empty() {
            return Err(Error::EmptyLexicon(vad_name.to_path_buf()));
        }

        let mut emotions: BTreeMap<String, EmotionSet> = BTreeMap::new();
        let mut rows = 0usize;
        for (i, raw) in emolex.lines().enumerate() {
            let line_no = i + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields = split_fields(raw);
            if fields.len() != 3 {
                return Err(Error::parse(
                    emolex_name,
                    line_no,
                    format!("expected 3 tab-separated fields, found {}", fields.len()),
                ));
            }
            let flag = match fields[2] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::parse(
                        emolex_name,
                        line_no,
                        format!("association flag {other:?} is not 0 or 1"),
                    ))
                }
            };
            rows += 1;
            let emotion = match fields[1] {
                "positive" | "negative" => continue,
                name => name
                    .parse::<Emotion>()
                    .map_err(|e| Error::parse(emolex_name, line_no, e))?,
            };
            if flag {
                emotions
                    .entry(stemmer(&fields[0].to_lowercase()))
                    .or_default()
                    .insert(emotion);
            }
        }
        if rows == 0 {
            return Err(Error::EmptyLexicon(emolex_name.to_path_buf()));
        }

        let merge = |m: BTreeMap<String, Vec<f64>>| -> BTreeMap<String, f64> {
            m.into_iter()
                .map(|(k, mut v)| (k, order_free_mean(&mut v)))
                .collect()
        };
        let valence = merge(valence);
        let mut sorted: Vec<f64> = valence.values().copied().collect();
        sorted.sort_by(f64::total_cmp);
        let valence_quartiles = (quantile(&sorted, 0.25), quantile(&sorted, 0.75));

        Ok(AffectLexicon {
            valence,
            arousal: merge(arousal),
            dominance: merge(dominance),
            emotions,
            valence_quartiles,
        })
    }

    pub fn valence_label(&self, stem: &str) -> ValenceLabel {
        let (q1, q3) = self.valence_quartiles;
        match self.valence.get(stem) {
            None => ValenceLabel::Neutral,
            Some(&v) if v >= q3 => ValenceLabel::Positive,
            Some(&v) if v <= q1 => ValenceLabel::Negative,
            Some(_) => ValenceLabel::Neutral,
        }
    }

    pub fn emotions_of(&self, stem: &str) -> EmotionSet {
        self.emotions.get(stem).cloned().unwrap_or_default()
    }

    /// Stems eliciting at least one emotion, sorted.
    pub fn emotional_stems(&self) -> Vec<&str> {
        self.emotions
            .iter()
            .filter(|(_, set)| !set.is_empty())
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

pub fn load_lexicons(
    vad_path: &Path,
    emolex_path: &Path,
    stemmer: impl Fn(&str) -> String,
) -> Result<AffectLexicon> {
    let vad = std::fs::read_to_string(vad_path).map_err(|e| Error::io(vad_path, e))?;
    let emolex = std::fs::read_to_string(emolex_path).map_err(|e| Error::io(emolex_path, e))?;
    AffectLexicon::from_sources(&vad, vad_path, &emolex, emolex_path, stemmer)
}

/// Word-level antonym pairs, symmetric, keyed by stem.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntonymMap {
    pairs: BTreeMap<String, String>,
}

impl AntonymMap {
    /// One pair per line separated by a tab or spaces; `#` starts a comment.
    /// A stem listed twice keeps its first partner.
    pub fn parse(text: &str, source: &Path, stemmer: impl Fn(&str) -> String) -> Result<Self> {
        let mut pairs = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::parse(source, i + 1, "expected a word pair"));
            }
            let a = stemmer(&fields[0].to_lowercase());
            let b = stemmer(&fields[1].to_lowercase());
            pairs.entry(a.clone()).or_insert_with(|| b.clone());
            pairs.entry(b).or_insert(a);
        }
        Ok(AntonymMap { pairs })
    }

    pub fn load(path: &Path, stemmer: impl Fn(&str) -> String) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path, stemmer)
    }

    pub fn antonym(&self, stem: &str) -> Option<&str> {
        self.pairs.get(stem).map(String::as_str)
    }
}
