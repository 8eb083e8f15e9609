//! Latent Dirichlet Allocation fitted by collapsed Gibbs sampling.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::porter::porter_stem;
use crate::text::TokenizedDocument;

pub const DEFAULT_BETA: f64 = 0.01;
pub const DEFAULT_ITERATIONS: usize = 1000;

/// What counts as one LDA document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocGranularity {
    #[default]
    Document,
    Sentence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaParams {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl LdaParams {
    /// alpha = 50/K, beta = 0.01, 1000 sweeps.
    pub fn new(k: usize, seed: u64) -> Self {
        LdaParams {
            k,
            alpha: 50.0 / k.max(1) as f64,
            beta: DEFAULT_BETA,
            iterations: DEFAULT_ITERATIONS,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicModel {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
    pub vocabulary: Vec<String>,
    /// K x V.
    pub topic_word_counts: Vec<Vec<u64>>,
    /// D x K.
    pub doc_topic_counts: Vec<Vec<u64>>,
    /// Final topic of every token, per document.
    pub assignments: Vec<Vec<usize>>,
}

impl TopicModel {
    pub fn word_index(&self, stem: &str) -> Option<usize> {
        self.vocabulary
            .binary_search_by(|w| w.as_str().cmp(stem))
            .ok()
    }

    pub fn topic_totals(&self) -> Vec<u64> {
        self.topic_word_counts
            .iter()
            .map(|row| row.iter().sum())
            .collect()
    }
}

/// Documents whose cleaned tokens contain the stem of any target form.
pub fn select_documents<'a>(
    corpus: &'a [TokenizedDocument],
    target_forms: &BTreeSet<String>,
) -> Vec<&'a TokenizedDocument> {
    let stems: BTreeSet<String> = target_forms
        .iter()
        .map(|f| porter_stem(&f.to_lowercase()))
        .collect();
    corpus
        .iter()
        .filter(|d| d.tokens().any(|t| stems.contains(t)))
        .collect()
}

/// Token sequences to model, at the requested granularity. Empty units are
/// dropped.
pub fn lda_units(docs: &[&TokenizedDocument], granularity: DocGranularity) -> Vec<Vec<String>> {
    match granularity {
        DocGranularity::Document => docs
            .iter()
            .map(|d| d.tokens().map(String::from).collect::<Vec<_>>())
            .filter(|u| !u.is_empty())
            .collect(),
        DocGranularity::Sentence => docs
            .iter()
            .flat_map(|d| d.sentences.iter().cloned())
            .filter(|s| !s.is_empty())
            .collect(),
    }
}

pub fn fit_lda(docs: &[Vec<String>], params: &LdaParams) -> Result<TopicModel> {
    if params.k == 0 {
        return Err(Error::InvalidArgument(
            "number of topics must be at least 1".into(),
        ));
    }
    if !(params.alpha > 0.0 && params.beta > 0.0) {
        return Err(Error::InvalidArgument(
            "alpha and beta must be positive".into(),
        ));
    }
    let vocabulary: Vec<String> = docs
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let index: BTreeMap<&str, usize> = vocabulary
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_str(), i))
        .collect();
    let words: Vec<Vec<usize>> = docs
        .iter()
        .map(|d| d.iter().map(|w| index[w.as_str()]).collect())
        .collect();

    let k = params.k;
    let v = vocabulary.len();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut topic_word = vec![vec![0u64; v]; k];
    let mut doc_topic = vec![vec![0u64; k]; docs.len()];
    let mut topic_total = vec![0u64; k];
    let mut assignments: Vec<Vec<usize>> = Vec::with_capacity(docs.len());
    for (d, doc) in words.iter().enumerate() {
        let mut z = Vec::with_capacity(doc.len());
        for &w in doc {
            let t = rng.gen_range(0..k);
            topic_word[t][w] += 1;
            doc_topic[d][t] += 1;
            topic_total[t] += 1;
            z.push(t);
        }
        assignments.push(z);
    }

    let v_beta = v as f64 * params.beta;
    let mut weights = vec![0.0; k];
    for _ in 0..params.iterations {
        for (d, doc) in words.iter().enumerate() {
            for (i, &w) in doc.iter().enumerate() {
                let old = assignments[d][i];
                topic_word[old][w] -= 1;
                doc_topic[d][old] -= 1;
                topic_total[old] -= 1;

                let mut sum = 0.0;
                for t in 0..k {
                    sum += (doc_topic[d][t] as f64 + params.alpha)
                        * (topic_word[t][w] as f64 + params.beta)
                        / (topic_total[t] as f64 + v_beta);
                    weights[t] = sum;
                }
                let u = rng.gen::<f64>() * sum;
                let new = weights.iter().position(|&c| u < c).unwrap_or(k - 1);

                topic_word[new][w] += 1;
                doc_topic[d][new] += 1;
                topic_total[new] += 1;
                assignments[d][i] = new;
            }
        }
    }

    Ok(TopicModel {
        k,
        alpha: params.alpha,
        beta: params.beta,
        iterations: params.iterations,
        seed: params.seed,
        vocabulary,
        topic_word_counts: topic_word,
        doc_topic_counts: doc_topic,
        assignments,
    })
}

/// Topic in which `target` has the highest count; ties go to the lowest id.
pub fn frame_topic(model: &TopicModel, target: &str) -> Result<usize> {
    let w = model
        .word_index(target)
        .ok_or_else(|| Error::NotFound(target.to_string()))?;
    let mut best = 0;
    for t in 1..model.k {
        if model.topic_word_counts[t][w] > model.topic_word_counts[best][w] {
            best = t;
        }
    }
    Ok(best)
}

/// Top-k stems of a topic by count, ties lexicographic. Stems in
/// `exclude` (e.g. a stopword list) are skipped, as are zero counts.
pub fn top_topic_words(
    model: &TopicModel,
    topic: usize,
    k: usize,
    exclude: Option<&BTreeSet<String>>,
) -> Vec<(String, u64)> {
    let Some(row) = model.topic_word_counts.get(topic) else {
        return Vec::new();
    };
    let mut ranked: Vec<(String, u64)> = model
        .vocabulary
        .iter()
        .zip(row)
        .filter(|(w, &c)| c > 0 && !exclude.is_some_and(|s| s.contains(*w)))
        .map(|(w, &c)| (w.clone(), c))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    ranked
}

/// Checks the count-matrix marginals against the token assignments.
pub fn counts_consistent(model: &TopicModel, docs: &[Vec<String>]) -> bool {
    let mut corpus: BTreeMap<&str, u64> = BTreeMap::new();
    for w in docs.iter().flatten() {
        *corpus.entry(w.as_str()).or_insert(0) += 1;
    }
    let words_ok = model.vocabulary.iter().enumerate().all(|(i, w)| {
        let total: u64 = model.topic_word_counts.iter().map(|row| row[i]).sum();
        corpus.get(w.as_str()).copied() == Some(total)
    });
    let docs_ok = model
        .doc_topic_counts
        .iter()
        .zip(docs)
        .all(|(row, doc)| row.iter().sum::<u64>() == doc.len() as u64);
    let totals_ok = model.topic_totals().iter().sum::<u64>() == corpus.values().sum::<u64>();
    words_ok && docs_ok && totals_ok && model.doc_topic_counts.len() == docs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter()
            .map(|d| d.iter().map(|w| w.to_string()).collect())
            .collect()
    }

    fn small(iterations: usize, k: usize) -> LdaParams {
        LdaParams {
            iterations,
            ..LdaParams::new(k, 11)
        }
    }

    #[test]
    fn single_topic_matches_corpus_counts() {
        let d = docs(&[&["a", "b", "a"], &["c", "a"]]);
        let m = fit_lda(&d, &small(20, 1)).unwrap();
        assert_eq!(m.vocabulary, ["a", "b", "c"]);
        assert_eq!(m.topic_word_counts, vec![vec![3, 1, 1]]);
        assert_eq!(m.doc_topic_counts, vec![vec![3], vec![2]]);
        assert!(counts_consistent(&m, &d));
    }

    #[test]
    fn single_token_lands_in_one_topic() {
        let d = docs(&[&["feel"]]);
        let m = fit_lda(&d, &small(10, 2)).unwrap();
        let col: Vec<u64> = m.topic_word_counts.iter().map(|r| r[0]).collect();
        assert_eq!(col.iter().sum::<u64>(), 1);
        assert!(col.contains(&1));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            fit_lda(&[], &small(1, 2)),
            Err(Error::EmptyVocabulary)
        ));
        assert!(matches!(
            fit_lda(&docs(&[&[]]), &small(1, 2)),
            Err(Error::EmptyVocabulary)
        ));
        assert!(fit_lda(&docs(&[&["a"]]), &small(1, 0)).is_err());
    }

    fn model_with(counts: Vec<Vec<u64>>, vocab: &[&str]) -> TopicModel {
        TopicModel {
            k: counts.len(),
            alpha: 1.0,
            beta: 0.01,
            iterations: 0,
            seed: 0,
            vocabulary: vocab.iter().map(|s| s.to_string()).collect(),
            topic_word_counts: counts,
            doc_topic_counts: vec![],
            assignments: vec![],
        }
    }

    #[test]
    fn frame_topic_rules() {
        let m = model_with(vec![vec![0, 1], vec![0, 2], vec![5, 0]], &["feel", "x"]);
        assert_eq!(frame_topic(&m, "feel").unwrap(), 2);
        let tie = model_with(vec![vec![3], vec![3]], &["feel"]);
        assert_eq!(frame_topic(&tie, "feel").unwrap(), 0);
        assert!(matches!(frame_topic(&m, "nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn top_words() {
        let m = model_with(vec![vec![2, 5, 2, 0]], &["b", "feel", "a", "z"]);
        assert!(top_topic_words(&m, 0, 0, None).is_empty());
        assert_eq!(
            top_topic_words(&m, 0, 10, None),
            vec![("feel".into(), 5), ("a".into(), 2), ("b".into(), 2)]
        );
        let stop: BTreeSet<String> = ["b".to_string()].into();
        assert_eq!(
            top_topic_words(&m, 0, 2, Some(&stop)),
            vec![("feel".into(), 5), ("a".into(), 2)]
        );
        let one = model_with(vec![vec![4]], &["only"]);
        assert_eq!(top_topic_words(&one, 0, 3, None), vec![("only".into(), 4)]);
    }

    #[test]
    fn selects_by_stem() {
        let mk = |id: &str, s: &[&str]| TokenizedDocument {
            id: id.into(),
            sentences: vec![s.iter().map(|w| w.to_string()).collect()],
        };
        let corpus = vec![
            mk("a", &["i", "feel", "fine"]),
            mk("b", &["i", "felt"]),
            mk("c", &["nope"]),
        ];
        let forms: BTreeSet<String> = ["feelings".to_string()].into();
        let picked: Vec<&str> = select_documents(&corpus, &forms)
            .iter()
            .map(|d| d.id.as_str())
            .collect();
        assert_eq!(picked, ["a"]);
        let forms: BTreeSet<String> = ["feel".to_string(), "felt".to_string()].into();
        assert_eq!(select_documents(&corpus, &forms).len(), 2);
    }
}
