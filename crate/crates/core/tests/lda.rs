use std::collections::BTreeMap;

use emoframe::topics::{counts_consistent, fit_lda, frame_topic, LdaParams};
use emoframe::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two disjoint 15-word vocabularies; each document draws 80% of its tokens
/// from its dominant topic. Returns documents and each token's planted topic.
fn planted(seed: u64) -> (Vec<Vec<String>>, Vec<Vec<usize>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::new();
    let mut truth = Vec::new();
    for d in 0..50 {
        let dominant = d % 2;
        let mut words = Vec::new();
        let mut topics = Vec::new();
        for _ in 0..40 {
            let t = if rng.gen_bool(0.8) {
                dominant
            } else {
                1 - dominant
            };
            let w = rng.gen_range(0..15);
            words.push(format!("{}{w:02}", if t == 0 { "alpha" } else { "omega" }));
            topics.push(t);
        }
        docs.push(words);
        truth.push(topics);
    }
    (docs, truth)
}

fn purity(assigned: &[Vec<usize>], truth: &[Vec<usize>], k: usize) -> f64 {
    let mut table = vec![[0usize; 2]; k];
    for (a, t) in assigned.iter().flatten().zip(truth.iter().flatten()) {
        table[*a][*t] += 1;
    }
    let total: usize = truth.iter().map(Vec::len).sum();
    table.iter().map(|r| r[0].max(r[1])).sum::<usize>() as f64 / total as f64
}

#[test]
fn planted_topics_recovered() {
    let mut passes = 0;
    for seed in 0..5 {
        let (docs, truth) = planted(100 + seed);
        let mut params = LdaParams::new(2, seed);
        params.iterations = 300;
        let model = fit_lda(&docs, &params).unwrap();
        assert!(counts_consistent(&model, &docs));
        if purity(&model.assignments, &truth, 2) >= 0.9 {
            passes += 1;
        }
    }
    assert!(passes >= 3, "{passes}/5 seeds reached 90% purity");
}

#[test]
fn single_topic_equals_corpus_counts() {
    let (docs, _) = planted(1);
    let model = fit_lda(&docs, &LdaParams::new(1, 0)).unwrap();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for w in docs.iter().flatten() {
        *counts.entry(w).or_insert(0) += 1;
    }
    assert_eq!(model.vocabulary.len(), counts.len());
    for (i, w) in model.vocabulary.iter().enumerate() {
        assert_eq!(model.topic_word_counts[0][i], counts[w.as_str()]);
    }
    for (d, doc) in docs.iter().enumerate() {
        assert_eq!(model.doc_topic_counts[d], vec![doc.len() as u64]);
    }
}

#[test]
fn deterministic_per_seed() {
    let (docs, _) = planted(2);
    let mut params = LdaParams::new(3, 9);
    params.iterations = 50;
    let a = fit_lda(&docs, &params).unwrap();
    let b = fit_lda(&docs, &params).unwrap();
    assert_eq!(a.topic_word_counts, b.topic_word_counts);
    assert_eq!(a.assignments, b.assignments);
    params.seed = 10;
    assert_ne!(fit_lda(&docs, &params).unwrap().assignments, a.assignments);
}

#[test]
fn defaults_and_errors() {
    let p = LdaParams::new(4, 0);
    assert_eq!((p.alpha, p.beta, p.iterations), (12.5, 0.01, 1000));
    assert!(matches!(fit_lda(&[], &p), Err(Error::EmptyVocabulary)));
    assert!(fit_lda(&[vec!["a".into()]], &LdaParams::new(0, 0)).is_err());
    let model = fit_lda(&[vec!["feel".into(), "x".into()]], &LdaParams::new(2, 0)).unwrap();
    assert!(frame_topic(&model, "feel").unwrap() < 2);
}
