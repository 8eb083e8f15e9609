//! Bigram counting and link-budget thresholded co-occurrence networks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::text::TokenizedDocument;

/// An unordered stem pair, stored with `first <= second`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bigram {
    first: String,
    second: String,
}

impl Bigram {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Bigram {
                first: a,
                second: b,
            }
        } else {
            Bigram {
                first: b,
                second: a,
            }
        }
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn second(&self) -> &str {
        &self.second
    }

    pub fn is_self_loop(&self) -> bool {
        self.first == self.second
    }
}

impl fmt::Display for Bigram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

pub type BigramCounts = BTreeMap<Bigram, u64>;

/// Count adjacent pairs within sentences, summed over all documents.
/// Self-loops are counted here and excluded later.
pub fn count_bigrams(corpus: &[TokenizedDocument]) -> BigramCounts {
    let mut counts = BigramCounts::new();
    for sentence in corpus.iter().flat_map(|d| d.sentences.iter()) {
        for pair in sentence.windows(2) {
            *counts
                .entry(Bigram::new(pair[0].as_str(), pair[1].as_str()))
                .or_insert(0) += 1;
        }
    }
    counts
}

/// Merge partial counts, e.g. from per-document workers.
pub fn merge_counts(into: &mut BigramCounts, other: BigramCounts) {
    for (pair, n) in other {
        *into.entry(pair).or_insert(0) += n;
    }
}

/// Non-self-loop bigrams ranked by count (descending), ties broken by
/// the canonical pair; the first `budget` are returned.
pub fn threshold_top_m(counts: &BigramCounts, budget: usize) -> Vec<Bigram> {
    let mut ranked: Vec<(&Bigram, u64)> = counts
        .iter()
        .filter(|(pair, _)| !pair.is_self_loop())
        .map(|(pair, &n)| (pair, n))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked
        .into_iter()
        .take(budget)
        .map(|(pair, _)| pair.clone())
        .collect()
}

/// Number of distinct non-self-loop bigrams in the reference corpus; this
/// becomes the edge budget for every network in a comparison.
pub fn baseline_link_budget(reference: &[TokenizedDocument]) -> Result<usize> {
    if reference.is_empty() {
        return Err(Error::EmptyCorpus("reference".into()));
    }
    let distinct = count_bigrams(reference)
        .keys()
        .filter(|pair| !pair.is_self_loop())
        .count();
    if distinct == 0 {
        return Err(Error::EmptyCorpus("reference".into()));
    }
    Ok(distinct)
}

/// Undirected, unweighted network of stems. Counts are kept only as
/// provenance for exports.
#[derive(Debug, Clone)]
pub struct CooccurrenceNetwork {
    graph: Graph,
    edges: Vec<Bigram>,
    edge_counts: BTreeMap<Bigram, u64>,
    pub link_budget: usize,
    pub corpus_label: String,
}

impl CooccurrenceNetwork {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Edges in rank order (the order they were admitted under the budget).
    pub fn edges(&self) -> &[Bigram] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn nodes(&self) -> &[String] {
        self.graph.labels()
    }

    pub fn count(&self, pair: &Bigram) -> u64 {
        self.edge_counts.get(pair).copied().unwrap_or(0)
    }

    pub fn contains(&self, stem: &str) -> bool {
        self.graph.contains(stem)
    }

    /// Stems adjacent to `stem` in lexicographic order.
    pub fn neighbors(&self, stem: &str) -> Vec<&str> {
        match self.graph.index_of(stem) {
            Some(i) => self
                .graph
                .neighbors(i)
                .iter()
                .map(|&j| self.graph.label(j))
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn are_adjacent(&self, a: &str, b: &str) -> bool {
        match (self.graph.index_of(a), self.graph.index_of(b)) {
            (Some(u), Some(v)) => self.graph.has_edge(u, v),
            _ => false,
        }
    }

    /// Rebuild from an exported edge list with counts.
    pub fn from_counted_edges(
        edges: Vec<(Bigram, u64)>,
        link_budget: usize,
        corpus_label: impl Into<String>,
    ) -> Self {
        let counts: BigramCounts = edges.iter().cloned().collect();
        let order: Vec<Bigram> = edges.into_iter().map(|(p, _)| p).collect();
        build_network(&order, &counts, link_budget, corpus_label)
    }
}

/// Assemble a network from thresholded edges. Self-loops and duplicate
/// edges are dropped.
pub fn build_network(
    edges: &[Bigram],
    counts: &BigramCounts,
    link_budget: usize,
    corpus_label: impl Into<String>,
) -> CooccurrenceNetwork {
    let mut kept = Vec::with_capacity(edges.len());
    let mut edge_counts = BTreeMap::new();
    for pair in edges.iter().filter(|p| !p.is_self_loop()) {
        if edge_counts
            .insert(pair.clone(), counts.get(pair).copied().unwrap_or(0))
            .is_none()
        {
            kept.push(pair.clone());
        }
    }
    let graph = Graph::from_edges(kept.iter().map(|p| (p.first(), p.second())));
    CooccurrenceNetwork {
        graph,
        edges: kept,
        edge_counts,
        link_budget,
        corpus_label: corpus_label.into(),
    }
}

/// Count, threshold and build in one step.
pub fn network_from_corpus(
    corpus: &[TokenizedDocument],
    link_budget: usize,
    corpus_label: &str,
) -> (CooccurrenceNetwork, BigramCounts) {
    let counts = count_bigrams(corpus);
    let edges = threshold_top_m(&counts, link_budget);
    (
        build_network(&edges, &counts, link_budget, corpus_label),
        counts,
    )
}
