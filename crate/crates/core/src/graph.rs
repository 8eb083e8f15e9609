//! A small simple undirected graph over string labels.
//!
//! Nodes are kept in lexicographic order and addressed by dense indices, so
//! every traversal is deterministic.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Node list plus edge list, the serialisable view of a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl Graph {
    /// Build from label pairs. Self-loops and repeated edges are ignored.
    pub fn from_edges<I, S>(edges: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Self::from_nodes_and_edges(std::iter::empty::<&str>(), edges)
    }

    /// Like [`Graph::from_edges`] but also keeps the listed nodes, isolated or
    /// not.
    pub fn from_nodes_and_edges<N, T, I, S>(nodes: N, edges: I) -> Self
    where
        N: IntoIterator<Item = T>,
        T: AsRef<str>,
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let pairs: BTreeSet<(String, String)> = edges
            .into_iter()
            .filter(|(a, b)| a.as_ref() != b.as_ref())
            .map(|(a, b)| {
                let (a, b) = (a.as_ref().to_string(), b.as_ref().to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        let mut label_set: BTreeSet<String> =
            nodes.into_iter().map(|n| n.as_ref().to_string()).collect();
        for (a, b) in &pairs {
            label_set.insert(a.clone());
            label_set.insert(b.clone());
        }
        let labels: Vec<String> = label_set.into_iter().collect();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (a, b) in &pairs {
            let (u, v) = (index[a], index[b]);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            labels,
            index,
            adjacency,
            edge_count: pairs.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as index pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph on the given labels; unknown labels are skipped.
    pub fn induced<S: AsRef<str>>(&self, members: impl IntoIterator<Item = S>) -> Graph {
        let keep: BTreeSet<usize> = members
            .into_iter()
            .filter_map(|m| self.index_of(m.as_ref()))
            .collect();
        let nodes: Vec<&str> = keep.iter().map(|&i| self.label(i)).collect();
        let edges: Vec<(&str, &str)> = self
            .edges()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        Graph::from_nodes_and_edges(nodes, edges)
    }

    pub fn to_subgraph(&self) -> Subgraph {
        Subgraph {
            nodes: self.labels.clone(),
            edges: self
                .edges()
                .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
        }
    }
}
