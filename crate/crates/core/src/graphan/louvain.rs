//! Two-phase Louvain modularity optimisation on an unweighted graph.
//!
//! Phase one moves single nodes between neighbouring communities, visiting
//! nodes in a seeded random order and accepting a move only on strict
//! modularity gain. Phase two collapses communities into weighted
//! super-nodes. The two alternate until a level produces no move.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Stem -> community id, ids dense from 0.
    pub assignment: BTreeMap<String, usize>,
    pub modularity: f64,
}

impl Partition {
    pub fn community_count(&self) -> usize {
        self.assignment.values().max().map_or(0, |&m| m + 1)
    }

    pub fn community_of(&self, stem: &str) -> Option<usize> {
        self.assignment.get(stem).copied()
    }

    pub fn members(&self, community: usize) -> Vec<&str> {
        self.assignment
            .iter()
            .filter(|(_, &c)| c == community)
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

/// Modularity of a node -> community assignment (indices follow
/// `graph.labels()`).
pub fn modularity(graph: &Graph, assignment: &[usize], resolution: f64) -> f64 {
    let m = graph.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let communities = assignment.iter().max().map_or(0, |&c| c + 1);
    let mut internal = vec![0.0; communities];
    let mut degree = vec![0.0; communities];
    for v in 0..graph.node_count() {
        degree[assignment[v]] += graph.degree(v) as f64;
    }
    for (u, v) in graph.edges() {
        if assignment[u] == assignment[v] {
            internal[assignment[u]] += 1.0;
        }
    }
    internal
        .iter()
        .zip(&degree)
        .map(|(l, d)| l / m - resolution * (d / (2.0 * m)).powi(2))
        .sum()
}

/// Result of a run, with the modularity reached after each level.
#[derive(Debug, Clone)]
pub struct LouvainTrace {
    pub assignment: Vec<usize>,
    pub level_modularity: Vec<f64>,
}

struct Level {
    adjacency: Vec<Vec<(usize, f64)>>,
    /// Total degree of each (super-)node, self-loops counted twice.
    strength: Vec<f64>,
}

impl Level {
    fn from_graph(graph: &Graph) -> Self {
        Level {
            adjacency: (0..graph.node_count())
                .map(|u| graph.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
                .collect(),
            strength: (0..graph.node_count())
                .map(|u| graph.degree(u) as f64)
                .collect(),
        }
    }

    fn len(&self) -> usize {
        self.strength.len()
    }

    /// Local moving phase. Returns the community of each node and whether
    /// anything moved.
    fn move_nodes(&self, two_m: f64, resolution: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = self.strength.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);

        let mut weight_to = vec![0.0; n];
        let mut seen = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut any_move = false;
        loop {
            let mut moved = false;
            for &node in &order {
                let home = community[node];
                let k = self.strength[node];
                for &(other, w) in &self.adjacency[node] {
                    let c = community[other];
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    weight_to[c] += w;
                }
                total[home] -= k;
                // gains scaled by 2m; exact for integer weights at resolution 1
                let gain = |c: usize, weight_to: &[f64], total: &[f64]| {
                    weight_to[c] * two_m - resolution * total[c] * k
                };
                let mut best = home;
                let mut best_gain = gain(home, &weight_to, &total);
                for &c in &touched {
                    let g = gain(c, &weight_to, &total);
                    if g > best_gain {
                        best = c;
                        best_gain = g;
                    }
                }
                total[best] += k;
                community[node] = best;
                if best != home {
                    moved = true;
                }
                for &c in &touched {
                    weight_to[c] = 0.0;
                    seen[c] = false;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
            any_move = true;
        }
        (community, any_move)
    }

    /// Collapse communities (already dense) into super-nodes.
    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut weights: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        let mut strength = vec![0.0; count];
        for u in 0..self.len() {
            let cu = community[u];
            strength[cu] += self.strength[u];
            for &(v, w) in &self.adjacency[u] {
                let cv = community[v];
                if cu != cv {
                    *weights[cu].entry(cv).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adjacency: weights
                .into_iter()
                .map(|m| m.into_iter().collect())
                .collect(),
            strength,
        }
    }
}

/// Renumber so ids are dense and appear in order of first occurrence.
fn densify(community: &[usize]) -> (Vec<usize>, usize) {
    let mut map = BTreeMap::new();
    let mut out = Vec::with_capacity(community.len());
    for &c in community {
        let next = map.len();
        out.push(*map.entry(c).or_insert(next));
    }
    (out, map.len())
}

pub fn louvain_trace(graph: &Graph, seed: u64, resolution: f64) -> LouvainTrace {
    let n = graph.node_count();
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut level_modularity = vec![modularity(graph, &assignment, resolution)];
    if graph.edge_count() == 0 {
        return LouvainTrace {
            assignment,
            level_modularity,
        };
    }
    let two_m = 2.0 * graph.edge_count() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = Level::from_graph(graph);
    loop {
        let (community, moved) = level.move_nodes(two_m, resolution, &mut rng);
        if !moved {
            break;
        }
        let (community, count) = densify(&community);
        for a in assignment.iter_mut() {
            *a = community[*a];
        }
        level_modularity.push(modularity(graph, &assignment, resolution));
        if count == level.len() {
            break;
        }
        level = level.aggregate(&community, count);
    }
    let (assignment, _) = densify(&assignment);
    LouvainTrace {
        assignment,
        level_modularity,
    }
}

/// Louvain communities of `graph` under a seeded sweep order.
pub fn louvain(graph: &Graph, seed: u64, resolution: f64) -> Partition {
    let trace = louvain_trace(graph, seed, resolution);
    let modularity = modularity(graph, &trace.assignment, resolution);
    Partition {
        assignment: graph
            .labels()
            .iter()
            .cloned()
            .zip(trace.assignment)
            .collect(),
        modularity,
    }
}
