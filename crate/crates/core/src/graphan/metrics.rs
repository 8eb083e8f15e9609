//! Closeness centrality, local clustering and degree assortativity.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// BFS distances from `source`; `None` for unreachable nodes.
fn bfs(graph: &Graph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0);
        for &v in graph.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Closeness with component-size scaling (Wasserman-Faust):
/// `((n_v - 1) / (N - 1)) * ((n_v - 1) / sum of distances)`, where `n_v` is
/// the size of the node's component. Singletons score 0.
pub fn closeness(graph: &Graph) -> Vec<f64> {
    let total = graph.node_count();
    (0..total)
        .into_par_iter()
        .map(|v| {
            let dist = bfs(graph, v);
            let (reached, sum) = dist
                .iter()
                .flatten()
                .fold((0usize, 0u64), |(n, s), &d| (n + 1, s + d as u64));
            let others = reached - 1;
            if others == 0 || total < 2 || sum == 0 {
                return 0.0;
            }
            let others = others as f64;
            (others / (total - 1) as f64) * (others / sum as f64)
        })
        .collect()
}

fn local_clustering(graph: &Graph, v: usize) -> f64 {
    let neigh = graph.neighbors(v);
    let deg = neigh.len();
    if deg < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in neigh.iter().enumerate() {
        for &b in &neigh[i + 1..] {
            if graph.has_edge(a, b) {
                links += 1;
            }
        }
    }
    links as f64 / (deg * (deg - 1) / 2) as f64
}

/// Mean local clustering coefficient over all nodes; nodes of degree < 2
/// contribute 0.
pub fn mean_local_clustering(graph: &Graph) -> Result<f64> {
    if graph.is_empty() {
        return Err(Error::Undefined(
            "mean local clustering of an empty network".into(),
        ));
    }
    let sum: f64 = (0..graph.node_count())
        .map(|v| local_clustering(graph, v))
        .sum();
    Ok(sum / graph.node_count() as f64)
}

/// Pearson correlation of endpoint degrees over all edges, each counted in
/// both directions. Sums are exact integers until the final division.
pub fn degree_assortativity(graph: &Graph) -> Result<f64> {
    if graph.edge_count() < 2 {
        return Err(Error::Undefined(format!(
            "assortativity needs at least 2 edges, network has {}",
            graph.edge_count()
        )));
    }
    let deg = |v: usize| graph.degree(v) as i128;
    let n = 2 * graph.edge_count() as i128;
    let mut sum = 0i128;
    let mut sum_sq = 0i128;
    let mut sum_xy = 0i128;
    for (u, v) in graph.edges() {
        let (du, dv) = (deg(u), deg(v));
        sum += du + dv;
        sum_sq += du * du + dv * dv;
        sum_xy += 2 * du * dv;
    }
    let variance = n * sum_sq - sum * sum;
    if variance == 0 {
        return Err(Error::Undefined(
            "assortativity with zero degree variance".into(),
        ));
    }
    let covariance = n * sum_xy - sum * sum;
    Ok(covariance as f64 / variance as f64)
}
