//! Graph analytics over co-occurrence networks.

pub mod frame;
pub mod louvain;
pub mod metrics;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cooccur::CooccurrenceNetwork;
use crate::error::{Error, Result};

pub use frame::{
    community_count_in_frame, frame_community_count, frame_community_subgraph, rank_concepts,
    semantic_frame, CommunityScope, ConceptRankings, SemanticFrame,
};
pub use louvain::{louvain, modularity, Partition};
pub use metrics::{degree_assortativity, mean_local_clustering};

/// Louvain resolution used throughout the pipeline.
pub const DEFAULT_RESOLUTION: f64 = 1.0;

/// Closeness of every node, keyed by stem.
pub fn closeness(net: &CooccurrenceNetwork) -> BTreeMap<String, f64> {
    let graph = net.graph();
    graph
        .labels()
        .iter()
        .cloned()
        .zip(metrics::closeness(graph))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkStats {
    pub mean_local_clustering: f64,
    /// `None` when undefined (fewer than two edges or no degree variance).
    pub degree_assortativity: Option<f64>,
    /// Communities in the whole-network Louvain partition.
    pub community_count: usize,
}

pub fn network_stats(net: &CooccurrenceNetwork, partition: &Partition) -> Result<NetworkStats> {
    Ok(NetworkStats {
        mean_local_clustering: mean_local_clustering(net.graph())?,
        degree_assortativity: match degree_assortativity(net.graph()) {
            Ok(r) => Some(r),
            Err(Error::Undefined(_)) => None,
            Err(e) => return Err(e),
        },
        community_count: partition.community_count(),
    })
}
