//! Semantic frames (network neighbourhoods), community counts inside a
//! frame, and concept rankings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cooccur::CooccurrenceNetwork;
use crate::error::{Error, Result};
use crate::graph::Subgraph;
use crate::graphan::louvain::{louvain, Partition};

/// A target stem, its neighbours, and the edges among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticFrame {
    pub target: String,
    /// Target plus neighbours, sorted.
    pub members: Vec<String>,
    pub induced_edges: Vec<(String, String)>,
}

impl SemanticFrame {
    /// Members other than the target.
    pub fn neighbours(&self) -> impl Iterator<Item = &str> {
        self.members
            .iter()
            .map(String::as_str)
            .filter(move |m| *m != self.target)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn semantic_frame(net: &CooccurrenceNetwork, target: &str) -> Result<SemanticFrame> {
    if !net.contains(target) {
        return Err(Error::NotFound(target.to_string()));
    }
    let mut members: BTreeSet<String> = net
        .neighbors(target)
        .into_iter()
        .map(String::from)
        .collect();
    members.insert(target.to_string());
    let induced = net.graph().induced(&members);
    Ok(SemanticFrame {
        target: target.to_string(),
        members: members.into_iter().collect(),
        induced_edges: induced.to_subgraph().edges,
    })
}

/// Number of distinct communities among the frame's members.
pub fn frame_community_count(part: &Partition, frame: &SemanticFrame) -> usize {
    frame
        .members
        .iter()
        .filter_map(|m| part.community_of(m))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Which partition |C| is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommunityScope {
    /// Louvain on the whole network, restricted to frame members.
    #[default]
    Network,
    /// Louvain re-run on the frame's induced subgraph.
    Frame,
}

/// |C| under the requested scope. For [`CommunityScope::Network`] the
/// supplied whole-network partition is used.
pub fn community_count_in_frame(
    net: &CooccurrenceNetwork,
    network_partition: &Partition,
    frame: &SemanticFrame,
    scope: CommunityScope,
    seed: u64,
    resolution: f64,
) -> usize {
    match scope {
        CommunityScope::Network => frame_community_count(network_partition, frame),
        CommunityScope::Frame => {
            let sub = net.graph().induced(&frame.members);
            louvain(&sub, seed, resolution).community_count()
        }
    }
}

/// Induced subgraph on the community containing `target`.
pub fn frame_community_subgraph(
    net: &CooccurrenceNetwork,
    part: &Partition,
    target: &str,
) -> Result<Subgraph> {
    let community = part
        .community_of(target)
        .filter(|_| net.contains(target))
        .ok_or_else(|| Error::NotFound(target.to_string()))?;
    Ok(net.graph().induced(part.members(community)).to_subgraph())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptRankings {
    pub by_frequency: Vec<(String, u64)>,
    pub by_closeness: Vec<(String, f64)>,
}

/// Top-k network nodes by corpus frequency and by closeness, descending,
/// ties broken lexicographically.
pub fn rank_concepts(
    net: &CooccurrenceNetwork,
    word_freq: &BTreeMap<String, u64>,
    k: usize,
) -> ConceptRankings {
    let graph = net.graph();
    let clos = super::metrics::closeness(graph);

    let mut by_frequency: Vec<(String, u64)> = graph
        .labels()
        .iter()
        .map(|s| (s.clone(), word_freq.get(s).copied().unwrap_or(0)))
        .collect();
    by_frequency.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    by_frequency.truncate(k);

    let mut by_closeness: Vec<(String, f64)> = graph.labels().iter().cloned().zip(clos).collect();
    by_closeness.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    by_closeness.truncate(k);

    ConceptRankings {
        by_frequency,
        by_closeness,
    }
}
