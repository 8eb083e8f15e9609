//! File formats: network JSON and GraphML, and the CSV tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affect::AffectLexicon;
use crate::cooccur::{threshold_top_m, Bigram, BigramCounts, CooccurrenceNetwork};
use crate::error::{Error, Result};
use crate::graphan::{ConceptRankings, NetworkStats};
use crate::topics::{top_topic_words, TopicModel};

/// `{nodes: [...], edges: [[a, b, count], ...]}` plus budget and label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub corpus_label: String,
    pub link_budget: usize,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
}

impl NetworkJson {
    pub fn from_network(net: &CooccurrenceNetwork) -> Self {
        NetworkJson {
            corpus_label: net.corpus_label.clone(),
            link_budget: net.link_budget,
            nodes: net.nodes().to_vec(),
            edges: net
                .edges()
                .iter()
                .map(|p| (p.first().to_string(), p.second().to_string(), net.count(p)))
                .collect(),
        }
    }

    pub fn into_network(self) -> CooccurrenceNetwork {
        let edges = self
            .edges
            .into_iter()
            .map(|(a, b, n)| (Bigram::new(a, b), n))
            .collect();
        CooccurrenceNetwork::from_counted_edges(edges, self.link_budget, self.corpus_label)
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serialises to JSON");
    s.push('\n');
    s
}

pub fn network_json(net: &CooccurrenceNetwork) -> String {
    to_json_pretty(&NetworkJson::from_network(net))
}

pub fn read_network_json(path: &Path) -> Result<CooccurrenceNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parsed: NetworkJson = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.into(),
        source,
    })?;
    Ok(parsed.into_network())
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// GraphML with an edge `count` attribute and, when a lexicon is given, a
/// node `valence` label.
pub fn network_graphml(net: &CooccurrenceNetwork, lexicon: Option<&AffectLexicon>) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    if lexicon.is_some() {
        out.push_str(
            "  <key id=\"valence\" for=\"node\" attr.name=\"valence\" attr.type=\"string\"/>\n",
        );
    }
    out.push_str("  <key id=\"count\" for=\"edge\" attr.name=\"count\" attr.type=\"long\"/>\n");
    let _ = writeln!(
        out,
        "  <graph id=\"{}\" edgedefault=\"undirected\">",
        xml_escape(&net.corpus_label)
    );
    for node in net.nodes() {
        let id = xml_escape(node);
        match lexicon {
            Some(lex) => {
                let _ = writeln!(
                    out,
                    "    <node id=\"{id}\"><data key=\"valence\">{}</data></node>",
                    lex.valence_label(node)
                );
            }
            None => {
                let _ = writeln!(out, "    <node id=\"{id}\"/>");
            }
        }
    }
    for (i, pair) in net.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"{}\" target=\"{}\"><data key=\"count\">{}</data></edge>",
            xml_escape(pair.first()),
            xml_escape(pair.second()),
            net.count(pair)
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

/// `rank,stem_a,stem_b,count` for the `k` most frequent non-self-loop
/// bigrams.
pub fn bigrams_csv(counts: &BigramCounts, k: usize) -> String {
    let top = threshold_top_m(counts, k);
    csv_string(
        &["rank", "stem_a", "stem_b", "count"],
        top.iter().enumerate().map(|(i, p)| {
            vec![
                (i + 1).to_string(),
                p.first().to_string(),
                p.second().to_string(),
                counts[p].to_string(),
            ]
        }),
    )
}

/// `rank,freq_stem,clos_stem`.
pub fn rankings_csv(rankings: &ConceptRankings) -> String {
    let rows = rankings.by_frequency.len().max(rankings.by_closeness.len());
    csv_string(
        &["rank", "freq_stem", "clos_stem"],
        (0..rows).map(|i| {
            vec![
                (i + 1).to_string(),
                rankings
                    .by_frequency
                    .get(i)
                    .map(|r| r.0.clone())
                    .unwrap_or_default(),
                rankings
                    .by_closeness
                    .get(i)
                    .map(|r| r.0.clone())
                    .unwrap_or_default(),
            ]
        }),
    )
}

/// One stats row per corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub corpus: String,
    pub stats: NetworkStats,
    /// Communities among the target's frame members.
    pub frame_community_count: Option<usize>,
}

/// `corpus,mean_local_clustering,assortativity,community_count,frame_community_count`.
pub fn stats_csv(rows: &[StatsRow]) -> String {
    csv_string(
        &[
            "corpus",
            "mean_local_clustering",
            "assortativity",
            "community_count",
            "frame_community_count",
        ],
        rows.iter().map(|r| {
            vec![
                r.corpus.clone(),
                r.stats.mean_local_clustering.to_string(),
                r.stats
                    .degree_assortativity
                    .map(|a| a.to_string())
                    .unwrap_or_default(),
                r.stats.community_count.to_string(),
                r.frame_community_count
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
            ]
        }),
    )
}

/// `topic_id,rank,stem,count` for the top `k` words of every topic.
pub fn topics_csv(
    model: &TopicModel,
    k: usize,
    exclude: Option<&std::collections::BTreeSet<String>>,
) -> String {
    let mut rows = Vec::new();
    for topic in 0..model.k {
        for (rank, (stem, count)) in top_topic_words(model, topic, k, exclude)
            .into_iter()
            .enumerate()
        {
            rows.push(vec![
                topic.to_string(),
                (rank + 1).to_string(),
                stem,
                count.to_string(),
            ]);
        }
    }
    csv_string(&["topic_id", "rank", "stem", "count"], rows)
}

/// Parse a `rank,freq_stem,clos_stem` table back, for tests and tooling.
pub fn parse_csv_rows(text: &str) -> Result<Vec<BTreeMap<String, String>>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|source| Error::Csv {
            path: "<memory>".into(),
            source,
        })?
        .clone();
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|source| Error::Csv {
            path: "<memory>".into(),
            source,
        })?;
        out.push(
            headers
                .iter()
                .zip(row.iter())
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect(),
        );
    }
    Ok(out)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cooccur::build_network;

    fn sample() -> (CooccurrenceNetwork, BigramCounts) {
        let counts: BigramCounts = [
            (Bigram::new("i", "love"), 3),
            (Bigram::new("love", "you"), 3),
            (Bigram::new("a&b", "i"), 1),
            (Bigram::new("x", "x"), 9),
        ]
        .into_iter()
        .collect();
        let edges = threshold_top_m(&counts, 3);
        (build_network(&edges, &counts, 3, "notes"), counts)
    }

    #[test]
    fn json_round_trip() {
        let (net, _) = sample();
        let text = network_json(&net);
        let parsed: NetworkJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.edges[0], ("i".into(), "love".into(), 3));
        let back = parsed.clone().into_network();
        assert_eq!(NetworkJson::from_network(&back), parsed);
    }

    #[test]
    fn graphml_shape() {
        let (net, _) = sample();
        let xml = network_graphml(&net, None);
        assert_eq!(xml.matches("<node ").count(), 4);
        assert_eq!(xml.matches("<edge ").count(), 3);
        assert!(xml.contains("a&amp;b"));
        assert!(!xml.contains("valence"));
    }

    #[test]
    fn bigram_table() {
        let (_, counts) = sample();
        let csv = bigrams_csv(&counts, 2);
        assert_eq!(csv, "rank,stem_a,stem_b,count\n1,i,love,3\n2,love,you,3\n");
    }

    #[test]
    fn rankings_table_pads_short_columns() {
        let r = ConceptRankings {
            by_frequency: vec![("i".into(), 3), ("you".into(), 1)],
            by_closeness: vec![("i".into(), 1.0)],
        };
        let rows = parse_csv_rows(&rankings_csv(&r)).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1]["freq_stem"], "you");
        assert_eq!(rows[1]["clos_stem"], "");
    }
}
