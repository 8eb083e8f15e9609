//! Multi-corpus run: one network per corpus under a shared link budget,
//! then frame, profile, communities and topics, written as a report bundle.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affect::{load_lexicons, AffectLexicon, AntonymMap};
use crate::cooccur::{baseline_link_budget, build_network, count_bigrams, threshold_top_m};
use crate::corpus::{read_corpus, CorpusFormat};
use crate::error::{Error, Result};
use crate::export::{
    bigrams_csv, network_graphml, network_json, rankings_csv, stats_csv, to_json_pretty,
    topics_csv, write_file, StatsRow,
};
use crate::graphan::{
    community_count_in_frame, frame_community_count, louvain, network_stats, rank_concepts,
    semantic_frame, CommunityScope, DEFAULT_RESOLUTION,
};
use crate::porter::porter_stem;
use crate::profiling::{
    flower, flower_json, flower_svg, profile_frame, NegationRule, ProfileOptions,
};
use crate::text::{
    read_stopwords, tokenize_corpus, word_frequencies, PipelineConfig, TokenizedDocument,
};
use crate::topics::{fit_lda, frame_topic, lda_units, select_documents, DocGranularity, LdaParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub label: String,
    pub path: PathBuf,
    pub format: CorpusFormat,
}

fn default_target() -> String {
    "feel".into()
}
fn default_trials() -> usize {
    crate::profiling::DEFAULT_TRIALS
}
fn default_iterations() -> usize {
    crate::topics::DEFAULT_ITERATIONS
}
fn default_beta() -> f64 {
    crate::topics::DEFAULT_BETA
}
fn default_threshold() -> f64 {
    crate::profiling::DEFAULT_THRESHOLD
}
fn default_rank_k() -> usize {
    10
}
fn default_bigram_top() -> usize {
    20
}
fn default_true() -> bool {
    true
}

/// Run configuration. Relative paths resolve against the directory of the
/// config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub corpora: Vec<CorpusSpec>,
    /// Corpus whose distinct-bigram count sets the link budget. May be
    /// omitted when there is a single corpus.
    #[serde(default)]
    pub reference_label: Option<String>,
    #[serde(default = "default_target")]
    pub target_word: String,
    /// Further surface forms whose stems also select documents for LDA.
    #[serde(default)]
    pub extra_target_forms: Vec<String>,
    pub vad_path: PathBuf,
    pub emolex_path: PathBuf,
    #[serde(default)]
    pub antonyms_path: Option<PathBuf>,
    #[serde(default)]
    pub stopwords_path: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub with_replacement: bool,
    #[serde(default)]
    pub suppress_negated: bool,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub community_scope: CommunityScope,
    #[serde(default = "default_iterations")]
    pub lda_iterations: usize,
    /// Defaults to 50 / K.
    #[serde(default)]
    pub lda_alpha: Option<f64>,
    #[serde(default = "default_beta")]
    pub lda_beta: f64,
    #[serde(default)]
    pub doc_granularity: DocGranularity,
    #[serde(default = "default_rank_k")]
    pub rank_k: usize,
    #[serde(default = "default_bigram_top")]
    pub bigram_top: usize,
    #[serde(default = "default_true")]
    pub write_svg: bool,
    #[serde(default, skip_serializing)]
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str, source: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("{}: {e}", source.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, path)
    }

    pub fn reference(&self) -> Result<&str> {
        match &self.reference_label {
            Some(label) => Ok(label),
            None if self.corpora.len() == 1 => Ok(&self.corpora[0].label),
            None => Err(Error::Config(
                "reference_label is required when there is more than one corpus".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.corpora.is_empty() {
            return Err(Error::Config("no corpora configured".into()));
        }
        let mut seen = BTreeSet::new();
        for c in &self.corpora {
            if c.label.is_empty() || c.label.contains(['/', '\\']) || c.label.starts_with('.') {
                return Err(Error::Config(format!("invalid corpus label {:?}", c.label)));
            }
            if !seen.insert(c.label.as_str()) {
                return Err(Error::Config(format!(
                    "duplicate corpus label {:?}",
                    c.label
                )));
            }
        }
        let reference = self.reference()?;
        if !seen.contains(reference) {
            return Err(Error::Config(format!(
                "reference_label {reference:?} is not a corpus label"
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.target_word.trim().is_empty() {
            return Err(Error::Config("target_word is empty".into()));
        }
        if self.lda_iterations == 0 {
            return Err(Error::Config("lda_iterations must be at least 1".into()));
        }
        Ok(())
    }

    pub fn target_stem(&self) -> String {
        porter_stem(&self.target_word.trim().to_lowercase())
    }

    fn target_forms(&self) -> BTreeSet<String> {
        std::iter::once(&self.target_word)
            .chain(&self.extra_target_forms)
            .map(|f| f.trim().to_lowercase())
            .collect()
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn require_file(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{what} {} does not exist",
            path.display()
        )))
    }
}

fn stage<T>(stage: &'static str, corpus: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage,
        corpus: corpus.to_string(),
        source: Box::new(e),
    })
}

/// Shared inputs loaded once per run.
pub struct Inputs {
    pub text: PipelineConfig,
    pub lexicon: AffectLexicon,
    pub antonyms: Option<AntonymMap>,
}

pub fn load_inputs(cfg: &RunConfig, base: &Path) -> Result<Inputs> {
    let vad = resolve(base, &cfg.vad_path);
    let emolex = resolve(base, &cfg.emolex_path);
    require_file(&vad, "VAD lexicon")?;
    require_file(&emolex, "emotion lexicon")?;
    let text = match &cfg.stopwords_path {
        Some(p) => {
            let p = resolve(base, p);
            require_file(&p, "stopword list")?;
            PipelineConfig::with_stopwords(read_stopwords(&p)?)
        }
        None => PipelineConfig::default(),
    };
    let lexicon = load_lexicons(&vad, &emolex, porter_stem)?;
    let antonyms = match &cfg.antonyms_path {
        Some(p) => {
            let p = resolve(base, p);
            require_file(&p, "antonym list")?;
            Some(AntonymMap::load(&p, porter_stem)?)
        }
        None => None,
    };
    Ok(Inputs {
        text,
        lexicon,
        antonyms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub label: String,
    pub documents: usize,
    pub tokens: usize,
    pub vocabulary: usize,
    pub distinct_bigrams: usize,
    pub link_budget: usize,
    pub node_count: usize,
    pub edge_count: usize,
    pub frame_size: usize,
    /// |C|: communities among the frame members.
    pub frame_community_count: usize,
    pub lda_documents: usize,
    pub topic_k: usize,
    pub frame_topic: usize,
    pub artifacts: BTreeMap<String, Artifact>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub reference_label: String,
    pub target_stem: String,
    pub link_budget: usize,
    pub seed: u64,
    pub corpora: Vec<CorpusSummary>,
    pub stats: Artifact,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Writer<'a> {
    root: &'a Path,
    dir: String,
    artifacts: BTreeMap<String, Artifact>,
}

impl Writer<'_> {
    fn put(&mut self, name: &str, file: &str, contents: &str) -> Result<()> {
        let rel = format!("{}/{}", self.dir, file);
        write_file(&self.root.join(&rel), contents)?;
        self.artifacts.insert(
            name.to_string(),
            Artifact {
                path: rel,
                sha256: sha256_hex(contents.as_bytes()),
            },
        );
        Ok(())
    }

    /// Written but not hashed: renderings are not part of the
    /// byte-identity contract.
    fn put_unhashed(&self, file: &str, contents: &str) -> Result<()> {
        write_file(&self.root.join(&self.dir).join(file), contents)
    }
}

#[derive(Serialize)]
struct CorpusStatsJson<'a> {
    label: &'a str,
    documents: usize,
    empty_documents: usize,
    tokens: usize,
    sentences: usize,
    vocabulary: usize,
    distinct_bigrams: usize,
}

fn analyse_corpus(
    cfg: &RunConfig,
    inputs: &Inputs,
    label: &str,
    tokens: &[TokenizedDocument],
    budget: usize,
    out: &Path,
) -> Result<(CorpusSummary, StatsRow)> {
    let target = cfg.target_stem();
    let counts = count_bigrams(tokens);
    let distinct_bigrams = counts.keys().filter(|b| !b.is_self_loop()).count();
    let edges = threshold_top_m(&counts, budget);
    let net = build_network(&edges, &counts, budget, label);
    let freq = word_frequencies(tokens);

    let mut w = Writer {
        root: out,
        dir: label.to_string(),
        artifacts: BTreeMap::new(),
    };
    let corpus_stats = CorpusStatsJson {
        label,
        documents: tokens.len(),
        empty_documents: tokens.iter().filter(|d| d.is_empty()).count(),
        tokens: tokens.iter().map(|d| d.token_count()).sum(),
        sentences: tokens.iter().map(|d| d.sentences.len()).sum(),
        vocabulary: freq.len(),
        distinct_bigrams,
    };
    w.put(
        "corpus_stats",
        "corpus_stats.json",
        &to_json_pretty(&corpus_stats),
    )?;
    w.put("network", "network.json", &network_json(&net))?;
    w.put(
        "graphml",
        "network.graphml",
        &network_graphml(&net, Some(&inputs.lexicon)),
    )?;
    w.put(
        "bigrams",
        "bigrams.csv",
        &bigrams_csv(&counts, cfg.bigram_top),
    )?;
    w.put(
        "rankings",
        "rankings.csv",
        &rankings_csv(&rank_concepts(&net, &freq, cfg.rank_k)),
    )?;

    let partition = louvain(net.graph(), cfg.seed, DEFAULT_RESOLUTION);
    let stats = stage("stats", label, network_stats(&net, &partition))?;
    w.put(
        "communities",
        "communities.json",
        &to_json_pretty(&partition),
    )?;

    let frame = stage("frame", label, semantic_frame(&net, &target))?;
    w.put("frame", "frame.json", &to_json_pretty(&frame))?;

    let rule = NegationRule {
        negation_stems: inputs.text.negation_stems(),
        antonyms: inputs.antonyms.clone(),
        suppress_negated: cfg.suppress_negated,
    };
    let opts = ProfileOptions {
        trials: cfg.trials,
        seed: cfg.seed,
        with_replacement: cfg.with_replacement,
    };
    let profile = stage(
        "profile",
        label,
        profile_frame(&frame, &net, &inputs.lexicon, &rule, &opts),
    )?;
    w.put("profile", "profile.json", &to_json_pretty(&profile))?;
    w.put(
        "flower",
        "flower.json",
        &flower_json(&profile.z, cfg.threshold),
    )?;
    if cfg.write_svg {
        w.put_unhashed(
            "flower.svg",
            &flower_svg(&flower(&profile.z, cfg.threshold)),
        )?;
    }

    let c = community_count_in_frame(
        &net,
        &partition,
        &frame,
        cfg.community_scope,
        cfg.seed,
        DEFAULT_RESOLUTION,
    );
    let docs = select_documents(tokens, &cfg.target_forms());
    let units = lda_units(&docs, cfg.doc_granularity);
    let mut params = LdaParams::new(c, cfg.seed);
    params.iterations = cfg.lda_iterations;
    params.beta = cfg.lda_beta;
    if let Some(a) = cfg.lda_alpha {
        params.alpha = a;
    }
    let model = stage("topics", label, fit_lda(&units, &params))?;
    let topic = stage("topics", label, frame_topic(&model, &target))?;
    w.put(
        "topics",
        "topics.csv",
        &topics_csv(&model, cfg.rank_k, None),
    )?;
    w.put("topic_model", "topic_model.json", &to_json_pretty(&model))?;

    let summary = CorpusSummary {
        label: label.to_string(),
        documents: tokens.len(),
        tokens: corpus_stats.tokens,
        vocabulary: freq.len(),
        distinct_bigrams,
        link_budget: net.link_budget,
        node_count: net.node_count(),
        edge_count: net.edge_count(),
        frame_size: frame.len(),
        frame_community_count: c,
        lda_documents: units.len(),
        topic_k: model.k,
        frame_topic: topic,
        artifacts: w.artifacts,
    };
    let row = StatsRow {
        corpus: label.to_string(),
        stats,
        frame_community_count: Some(frame_community_count(&partition, &frame)),
    };
    Ok((summary, row))
}

/// Run every stage for every corpus and write the bundle to `output_dir`.
/// `base` resolves relative paths in the config.
pub fn run_compare(cfg: &RunConfig, base: &Path, output_dir: &Path) -> Result<Manifest> {
    cfg.validate()?;
    let reference = cfg.reference()?.to_string();
    let inputs = load_inputs(cfg, base)?;

    let tokenized: Vec<Vec<TokenizedDocument>> = cfg
        .corpora
        .par_iter()
        .map(|c| {
            let docs = stage(
                "read",
                &c.label,
                read_corpus(&resolve(base, &c.path), c.format, &c.label),
            )?;
            Ok(tokenize_corpus(&docs, &inputs.text))
        })
        .collect::<Result<_>>()?;

    let ref_idx = cfg
        .corpora
        .iter()
        .position(|c| c.label == reference)
        .expect("validated reference label");
    let budget = stage(
        "link-budget",
        &reference,
        baseline_link_budget(&tokenized[ref_idx]),
    )?;

    std::fs::create_dir_all(output_dir).map_err(|e| Error::io(output_dir, e))?;
    let results: Vec<(CorpusSummary, StatsRow)> = cfg
        .corpora
        .par_iter()
        .zip(&tokenized)
        .map(|(c, tokens)| analyse_corpus(cfg, &inputs, &c.label, tokens, budget, output_dir))
        .collect::<Result<_>>()?;

    let (corpora, rows): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let stats_text = stats_csv(&rows);
    write_file(&output_dir.join("stats.csv"), &stats_text)?;
    let manifest = Manifest {
        config: cfg.clone(),
        reference_label: reference,
        target_stem: cfg.target_stem(),
        link_budget: budget,
        seed: cfg.seed,
        corpora,
        stats: Artifact {
            path: "stats.csv".into(),
            sha256: sha256_hex(stats_text.as_bytes()),
        },
    };
    write_file(
        &output_dir.join("manifest.json"),
        &to_json_pretty(&manifest),
    )?;
    Ok(manifest)
}
