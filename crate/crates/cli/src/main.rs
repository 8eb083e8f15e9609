use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use emoframe::affect::{load_lexicons, AffectLexicon, AntonymMap};
use emoframe::cooccur::{baseline_link_budget, build_network, count_bigrams, threshold_top_m};
use emoframe::corpus::{read_corpus, CorpusFormat};
use emoframe::export::{
    bigrams_csv, network_graphml, network_json, rankings_csv, read_network_json, stats_csv,
    to_json_pretty, topics_csv, write_file, StatsRow,
};
use emoframe::graphan::{
    community_count_in_frame, frame_community_count, louvain, network_stats, rank_concepts,
    semantic_frame, CommunityScope, DEFAULT_RESOLUTION,
};
use emoframe::pipeline::{run_compare, RunConfig};
use emoframe::profiling::{flower_export, profile_frame, NegationRule, ProfileOptions};
use emoframe::text::{
    read_stopwords, tokenize_corpus, word_frequencies, PipelineConfig, TokenizedDocument,
};
use emoframe::topics::{
    fit_lda, frame_topic, lda_units, select_documents, DocGranularity, LdaParams,
};
use emoframe::{porter_stem, Error, ErrorKind, Result};

/// Emotional profiling of word co-occurrence networks.
///
/// Exit codes: 0 success, 2 configuration error, 3 data error, 4 analysis
/// error.
#[derive(Parser)]
#[command(name = "emoframe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full multi-corpus run from a JSON config; writes a report bundle.
    Run(RunArgs),
    /// Build a co-occurrence network and export it as JSON (and GraphML).
    BuildNetwork(BuildNetworkArgs),
    /// Semantic frame of a target word in an exported network.
    Frame(FrameArgs),
    /// Emotional profile and flower of a target word's frame.
    Profile(ProfileArgs),
    /// LDA on documents mentioning the target word.
    Topics(TopicsArgs),
    /// Clustering, assortativity and community counts of a network.
    Stats(StatsArgs),
    /// Top concepts by frequency and by closeness.
    Rank(RankArgs),
    /// Most frequent bigrams of a corpus.
    Bigrams(BigramsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    TxtDir,
    Jsonl,
    Csv,
}

impl From<Format> for CorpusFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::TxtDir => CorpusFormat::TxtDir,
            Format::Jsonl => CorpusFormat::Jsonl,
            Format::Csv => CorpusFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Network,
    Frame,
}

impl From<Scope> for CommunityScope {
    fn from(s: Scope) -> Self {
        match s {
            Scope::Network => CommunityScope::Network,
            Scope::Frame => CommunityScope::Frame,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Granularity {
    Document,
    Sentence,
}

impl From<Granularity> for DocGranularity {
    fn from(g: Granularity) -> Self {
        match g {
            Granularity::Document => DocGranularity::Document,
            Granularity::Sentence => DocGranularity::Sentence,
        }
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus path: a directory of .txt files, a .jsonl file or a .csv file.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    /// Label recorded in outputs; defaults to the file stem.
    #[arg(long)]
    label: Option<String>,
    /// Stopword list replacing the bundled one.
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

impl CorpusArgs {
    fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| {
            self.corpus
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "corpus".into())
        })
    }

    fn pipeline(&self) -> Result<PipelineConfig> {
        Ok(match &self.stopwords {
            Some(p) => PipelineConfig::with_stopwords(read_stopwords(p)?),
            None => PipelineConfig::default(),
        })
    }

    fn tokenize(&self) -> Result<Vec<TokenizedDocument>> {
        let docs = read_corpus(&self.corpus, self.format.into(), &self.label())?;
        Ok(tokenize_corpus(&docs, &self.pipeline()?))
    }
}

#[derive(Args)]
struct LexiconArgs {
    /// Valence/arousal/dominance lexicon (word, v, a, d).
    #[arg(long, env = "EMOFRAME_VAD")]
    vad: PathBuf,
    /// Word-emotion association lexicon (word, emotion, 0/1).
    #[arg(long, env = "EMOFRAME_EMOLEX")]
    emolex: PathBuf,
    /// Word-level antonym pairs used for negated words.
    #[arg(long, env = "EMOFRAME_ANTONYMS")]
    antonyms: Option<PathBuf>,
}

impl LexiconArgs {
    fn load(&self) -> Result<(AffectLexicon, Option<AntonymMap>)> {
        for p in [&self.vad, &self.emolex].into_iter().chain(&self.antonyms) {
            if !p.is_file() {
                return Err(Error::Config(format!(
                    "lexicon {} does not exist",
                    p.display()
                )));
            }
        }
        let lex = load_lexicons(&self.vad, &self.emolex, porter_stem)?;
        let antonyms = match &self.antonyms {
            Some(p) => Some(AntonymMap::load(p, porter_stem)?),
            None => None,
        };
        Ok((lex, antonyms))
    }
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    reference: Option<String>,
    #[arg(long, env = "EMOFRAME_VAD")]
    vad: Option<PathBuf>,
    #[arg(long, env = "EMOFRAME_EMOLEX")]
    emolex: Option<PathBuf>,
    #[arg(long, env = "EMOFRAME_ANTONYMS")]
    antonyms: Option<PathBuf>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    lda_iterations: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum)]
    community_scope: Option<Scope>,
    #[arg(long, value_enum)]
    doc_granularity: Option<Granularity>,
    /// Additional word forms selecting documents for LDA (repeatable).
    #[arg(long = "extra-form")]
    extra_forms: Vec<String>,
    #[arg(long)]
    with_replacement: bool,
    #[arg(long)]
    suppress_negated: bool,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    no_svg: bool,
}

#[derive(Args)]
struct BuildNetworkArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Reference corpus setting the link budget; defaults to the corpus itself.
    #[arg(long, conflicts_with = "budget")]
    reference: Option<PathBuf>,
    #[arg(long, value_enum, requires = "reference")]
    reference_format: Option<Format>,
    /// Explicit link budget.
    #[arg(long)]
    budget: Option<usize>,
    /// Network JSON output; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    graphml: Option<PathBuf>,
    /// Lexicons for GraphML valence labels.
    #[arg(long, requires = "emolex")]
    vad: Option<PathBuf>,
    #[arg(long, requires = "vad")]
    emolex: Option<PathBuf>,
}

#[derive(Args)]
struct FrameArgs {
    /// Network JSON from build-network.
    #[arg(long)]
    network: PathBuf,
    #[arg(long, default_value = "feel")]
    target: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long, default_value = "feel")]
    target: String,
    #[command(flatten)]
    lexicon: LexiconArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = emoframe::profiling::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    with_replacement: bool,
    #[arg(long)]
    suppress_negated: bool,
    #[arg(long, default_value_t = emoframe::profiling::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Full profile JSON; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Flower JSON.
    #[arg(long)]
    flower: Option<PathBuf>,
    /// Flower SVG (requires --flower).
    #[arg(long, requires = "flower")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct TopicsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "feel")]
    target: String,
    #[arg(long = "extra-form")]
    extra_forms: Vec<String>,
    /// Number of topics.
    #[arg(long, required_unless_present = "network", conflicts_with = "network")]
    k: Option<usize>,
    /// Take K as the frame community count in this network.
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "network")]
    community_scope: Scope,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = emoframe::topics::DEFAULT_ITERATIONS)]
    iterations: usize,
    /// Defaults to 50 / K.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = emoframe::topics::DEFAULT_BETA)]
    beta: f64,
    #[arg(long, value_enum, default_value = "document")]
    doc_granularity: Granularity,
    /// Words listed per topic.
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Topic table CSV; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Full model JSON.
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also report communities within this word's frame.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    network: PathBuf,
    /// Corpus supplying word frequencies.
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BigramsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value_t = 20)]
    top: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn stem(word: &str) -> String {
    porter_stem(&word.trim().to_lowercase())
}

fn run(args: RunArgs) -> Result<()> {
    let mut cfg = RunConfig::load(&args.config)?;
    let base = args
        .config
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.target {
        cfg.target_word = v;
    }
    if let Some(v) = args.reference {
        cfg.reference_label = Some(v);
    }
    if let Some(v) = args.vad {
        cfg.vad_path = v;
    }
    if let Some(v) = args.emolex {
        cfg.emolex_path = v;
    }
    if args.antonyms.is_some() {
        cfg.antonyms_path = args.antonyms;
    }
    if args.stopwords.is_some() {
        cfg.stopwords_path = args.stopwords;
    }
    if let Some(v) = args.lda_iterations {
        cfg.lda_iterations = v;
    }
    if args.alpha.is_some() {
        cfg.lda_alpha = args.alpha;
    }
    if let Some(v) = args.beta {
        cfg.lda_beta = v;
    }
    if let Some(v) = args.community_scope {
        cfg.community_scope = v.into();
    }
    if let Some(v) = args.doc_granularity {
        cfg.doc_granularity = v.into();
    }
    if !args.extra_forms.is_empty() {
        cfg.extra_target_forms = args.extra_forms;
    }
    cfg.with_replacement |= args.with_replacement;
    cfg.suppress_negated |= args.suppress_negated;
    if let Some(v) = args.threshold {
        cfg.threshold = v;
    }
    if args.no_svg {
        cfg.write_svg = false;
    }
    let out = match (&args.output, &cfg.output_dir) {
        (Some(o), _) => o.clone(),
        (None, Some(o)) if o.is_absolute() => o.clone(),
        (None, Some(o)) => base.join(o),
        (None, None) => return Err(Error::Config("no output directory given".into())),
    };
    let manifest = run_compare(&cfg, &base, &out)?;
    eprintln!(
        "wrote {} corpora to {} (link budget {})",
        manifest.corpora.len(),
        out.display(),
        manifest.link_budget
    );
    Ok(())
}

fn build_network_cmd(args: BuildNetworkArgs) -> Result<()> {
    let tokens = args.corpus.tokenize()?;
    let budget = match (args.budget, &args.reference) {
        (Some(m), _) => m,
        (None, Some(r)) => {
            let format = args.reference_format.unwrap_or(args.corpus.format);
            let docs = read_corpus(r, format.into(), "reference")?;
            baseline_link_budget(&tokenize_corpus(&docs, &args.corpus.pipeline()?))?
        }
        (None, None) => baseline_link_budget(&tokens)?,
    };
    let counts = count_bigrams(&tokens);
    let edges = threshold_top_m(&counts, budget);
    let net = build_network(&edges, &counts, budget, args.corpus.label());
    if let Some(p) = &args.graphml {
        let lex = match (&args.vad, &args.emolex) {
            (Some(v), Some(e)) => Some(load_lexicons(v, e, porter_stem)?),
            _ => None,
        };
        write_file(p, &network_graphml(&net, lex.as_ref()))?;
    }
    emit(args.output.as_deref(), &network_json(&net))
}

fn frame_cmd(args: FrameArgs) -> Result<()> {
    let net = read_network_json(&args.network)?;
    let frame = semantic_frame(&net, &stem(&args.target))?;
    emit(args.output.as_deref(), &to_json_pretty(&frame))
}

fn profile_cmd(args: ProfileArgs) -> Result<()> {
    if args.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let net = read_network_json(&args.network)?;
    let (lex, antonyms) = args.lexicon.load()?;
    let frame = semantic_frame(&net, &stem(&args.target))?;
    let rule = NegationRule {
        negation_stems: PipelineConfig::default().negation_stems(),
        antonyms,
        suppress_negated: args.suppress_negated,
    };
    let opts = ProfileOptions {
        trials: args.trials,
        seed: args.seed,
        with_replacement: args.with_replacement,
    };
    let profile = profile_frame(&frame, &net, &lex, &rule, &opts)?;
    if let Some(f) = &args.flower {
        flower_export(&profile.z, args.threshold, f, args.svg.as_deref())?;
    }
    emit(args.output.as_deref(), &to_json_pretty(&profile))
}

fn topics_cmd(args: TopicsArgs) -> Result<()> {
    let target = stem(&args.target);
    let k = match (args.k, &args.network) {
        (Some(k), _) => k,
        (None, Some(p)) => {
            let net = read_network_json(p)?;
            let frame = semantic_frame(&net, &target)?;
            let part = louvain(net.graph(), args.seed, DEFAULT_RESOLUTION);
            community_count_in_frame(
                &net,
                &part,
                &frame,
                args.community_scope.into(),
                args.seed,
                DEFAULT_RESOLUTION,
            )
        }
        (None, None) => unreachable!("clap requires --k or --network"),
    };
    let tokens = args.corpus.tokenize()?;
    let forms: BTreeSet<String> = std::iter::once(args.target.clone())
        .chain(args.extra_forms.iter().cloned())
        .collect();
    let docs = select_documents(&tokens, &forms);
    let units = lda_units(&docs, args.doc_granularity.into());
    let mut params = LdaParams::new(k, args.seed);
    params.iterations = args.iterations;
    params.beta = args.beta;
    if let Some(a) = args.alpha {
        params.alpha = a;
    }
    let model = fit_lda(&units, &params)?;
    if let Some(p) = &args.model {
        write_file(p, &to_json_pretty(&model))?;
    }
    let topic = frame_topic(&model, &target)?;
    eprintln!("K = {k}, frame topic = {topic}");
    emit(args.output.as_deref(), &topics_csv(&model, args.top, None))
}

fn stats_cmd(args: StatsArgs) -> Result<()> {
    let net = read_network_json(&args.network)?;
    let part = louvain(net.graph(), args.seed, DEFAULT_RESOLUTION);
    let stats = network_stats(&net, &part)?;
    let frame_count = match &args.target {
        Some(t) => Some(frame_community_count(
            &part,
            &semantic_frame(&net, &stem(t))?,
        )),
        None => None,
    };
    let row = StatsRow {
        corpus: net.corpus_label.clone(),
        stats,
        frame_community_count: frame_count,
    };
    emit(args.output.as_deref(), &stats_csv(&[row]))
}

fn rank_cmd(args: RankArgs) -> Result<()> {
    let net = read_network_json(&args.network)?;
    let freq = word_frequencies(&args.corpus.tokenize()?);
    emit(
        args.output.as_deref(),
        &rankings_csv(&rank_concepts(&net, &freq, args.k)),
    )
}

fn bigrams_cmd(args: BigramsArgs) -> Result<()> {
    let counts = count_bigrams(&args.corpus.tokenize()?);
    emit(args.output.as_deref(), &bigrams_csv(&counts, args.top))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::BuildNetwork(a) => build_network_cmd(a),
        Command::Frame(a) => frame_cmd(a),
        Command::Profile(a) => profile_cmd(a),
        Command::Topics(a) => topics_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Rank(a) => rank_cmd(a),
        Command::Bigrams(a) => bigrams_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Data => 3,
                ErrorKind::Analysis => 4,
            })
        }
    }
}
