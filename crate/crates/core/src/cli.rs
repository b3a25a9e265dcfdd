//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it in-process.

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::annotation::conllu::{bundled_treebank, ingest_conllu};
use crate::annotation::{AnnotatedHeadline, Annotator, ParserParams, TaggerParams};
use crate::blocker::{Blocker, ConceptGraph, Method};
use crate::classifier::{table2, FeatureGroup, LexiconMatcher, ModelKind, Prepared, TrainConfig};
use crate::corpus::{
    compute_corpus_stats, load_corpus, sample_corpus, CorpusFormat, LabeledHeadline, Lexicons,
};
use crate::error::Error;
use crate::model::{Engine, ModelBundle};
use crate::report;
use crate::service::{self, Service, ServiceConfig};
use crate::simulate::{load_events, simulate, SimulationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_TRAINING: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "clickbait",
    version,
    about = "Clickbait headline classifier and personalized blocker"
)]
pub struct Cli {
    /// key=value settings file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train annotators and the classifier, write a model bundle.
    Train(TrainArgs),
    /// Cross-validate every feature group and model kind.
    Eval(EvalArgs),
    /// Label headlines with a trained bundle.
    Classify(ClassifyArgs),
    /// Comparative corpus statistics.
    Stats(StatsArgs),
    /// Replay click/block histories and score the blocking methods.
    SimulateBlock(SimulateArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Both,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Labeled corpus (.jsonl or .tsv); the bundled sample when omitted.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// CoNLL-U treebank for the tagger and parser; the bundled one when omitted.
    #[arg(long)]
    pub treebank: Option<PathBuf>,
    /// Directory of lexicon files; the bundled lexicons when omitted.
    #[arg(long)]
    pub lexicons: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainOpts {
    #[arg(long)]
    pub model: Option<ModelKind>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "min-doc-freq")]
    pub min_doc_freq: Option<u32>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub opts: TrainOpts,
    /// Output bundle path.
    #[arg(long)]
    pub bundle: Option<PathBuf>,
    /// Version number stamped into the bundle.
    #[arg(long = "model-version")]
    pub model_version: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub opts: TrainOpts,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long, value_enum, default_value = "both")]
    pub format: Format,
    /// Also write the CSV report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub bundle: Option<PathBuf>,
    /// Read one headline per line from this file ("-" for stdin).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Headlines to classify; a single "-" reads stdin.
    pub texts: Vec<String>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub format: Format,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON-Lines profile events.
    #[arg(long)]
    pub events: PathBuf,
    /// pattern, topic, hybrid, or all.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub holdout: Option<f64>,
    /// Bundle whose annotators to use; trained from the treebank when omitted.
    #[arg(long)]
    pub bundle: Option<PathBuf>,
    #[arg(long)]
    pub treebank: Option<PathBuf>,
    /// Concept graph file, or "toy" for the bundled five-node fixture.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long = "hybrid-weight")]
    pub hybrid_weight: Option<f64>,
    #[arg(long, value_enum, default_value = "both")]
    pub format: Format,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub bundle: Option<PathBuf>,
    #[arg(long)]
    pub listen: Option<String>,
    #[arg(long = "state-dir")]
    pub state_dir: Option<PathBuf>,
    /// Base corpus for retraining.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub method: Option<Method>,
    /// Seconds between scheduled retrains; 0 disables.
    #[arg(long = "retrain-interval")]
    pub retrain_interval: Option<u64>,
}

const CONFIG_KEYS: [&str; 20] = [
    "corpus",
    "treebank",
    "lexicons",
    "bundle",
    "model",
    "folds",
    "seed",
    "min-doc-freq",
    "method",
    "listen",
    "state-dir",
    "graph",
    "holdout",
    "hybrid-weight",
    "retrain-interval",
    "svm-c",
    "svm-gamma",
    "forest-trees",
    "inner-folds",
    "model-version",
];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(Error::Training(_)) => EXIT_TRAINING,
            CliError::Core(Error::InvalidArgument(_)) => EXIT_USAGE,
            CliError::Core(_) => EXIT_DATA,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Settings from the config file. Keys are the long flag names.
#[derive(Debug, Default, Clone)]
pub struct Settings(HashMap<String, String>);

impl Settings {
    pub fn parse(text: &str) -> CliResult<Settings> {
        let mut m = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", i + 1))
            })?;
            let k = k.trim().replace('_', "-");
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {k:?}",
                    i + 1
                )));
            }
            m.insert(k, v.trim().to_string());
        }
        Ok(Settings(m))
    }

    pub fn load(path: &Path) -> CliResult<Settings> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Core(Error::io(path, e)))?;
        Settings::parse(&text)
    }

    /// Flag value, else config value, else None.
    pub fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key {key}: {e}"))),
            None => Ok(None),
        }
    }

    pub fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }
}

fn load_headlines(path: Option<PathBuf>, err: &mut dyn Write) -> CliResult<Vec<LabeledHeadline>> {
    match path {
        None => Ok(sample_corpus()),
        Some(p) => {
            let loaded = load_corpus(&p, CorpusFormat::from_path(&p))?;
            if !loaded.rejected.is_empty() {
                let _ = writeln!(
                    err,
                    "skipped {} malformed line(s) in {}",
                    loaded.rejected.len(),
                    p.display()
                );
                for (line, why) in loaded.rejected.iter().take(10) {
                    let _ = writeln!(err, "  line {line}: {why}");
                }
            }
            Ok(loaded.headlines)
        }
    }
}

fn load_treebank(path: Option<PathBuf>, err: &mut dyn Write) -> CliResult<Vec<AnnotatedHeadline>> {
    match path {
        None => Ok(bundled_treebank()),
        Some(p) => {
            let ing = ingest_conllu(&p)?;
            if !ing.warnings.is_empty() {
                let _ = writeln!(
                    err,
                    "{} treebank warning(s) in {}",
                    ing.warnings.len(),
                    p.display()
                );
            }
            if ing.headlines.is_empty() {
                return Err(Error::Data(format!(
                    "treebank {} has no usable sentences",
                    p.display()
                ))
                .into());
            }
            Ok(ing.headlines)
        }
    }
}

fn load_lexicons(dir: Option<PathBuf>) -> CliResult<Lexicons> {
    Ok(match dir {
        None => Lexicons::bundled(),
        Some(d) => Lexicons::load_dir(&d)?,
    })
}

fn train_annotator(treebank: &[AnnotatedHeadline]) -> CliResult<Annotator> {
    Ok(Annotator::train(
        treebank,
        &TaggerParams::default(),
        &ParserParams::default(),
    )?)
}

fn train_config(s: &Settings, o: &TrainOpts) -> CliResult<TrainConfig> {
    let mut cfg = TrainConfig::default();
    cfg.model = s.or(o.model, "model", cfg.model)?;
    cfg.seed = s.or(o.seed, "seed", cfg.seed)?;
    cfg.min_doc_freq = s.or(o.min_doc_freq, "min-doc-freq", cfg.min_doc_freq)?;
    cfg.inner_folds = s.or(None, "inner-folds", cfg.inner_folds)?;
    cfg.svm.c = s.or(None, "svm-c", cfg.svm.c)?;
    cfg.svm.gamma = s.get(None, "svm-gamma")?.or(cfg.svm.gamma);
    cfg.forest.n_trees = s.or(None, "forest-trees", cfg.forest.n_trees)?;
    if cfg.svm.c <= 0.0 || cfg.svm.gamma.is_some_and(|g| g <= 0.0) {
        return Err(CliError::Usage(
            "svm-c and svm-gamma must be positive".into(),
        ));
    }
    Ok(cfg)
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    table: String,
    csv: String,
    csv_path: Option<&Path>,
) -> CliResult {
    let w = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| CliError::Core(Error::io("<stdout>", e)))
    };
    match format {
        Format::Table => w(out, &table)?,
        Format::Csv => w(out, &csv)?,
        Format::Both => {
            w(out, &table)?;
            w(out, "\n")?;
            w(out, &csv)?;
        }
    }
    if let Some(p) = csv_path {
        std::fs::write(p, csv).map_err(|e| CliError::Core(Error::io(p, e)))?;
    }
    Ok(())
}

fn cmd_train(s: &Settings, a: TrainArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let bundle_path: PathBuf = s
        .get(a.bundle, "bundle")?
        .ok_or_else(|| CliError::Usage("--bundle is required".into()))?;
    let cfg = train_config(s, &a.opts)?;
    let version = s.or(a.model_version, "model-version", 1u64)?;
    let corpus = load_headlines(s.get(a.data.corpus, "corpus")?, err)?;
    let treebank = load_treebank(s.get(a.data.treebank, "treebank")?, err)?;
    let lexicons = load_lexicons(s.get(a.data.lexicons, "lexicons")?)?;
    let start = Instant::now();
    let bundle = ModelBundle::train(&corpus, &treebank, lexicons, &cfg, version)?;
    bundle.save(&bundle_path)?;
    let _ = writeln!(out, "bundle      {}", bundle_path.display());
    let _ = writeln!(out, "version     {}", bundle.version);
    let _ = writeln!(out, "model       {}", cfg.model.name());
    let _ = writeln!(out, "headlines   {}", bundle.corpus_size);
    let _ = writeln!(out, "corpus hash {}", bundle.corpus_hash);
    let _ = writeln!(out, "bundle hash {}", bundle.hash()?);
    let _ = writeln!(out, "elapsed     {:.1}s", start.elapsed().as_secs_f64());
    Ok(())
}

fn cmd_eval(s: &Settings, a: EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let cfg = train_config(s, &a.opts)?;
    let k = s.or(a.folds, "folds", 10usize)?;
    let models: Vec<ModelKind> = match s.get(a.opts.model, "model")? {
        Some(m) => vec![m],
        None => vec![ModelKind::Svm, ModelKind::Tree, ModelKind::Forest],
    };
    let corpus = load_headlines(s.get(a.data.corpus, "corpus")?, err)?;
    let treebank = load_treebank(s.get(a.data.treebank, "treebank")?, err)?;
    let lexicons = load_lexicons(s.get(a.data.lexicons, "lexicons")?)?;
    let annotator = train_annotator(&treebank)?;
    let lex = LexiconMatcher::new(&lexicons);
    let prep = Prepared::new(corpus, &annotator, &lex);
    let groups = [
        FeatureGroup::SentenceStructure,
        FeatureGroup::WordPatterns,
        FeatureGroup::ClickbaitLanguage,
        FeatureGroup::NGrams,
        FeatureGroup::All,
    ];
    let t = table2(&prep, &lex, &cfg, &models, &groups, k, cfg.seed)?;
    emit(
        out,
        a.format,
        report::table2_table(&t),
        report::table2_csv(&t),
        a.csv.as_deref(),
    )
}

fn read_lines(r: &mut dyn BufRead) -> CliResult<Vec<String>> {
    let mut v = Vec::new();
    for line in r.lines() {
        let line = line.map_err(|e| CliError::Core(Error::io("<stdin>", e)))?;
        if !line.trim().is_empty() {
            v.push(line);
        }
    }
    Ok(v)
}

fn cmd_classify(
    s: &Settings,
    a: ClassifyArgs,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult {
    let path: PathBuf = s
        .get(a.bundle, "bundle")?
        .ok_or_else(|| CliError::Usage("--bundle is required".into()))?;
    let engine = Engine::new(ModelBundle::load(&path)?);
    let texts = match (&a.file, a.texts.as_slice()) {
        (Some(f), _) if f.as_os_str() == "-" => read_lines(input)?,
        (Some(f), _) => {
            let text = std::fs::read_to_string(f).map_err(|e| CliError::Core(Error::io(f, e)))?;
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(str::to_string)
                .collect()
        }
        (None, [dash]) if dash == "-" => read_lines(input)?,
        (None, []) => {
            return Err(CliError::Usage(
                "give headlines as arguments, --file, or - for stdin".into(),
            ))
        }
        (None, t) => t.to_vec(),
    };
    for t in texts {
        match engine.classify(&t) {
            Ok(c) => {
                let _ = writeln!(out, "{}\t{:.4}\t{}", c.label, c.score, t.trim());
            }
            Err(e) => {
                let _ = writeln!(out, "error\t\t{}\t{e}", t.trim());
            }
        }
    }
    Ok(())
}

fn cmd_stats(s: &Settings, a: StatsArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let corpus = load_headlines(s.get(a.data.corpus, "corpus")?, err)?;
    let treebank = load_treebank(s.get(a.data.treebank, "treebank")?, err)?;
    let lexicons = load_lexicons(s.get(a.data.lexicons, "lexicons")?)?;
    let annotator = train_annotator(&treebank)?;
    let ann: Vec<AnnotatedHeadline> = corpus
        .iter()
        .map(|h| annotator.annotate(h.id, &h.text))
        .collect();
    let st = compute_corpus_stats(&corpus, &ann, &lexicons)?;
    emit(
        out,
        a.format,
        report::stats_table(&st),
        report::stats_csv(&st),
        a.csv.as_deref(),
    )
}

fn cmd_simulate(
    s: &Settings,
    a: SimulateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let methods = match s.get(a.method, "method")?.as_deref() {
        None | Some("all") => Method::ALL.to_vec(),
        Some(m) => vec![m
            .parse::<Method>()
            .map_err(|e| CliError::Usage(e.to_string()))?],
    };
    let holdout = s.or(a.holdout, "holdout", 0.2)?;
    if !(0.0..=1.0).contains(&holdout) {
        return Err(CliError::Usage(format!(
            "--holdout must be in [0, 1], got {holdout}"
        )));
    }
    let events = load_events(&a.events)?;
    if events.is_empty() {
        let r = SimulationReport {
            users: 0,
            train_events: 0,
            test_events: 0,
            holdout,
            rows: Vec::new(),
        };
        return emit(
            out,
            a.format,
            report::simulation_table(&r),
            report::simulation_csv(&r),
            a.csv.as_deref(),
        );
    }
    let (annotator, lexicons) = match s.get(a.bundle, "bundle")? {
        Some(p) => {
            let e = Engine::new(ModelBundle::load(&p)?);
            (e.annotator.clone(), e.bundle.lexicons.clone())
        }
        None => (
            train_annotator(&load_treebank(s.get(a.treebank, "treebank")?, err)?)?,
            Lexicons::bundled(),
        ),
    };
    let graph = match s.get(a.graph, "graph")?.as_deref() {
        None => ConceptGraph::bundled(),
        Some("toy") => ConceptGraph::toy(),
        Some(p) => ConceptGraph::load(Path::new(p))?,
    };
    let mut blocker = Blocker::new(&lexicons, Arc::new(graph));
    blocker.hybrid_weight = s.or(a.hybrid_weight, "hybrid-weight", blocker.hybrid_weight)?;
    let r = simulate(&events, &methods, holdout, &blocker, &annotator)?;
    emit(
        out,
        a.format,
        report::simulation_table(&r),
        report::simulation_csv(&r),
        a.csv.as_deref(),
    )
}

fn cmd_serve(s: &Settings, a: ServeArgs, err: &mut dyn Write) -> CliResult {
    let mut cfg = ServiceConfig::default();
    cfg.listen = s.or(a.listen, "listen", cfg.listen)?;
    cfg.state_dir = s.or(a.state_dir, "state-dir", cfg.state_dir)?;
    cfg.base_corpus = s.get(a.corpus, "corpus")?;
    cfg.graph = s.get(a.graph, "graph")?;
    cfg.method = s.or(a.method, "method", cfg.method)?;
    cfg.hybrid_weight = s.or(None, "hybrid-weight", cfg.hybrid_weight)?;
    cfg.retrain_interval = match s.get(a.retrain_interval, "retrain-interval")? {
        Some(0) => None,
        Some(secs) => Some(Duration::from_secs(secs)),
        None => cfg.retrain_interval,
    };
    let initial = s
        .get(a.bundle, "bundle")?
        .map(|p: PathBuf| ModelBundle::load(&p))
        .transpose()?;
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Core(Error::io("<runtime>", e)))?;
    let svc = Arc::new(Service::open(cfg, initial)?);
    let _ = writeln!(
        err,
        "serving model version {} on {}",
        svc.engine().version(),
        svc.config.listen
    );
    rt.block_on(service::serve(svc))?;
    Ok(())
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run(
    args: Vec<OsString>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let res = (|| {
        let settings = match &cli.config {
            Some(p) => Settings::load(p)?,
            None => Settings::default(),
        };
        match cli.command {
            Command::Train(a) => cmd_train(&settings, a, out, err),
            Command::Eval(a) => cmd_eval(&settings, a, out, err),
            Command::Classify(a) => cmd_classify(&settings, a, input, out),
            Command::Stats(a) => cmd_stats(&settings, a, out, err),
            Command::SimulateBlock(a) => cmd_simulate(&settings, a, out, err),
            Command::Serve(a) => cmd_serve(&settings, a, err),
        }
    })();
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
