//! `ctm`: command-line front end for the matching pipeline.
//!
//! Settings come from flags, then from an optional `key=value` file given
//! with `--config` (keys are long flag names without dashes), then from
//! built-in defaults. Exit codes: 0 success, 1 internal failure, 2 usage or
//! input error.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use common_topics::embeddings::TrainConfig;
use common_topics::eval::render_table;
use common_topics::pipeline::{
    self, EvaluateOptions, ExplainOptions, IngestOptions, Inputs, MatchOptions, RankOptions, ScoreSource, TrainOptions,
};
use common_topics::scoring::Method;
use common_topics::Error;

#[derive(Parser, Debug)]
#[command(name = "ctm", version, about = "Paper-reviewer matching with common topic vectors")]
#[command(after_help = "Precedence: command-line flags override --config file values, which override defaults.")]
struct Cli {
    /// key=value settings file; keys are long flag names, e.g. `k=10`
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Random seed for embedding training [default: 1]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for scoring [default: 1]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// common-topic | hidden-topic | centroid | relaxed-wmd [default: common-topic]
    #[arg(long, global = true)]
    method: Option<String>,
    /// Number of topics [default: 10]
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Reviewers kept per submission by `rank` [default: 10]
    #[arg(long = "top-n", global = true)]
    top_n: Option<usize>,
    /// Minimum grade counted as relevant [default: 2]
    #[arg(long, global = true)]
    threshold: Option<u8>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build reviewer profiles and apply the eligibility filter
    Ingest(IngestArgs),
    /// Train CBOW word embeddings
    TrainEmbeddings(TrainArgs),
    /// Score every (submission, reviewer) pair into scores.tsv
    Match(MatchArgs),
    /// Keep the top-n reviewers per submission
    Rank(RankArgs),
    /// Precision at k against graded judgments
    Evaluate(EvaluateArgs),
    /// Show the words closest to each common topic of one pair
    ExplainTopics(ExplainArgs),
}

#[derive(Args, Debug)]
struct IngestArgs {
    #[arg(long)]
    publications: Option<PathBuf>,
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
    /// JSONL judgments to convert into qrels.tsv
    #[arg(long)]
    judgments: Option<PathBuf>,
    /// [default: latest publication year]
    #[arg(long = "current-year")]
    current_year: Option<i32>,
    /// [default: 10]
    #[arg(long = "inactivity-window")]
    inactivity_window: Option<i32>,
    /// [default: 40]
    #[arg(long = "veteran-window")]
    veteran_window: Option<i32>,
    /// [default: 3]
    #[arg(long = "min-prior-papers")]
    min_prior_papers: Option<usize>,
}

#[derive(Args, Debug)]
struct TrainArgs {
    /// Publication JSONL files (repeatable)
    #[arg(long)]
    publications: Vec<PathBuf>,
    /// Plain text files, one document per line (repeatable)
    #[arg(long)]
    text: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// [default: 100]
    #[arg(long)]
    dim: Option<usize>,
    /// [default: 5]
    #[arg(long)]
    window: Option<usize>,
    /// [default: 5]
    #[arg(long)]
    negatives: Option<usize>,
    /// [default: 5]
    #[arg(long)]
    epochs: Option<usize>,
    /// [default: 5]
    #[arg(long = "min-count")]
    min_count: Option<usize>,
    /// [default: 0.025]
    #[arg(long = "learning-rate")]
    learning_rate: Option<f64>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    profiles: Option<PathBuf>,
    #[arg(long)]
    submissions: Option<PathBuf>,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MatchArgs {
    #[command(flatten)]
    inputs: InputArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long)]
    scores: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    qrels: Option<PathBuf>,
    /// Score file from `match`; without it, scores are computed live
    #[arg(long)]
    scores: Option<PathBuf>,
    #[command(flatten)]
    inputs: InputArgs,
    /// Comma-separated cutoffs [default: 5,10]
    #[arg(long)]
    at: Option<String>,
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExplainArgs {
    #[command(flatten)]
    inputs: InputArgs,
    #[arg(long = "submission-id")]
    submission_id: String,
    #[arg(long = "reviewer-id")]
    reviewer_id: String,
    /// [default: 10]
    #[arg(long = "top-words")]
    top_words: Option<usize>,
    /// Also write the explanation as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Flag values layered over the config file.
struct Settings {
    file: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&PathBuf>) -> Result<Self, Error> {
        let mut file = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                    path: path.clone(),
                    line: i + 1,
                    message: "expected key=value".into(),
                })?;
                file.insert(k.trim().replace('_', "-"), v.trim().to_string());
            }
        }
        Ok(Settings { file })
    }

    fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("config key `{key}`: cannot parse `{v}`"))),
        }
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Error> {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    fn path(&self, flag: Option<PathBuf>, key: &str) -> Result<PathBuf, Error> {
        self.opt(flag, key)?
            .ok_or_else(|| Error::Config(format!("missing required --{key}")))
    }

    fn inputs(&self, a: InputArgs) -> Result<Inputs, Error> {
        Ok(Inputs {
            profiles: self.path(a.profiles, "profiles")?,
            submissions: self.path(a.submissions, "submissions")?,
            embeddings: self.path(a.embeddings, "embeddings")?,
            stopwords: self.opt(a.stopwords, "stopwords")?,
        })
    }
}

fn parse_ks(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().ok().filter(|&k| k >= 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Config(format!("--at: expected comma-separated positive integers, got `{s}`")))
}

fn run(cli: Cli) -> Result<(), Error> {
    let cfg = Settings::load(cli.config.as_ref())?;
    let method: Method = cfg.or(cli.method, "method", "common-topic".to_string())?.parse()?;
    let k = cfg.or(cli.k, "k", 10)?;
    let jobs = cfg.or(cli.jobs, "jobs", 1)?;
    let threshold = cfg.or(cli.threshold, "threshold", 2)?;
    if !(1..=3).contains(&threshold) {
        return Err(Error::Config("--threshold must be 1, 2 or 3".into()));
    }

    match cli.command {
        Command::Ingest(a) => {
            let mut opts = IngestOptions::new(
                cfg.path(a.publications, "publications")?,
                cfg.path(a.out_dir, "out-dir")?,
            );
            opts.judgments = cfg.opt(a.judgments, "judgments")?;
            opts.current_year = cfg.opt(a.current_year, "current-year")?;
            opts.inactivity_window = cfg.or(a.inactivity_window, "inactivity-window", opts.inactivity_window)?;
            opts.veteran_window = cfg.or(a.veteran_window, "veteran-window", opts.veteran_window)?;
            opts.min_prior_papers = cfg.or(a.min_prior_papers, "min-prior-papers", opts.min_prior_papers)?;
            let s = pipeline::ingest(&opts)?;
            eprintln!(
                "kept {} reviewers, excluded {} (current year {})",
                s.kept, s.excluded, s.current_year
            );
        }
        Command::TrainEmbeddings(a) => {
            let d = TrainConfig::default();
            let mut publications = a.publications;
            if publications.is_empty() {
                publications.extend(cfg.opt(None, "publications")?);
            }
            let config = TrainConfig {
                dim: cfg.or(a.dim, "dim", d.dim)?,
                window: cfg.or(a.window, "window", d.window)?,
                negatives: cfg.or(a.negatives, "negatives", d.negatives)?,
                epochs: cfg.or(a.epochs, "epochs", d.epochs)?,
                min_count: cfg.or(a.min_count, "min-count", d.min_count)?,
                learning_rate: cfg.or(a.learning_rate, "learning-rate", d.learning_rate)?,
                seed: cfg.or(cli.seed, "seed", d.seed)?,
            };
            let s = pipeline::train(&TrainOptions {
                publications,
                text: a.text,
                out: cfg.path(a.out, "out")?,
                config,
            })?;
            eprintln!(
                "trained {} words; final epoch loss {:.4}",
                s.vocab,
                s.epoch_losses.last().copied().unwrap_or_default()
            );
        }
        Command::Match(a) => {
            let s = pipeline::match_all(&MatchOptions {
                inputs: cfg.inputs(a.inputs)?,
                out: cfg.path(a.out, "out")?,
                method,
                k,
                jobs,
            })?;
            eprintln!("wrote {} rows ({} degenerate)", s.rows, s.degenerate);
        }
        Command::Rank(a) => {
            let n = pipeline::rank(&RankOptions {
                scores: cfg.path(a.scores, "scores")?,
                out: cfg.path(a.out, "out")?,
                top_n: cfg.or(cli.top_n, "top-n", 10)?,
            })?;
            eprintln!("wrote {n} recommendations");
        }
        Command::Evaluate(a) => {
            let source = match cfg.opt(a.scores, "scores")? {
                Some(p) => ScoreSource::File(p),
                None => ScoreSource::Live {
                    inputs: cfg.inputs(a.inputs)?,
                    method,
                    k,
                    jobs,
                },
            };
            let ks = parse_ks(&cfg.or(a.at, "at", "5,10".to_string())?)?;
            let report = pipeline::evaluate(&EvaluateOptions {
                qrels: cfg.path(a.qrels, "qrels")?,
                source,
                ks,
                threshold,
                out_dir: cfg.opt(a.out_dir, "out-dir")?,
            })?;
            print!("{}", render_table(std::slice::from_ref(&report)));
            if !report.undefined.is_empty() {
                eprintln!("{} submissions had no judged candidates", report.undefined.len());
            }
        }
        Command::ExplainTopics(a) => {
            let e = pipeline::explain_topics(&ExplainOptions {
                inputs: cfg.inputs(a.inputs)?,
                submission_id: a.submission_id,
                reviewer_id: a.reviewer_id,
                k,
                top_words: cfg.or(a.top_words, "top-words", 10)?,
                out: a.out,
            })?;
            print!("{}", e.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
