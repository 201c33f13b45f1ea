//! File-to-file pipeline steps behind the `ctm` commands.
//!
//! Every step reads its inputs, writes its outputs in a canonical order and
//! returns a small summary. Re-running a step on unchanged inputs rewrites
//! byte-identical files.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::corpus::{
    self, build_profiles, filter_reviewers, load_profiles, load_publications, load_stopwords, load_submissions,
    reviewer_years, write_file, FilterPolicy,
};
use crate::embeddings::{doc_matrix_without, load_embeddings, train_embeddings, EmbeddingTable, TrainConfig};
use crate::error::{Error, Result};
use crate::eval::{self, load_judgments_jsonl, load_qrels, render_table, write_qrels, EvalReport, LiveCorpus};
use crate::explain::TopicExplanation;
use crate::scoring::{map_ordered, read_scores, score_all, write_scores, Method, ScoreRow};
use crate::topics::{common_topics_prepared, match_score_prepared, PreparedDoc};

pub const PROFILES_FILE: &str = "profiles.jsonl";
pub const FILTER_REPORT_FILE: &str = "filter_report.tsv";
pub const QRELS_FILE: &str = "qrels.tsv";

#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub publications: PathBuf,
    pub out_dir: PathBuf,
    /// Year the eligibility filter is evaluated in. Defaults to the latest
    /// publication year so that output does not depend on the clock.
    pub current_year: Option<i32>,
    pub inactivity_window: i32,
    pub veteran_window: i32,
    pub min_prior_papers: usize,
    /// Optional JSONL judgments converted into `qrels.tsv`.
    pub judgments: Option<PathBuf>,
}

impl IngestOptions {
    pub fn new(publications: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        let defaults = FilterPolicy::new(0);
        IngestOptions {
            publications: publications.into(),
            out_dir: out_dir.into(),
            current_year: None,
            inactivity_window: defaults.inactivity_window,
            veteran_window: defaults.veteran_window,
            min_prior_papers: defaults.min_prior_papers,
            judgments: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestSummary {
    pub kept: usize,
    pub excluded: usize,
    pub current_year: i32,
}

pub fn ingest(opts: &IngestOptions) -> Result<IngestSummary> {
    let pubs = load_publications(&opts.publications)?;
    let current_year = match opts.current_year {
        Some(y) => y,
        None => pubs
            .iter()
            .map(|p| p.year)
            .max()
            .ok_or_else(|| Error::Config("publications file is empty".into()))?,
    };
    let policy = FilterPolicy {
        current_year,
        inactivity_window: opts.inactivity_window,
        veteran_window: opts.veteran_window,
        min_prior_papers: opts.min_prior_papers,
    };
    policy.validate()?;

    let outcome = filter_reviewers(&reviewer_years(&pubs), &policy);
    let profiles = build_profiles(&pubs)?;
    let kept: Vec<&corpus::ReviewerProfile> = outcome.kept.iter().map(|id| &profiles[id]).collect();
    corpus::write_profiles(opts.out_dir.join(PROFILES_FILE), kept.iter().copied())?;

    let mut report = String::from("reviewer_id\tstatus\treason\n");
    let mut status: BTreeMap<&str, String> = BTreeMap::new();
    for id in &outcome.kept {
        status.insert(id, "kept\t-".into());
    }
    for (id, reason) in &outcome.excluded {
        status.insert(id, format!("excluded\t{}", reason.as_str()));
    }
    for (id, s) in status {
        let _ = writeln!(report, "{id}\t{s}");
    }
    write_file(&opts.out_dir.join(FILTER_REPORT_FILE), report.as_bytes())?;

    if let Some(j) = &opts.judgments {
        write_qrels(opts.out_dir.join(QRELS_FILE), &load_judgments_jsonl(j)?)?;
    }
    Ok(IngestSummary {
        kept: outcome.kept.len(),
        excluded: outcome.excluded.len(),
        current_year,
    })
}

#[derive(Debug, Clone)]
pub struct TrainOptions {
    /// Publication JSONL files; each abstract is one training stream.
    pub publications: Vec<PathBuf>,
    /// Plain text files; each non-empty line is one training stream.
    pub text: Vec<PathBuf>,
    pub out: PathBuf,
    pub config: TrainConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainSummary {
    pub vocab: usize,
    pub epoch_losses: Vec<f64>,
}

pub fn train(opts: &TrainOptions) -> Result<TrainSummary> {
    let mut streams: Vec<Vec<String>> = Vec::new();
    for p in &opts.publications {
        streams.extend(load_publications(p)?.iter().map(|p| corpus::tokenize(&p.abstract_text)));
    }
    for t in &opts.text {
        let text = fs::read_to_string(t).map_err(|e| Error::io(t, e))?;
        streams.extend(text.lines().map(corpus::tokenize).filter(|s| !s.is_empty()));
    }
    if streams.iter().all(Vec::is_empty) {
        return Err(Error::Config("training corpus is empty".into()));
    }
    let out = train_embeddings(&streams, &opts.config)?;
    out.table.save(&opts.out)?;
    Ok(TrainSummary {
        vocab: out.table.len(),
        epoch_losses: out.epoch_losses,
    })
}

/// Documents and embeddings shared by `match`, `evaluate` and
/// `explain-topics`.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub profiles: PathBuf,
    pub submissions: PathBuf,
    pub embeddings: PathBuf,
    pub stopwords: Option<PathBuf>,
}

struct Loaded {
    profiles: Vec<corpus::ReviewerProfile>,
    submissions: Vec<corpus::SubmissionDoc>,
    table: EmbeddingTable,
    stopwords: HashSet<String>,
}

impl Inputs {
    fn load(&self) -> Result<Loaded> {
        let table = load_embeddings(&self.embeddings)?.table;
        Ok(Loaded {
            profiles: load_profiles(&self.profiles)?,
            submissions: load_submissions(&self.submissions)?
                .iter()
                .map(|s| s.to_doc())
                .collect(),
            table,
            stopwords: match &self.stopwords {
                Some(p) => load_stopwords(p)?,
                None => HashSet::new(),
            },
        })
    }
}

impl Loaded {
    fn prepare_reviewers(&self, jobs: usize) -> Result<Vec<(String, PreparedDoc)>> {
        map_ordered(&self.profiles, jobs, |p| {
            (p.reviewer_id.clone(), self.prepare(&p.tokens))
        })
    }

    fn prepare_submissions(&self, jobs: usize) -> Result<Vec<(String, PreparedDoc)>> {
        map_ordered(&self.submissions, jobs, |s| {
            (s.submission_id.clone(), self.prepare(&s.tokens))
        })
    }

    fn prepare(&self, tokens: &[String]) -> PreparedDoc {
        PreparedDoc::new(&doc_matrix_without(tokens, &self.table, &self.stopwords))
    }
}

#[derive(Debug, Clone)]
pub struct MatchOptions {
    pub inputs: Inputs,
    pub out: PathBuf,
    pub method: Method,
    pub k: usize,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSummary {
    pub rows: usize,
    pub degenerate: usize,
}

pub fn match_all(opts: &MatchOptions) -> Result<MatchSummary> {
    check_k(opts.k)?;
    let loaded = opts.inputs.load()?;
    let rows = score_all(
        opts.method,
        &loaded.prepare_reviewers(opts.jobs)?,
        &loaded.prepare_submissions(opts.jobs)?,
        opts.k,
        opts.jobs,
    )?;
    write_scores(&opts.out, &rows)?;
    Ok(MatchSummary {
        rows: rows.len(),
        degenerate: rows.iter().filter(|r| r.score.degenerate).count(),
    })
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("--k must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct RankOptions {
    pub scores: PathBuf,
    pub out: PathBuf,
    pub top_n: usize,
}

/// Writes `submission_id rank reviewer_id score` rows, best first.
pub fn rank(opts: &RankOptions) -> Result<usize> {
    if opts.top_n < 1 {
        return Err(Error::Config("--top-n must be at least 1".into()));
    }
    let rows = read_scores(&opts.scores)?;
    let mut by_sub: BTreeMap<&str, Vec<&ScoreRow>> = BTreeMap::new();
    for r in &rows {
        by_sub.entry(r.submission_id.as_str()).or_default().push(r);
    }
    let mut out = String::from("submission_id\trank\treviewer_id\tscore\n");
    let mut written = 0;
    for (sub, rs) in by_sub {
        let higher = rs[0].method.higher_is_better();
        let ranked = eval::rank_reviewers(sub, rs.iter().map(|r| (r.reviewer_id.as_str(), r.score.value)), higher)?;
        for (i, (rev, score)) in ranked.entries.iter().take(opts.top_n).enumerate() {
            let _ = writeln!(out, "{sub}\t{}\t{rev}\t{score}", i + 1);
            written += 1;
        }
    }
    write_file(&opts.out, out.as_bytes())?;
    Ok(written)
}

#[derive(Debug, Clone)]
pub enum ScoreSource {
    /// A `scores.tsv` written by `match`.
    File(PathBuf),
    /// Score on the fly.
    Live {
        inputs: Inputs,
        method: Method,
        k: usize,
        jobs: usize,
    },
}

#[derive(Debug, Clone)]
pub struct EvaluateOptions {
    pub qrels: PathBuf,
    pub source: ScoreSource,
    pub ks: Vec<usize>,
    pub threshold: u8,
    /// Directory for `eval_report.txt` and `eval_report.json`.
    pub out_dir: Option<PathBuf>,
}

pub const EVAL_TEXT_FILE: &str = "eval_report.txt";
pub const EVAL_JSON_FILE: &str = "eval_report.json";

pub fn evaluate(opts: &EvaluateOptions) -> Result<EvalReport> {
    let qrels = load_qrels(&opts.qrels)?;
    if qrels.is_empty() {
        return Err(Error::Config(format!("{}: no judgments", opts.qrels.display())));
    }
    let report = match &opts.source {
        ScoreSource::File(path) => eval::evaluate_rows(&read_scores(path)?, &qrels, &opts.ks, opts.threshold)?,
        ScoreSource::Live {
            inputs,
            method,
            k,
            jobs,
        } => {
            check_k(*k)?;
            let loaded = inputs.load()?;
            let corpus = LiveCorpus {
                profiles: &loaded.profiles,
                submissions: &loaded.submissions,
                table: &loaded.table,
                stopwords: &loaded.stopwords,
            };
            eval::evaluate(*method, &corpus, &qrels, &opts.ks, *k, opts.threshold, *jobs)?
        }
    };
    if let Some(dir) = &opts.out_dir {
        write_report(dir, &report)?;
    }
    Ok(report)
}

pub fn write_report(dir: &Path, report: &EvalReport) -> Result<()> {
    write_file(
        &dir.join(EVAL_TEXT_FILE),
        render_table(std::slice::from_ref(report)).as_bytes(),
    )?;
    let mut json = serde_json::to_string_pretty(&report.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
    json.push('\n');
    write_file(&dir.join(EVAL_JSON_FILE), json.as_bytes())
}

#[derive(Debug, Clone)]
pub struct ExplainOptions {
    pub inputs: Inputs,
    pub submission_id: String,
    pub reviewer_id: String,
    pub k: usize,
    pub top_words: usize,
    /// Optional JSON output path.
    pub out: Option<PathBuf>,
}

pub fn explain_topics(opts: &ExplainOptions) -> Result<TopicExplanation> {
    check_k(opts.k)?;
    let loaded = opts.inputs.load()?;
    let profile = loaded
        .profiles
        .iter()
        .find(|p| p.reviewer_id == opts.reviewer_id)
        .ok_or_else(|| Error::UnknownId {
            kind: "reviewer",
            id: opts.reviewer_id.clone(),
        })?;
    let sub = loaded
        .submissions
        .iter()
        .find(|s| s.submission_id == opts.submission_id)
        .ok_or_else(|| Error::UnknownId {
            kind: "submission",
            id: opts.submission_id.clone(),
        })?;
    let r = loaded.prepare(&profile.tokens);
    let s = loaded.prepare(&sub.tokens);
    let topics = common_topics_prepared(&r, &s, opts.k)?;
    let score = match_score_prepared(&r, &s, opts.k)?;
    let explanation = TopicExplanation::new(
        &opts.submission_id,
        &opts.reviewer_id,
        &topics,
        &score,
        &loaded.table,
        opts.top_words,
    )?;
    if let Some(path) = &opts.out {
        let mut json = serde_json::to_string_pretty(&explanation).map_err(|e| Error::Internal(e.to_string()))?;
        json.push('\n');
        write_file(path, json.as_bytes())?;
    }
    Ok(explanation)
}
