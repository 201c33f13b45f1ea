//! Ranking and precision-at-k evaluation against graded relevance
//! judgments (grades 0 to 3).
//!
//! Reviewers without a judgment for a submission are discarded from its
//! ranking before precision is computed. Submissions are grouped into GT1,
//! GT2 and GT3: those with at least one, two or three relevant reviewers.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::corpus::{read_jsonl, write_file, ReviewerProfile, SubmissionDoc};
use crate::embeddings::{doc_matrix_without, EmbeddingTable};
use crate::error::{Error, Result};
use crate::scoring::{map_ordered, score_all, Method, ScoreRow};
use crate::topics::PreparedDoc;

pub const DEFAULT_THRESHOLD: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub submission_id: String,
    pub reviewer_id: String,
    pub grade: u8,
}

/// Judgments indexed by submission, then reviewer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QRels {
    grades: BTreeMap<String, BTreeMap<String, u8>>,
}

impl QRels {
    pub fn from_judgments<I: IntoIterator<Item = Judgment>>(judgments: I) -> Result<Self> {
        let mut q = QRels::default();
        for (i, j) in judgments.into_iter().enumerate() {
            q.insert(j, i + 1)?;
        }
        Ok(q)
    }

    fn insert(&mut self, j: Judgment, line: usize) -> Result<()> {
        if j.grade > 3 {
            return Err(Error::Config(format!(
                "grade {} for ({}, {}) outside 0..=3",
                j.grade, j.submission_id, j.reviewer_id
            )));
        }
        let per_sub = self.grades.entry(j.submission_id.clone()).or_default();
        if per_sub.insert(j.reviewer_id.clone(), j.grade).is_some() {
            return Err(Error::DuplicateId {
                kind: "judgment",
                id: format!("{}/{}", j.submission_id, j.reviewer_id),
                line,
            });
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn len(&self) -> usize {
        self.grades.values().map(BTreeMap::len).sum()
    }

    pub fn submissions(&self) -> impl Iterator<Item = &str> {
        self.grades.keys().map(String::as_str)
    }

    pub fn grades(&self, submission_id: &str) -> Option<&BTreeMap<String, u8>> {
        self.grades.get(submission_id)
    }

    pub fn judgments(&self) -> impl Iterator<Item = Judgment> + '_ {
        self.grades.iter().flat_map(|(s, revs)| {
            revs.iter().map(move |(r, &g)| Judgment {
                submission_id: s.clone(),
                reviewer_id: r.clone(),
                grade: g,
            })
        })
    }

    /// Tab-separated `submission_id reviewer_id grade`, sorted.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for j in self.judgments() {
            let _ = writeln!(out, "{}\t{}\t{}", j.submission_id, j.reviewer_id, j.grade);
        }
        out
    }
}

pub fn load_qrels(path: impl AsRef<Path>) -> Result<QRels> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut q = QRels::default();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').map(str::trim).collect();
        if f.len() != 3 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 3 tab-separated fields, got {}", f.len()),
            ));
        }
        let grade: u8 = f[2]
            .parse()
            .ok()
            .filter(|g| *g <= 3)
            .ok_or_else(|| Error::parse(path, line_no, format!("grade must be 0..=3, got `{}`", f[2])))?;
        q.insert(
            Judgment {
                submission_id: f[0].to_string(),
                reviewer_id: f[1].to_string(),
                grade,
            },
            line_no,
        )
        .map_err(|e| match e {
            Error::DuplicateId { .. } => e,
            other => Error::parse(path, line_no, other.to_string()),
        })?;
    }
    Ok(q)
}

pub fn write_qrels(path: impl AsRef<Path>, qrels: &QRels) -> Result<()> {
    write_file(path.as_ref(), qrels.to_tsv().as_bytes())
}

/// Reads judgments from JSONL (`{"submission_id", "reviewer_id", "grade"}`
/// per line), e.g. to convert them into `qrels.tsv`.
pub fn load_judgments_jsonl(path: impl AsRef<Path>) -> Result<QRels> {
    let path = path.as_ref();
    let rows: Vec<(usize, Judgment)> = read_jsonl(path)?;
    let mut q = QRels::default();
    for (line, j) in rows {
        q.insert(j, line).map_err(|e| match e {
            Error::DuplicateId { .. } => e,
            other => Error::parse(path, line, other.to_string()),
        })?;
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub submission_id: String,
    pub entries: Vec<(String, f64)>,
}

impl RankedList {
    pub fn reviewer_ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(r, _)| r.as_str())
    }
}

/// Orders reviewers best-first; equal scores fall back to reviewer id.
pub fn rank_reviewers<I, S>(submission_id: &str, scores: I, higher_is_better: bool) -> Result<RankedList>
where
    I: IntoIterator<Item = (S, f64)>,
    S: Into<String>,
{
    let mut entries: Vec<(String, f64)> = Vec::new();
    let mut seen = HashSet::new();
    for (id, v) in scores {
        let id = id.into();
        if v.is_nan() {
            return Err(Error::NanScore(id));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId {
                kind: "reviewer",
                id,
                line: 0,
            });
        }
        entries.push((id, v));
    }
    if entries.is_empty() {
        return Err(Error::Config(format!(
            "no reviewer scores for submission `{submission_id}`"
        )));
    }
    entries.sort_by(|a, b| {
        let by_score = if higher_is_better {
            b.1.total_cmp(&a.1)
        } else {
            a.1.total_cmp(&b.1)
        };
        by_score.then_with(|| a.0.cmp(&b.0))
    });
    Ok(RankedList {
        submission_id: submission_id.to_string(),
        entries,
    })
}

/// Fraction of relevant reviewers among the first `k` judged ones. The
/// denominator is `min(k, judged reviewers in the list)`; `None` when no
/// ranked reviewer is judged.
pub fn precision_at_k(ranked: &RankedList, grades: &BTreeMap<String, u8>, k: usize, threshold: u8) -> Option<f64> {
    let judged: Vec<u8> = ranked
        .reviewer_ids()
        .filter_map(|r| grades.get(r).copied())
        .take(k)
        .collect();
    if judged.is_empty() || k == 0 {
        return None;
    }
    let relevant = judged.iter().filter(|&&g| g >= threshold).count();
    Some(relevant as f64 / judged.len() as f64)
}

/// Submissions with at least `min_relevant` judgments of grade at least
/// `threshold`.
pub fn gt_subset(qrels: &QRels, min_relevant: usize, threshold: u8) -> BTreeSet<String> {
    qrels
        .grades
        .iter()
        .filter(|(_, g)| g.values().filter(|&&x| x >= threshold).count() >= min_relevant)
        .map(|(s, _)| s.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmissionEval {
    pub submission_id: String,
    pub judged: usize,
    pub relevant: usize,
    /// P@k per entry of the report's k-list, as fractions.
    pub precision: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSummary {
    pub min_relevant: usize,
    pub submissions: usize,
    /// Mean P@k in percent per entry of the k-list; `None` if no submission
    /// in the subset had a defined value.
    pub means: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub method: Method,
    /// Number of topics; `None` for methods that do not use it.
    pub k_topics: Option<usize>,
    pub ks: Vec<usize>,
    pub threshold: u8,
    /// GT1, GT2, GT3 in that order.
    pub subsets: Vec<SubsetSummary>,
    pub per_submission: Vec<SubmissionEval>,
    /// Judged submissions with no judged reviewer among the candidates.
    pub undefined: Vec<String>,
}

fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

impl EvalReport {
    pub fn gt(&self, level: usize) -> &SubsetSummary {
        &self.subsets[level - 1]
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("method".into(), json!(self.method.as_str()));
        obj.insert("K".into(), json!(self.k_topics));
        obj.insert("threshold".into(), json!(self.threshold));
        for s in &self.subsets {
            let mut m = Map::new();
            for (k, v) in self.ks.iter().zip(&s.means) {
                m.insert(format!("p{k}"), json!(v.map(round1)));
            }
            m.insert("submissions".into(), json!(s.submissions));
            obj.insert(format!("gt{}", s.min_relevant), Value::Object(m));
        }
        let rows: Vec<Value> = self
            .per_submission
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("submission_id".into(), json!(r.submission_id));
                m.insert("judged".into(), json!(r.judged));
                m.insert("relevant".into(), json!(r.relevant));
                for (k, v) in self.ks.iter().zip(&r.precision) {
                    m.insert(format!("p{k}"), json!(v));
                }
                Value::Object(m)
            })
            .collect();
        obj.insert("per_submission".into(), Value::Array(rows));
        obj.insert("undefined_submissions".into(), json!(self.undefined));
        Value::Object(obj)
    }
}

/// Renders reports as one table, one row per report, with a column group per
/// GT subset.
pub fn render_table(reports: &[EvalReport]) -> String {
    let Some(first) = reports.first() else {
        return String::new();
    };
    let ks = &first.ks;
    let cell = 8;
    let group_width = cell * ks.len();
    let mut out = String::new();

    let _ = write!(out, "{:<14}{:>8}  ", "Method", "Topics");
    for s in &first.subsets {
        let _ = write!(
            out,
            "| {:<w$}",
            format!("GT{} (n={})", s.min_relevant, s.submissions),
            w = group_width
        );
    }
    out.push('\n');
    let _ = write!(out, "{:<14}{:>8}  ", "", "");
    for _ in &first.subsets {
        out.push_str("| ");
        for k in ks {
            let _ = write!(out, "{:<cell$}", format!("P@{k}"));
        }
    }
    out.push('\n');
    for r in reports {
        let topics = r.k_topics.map_or_else(|| "-".to_string(), |k| k.to_string());
        let _ = write!(out, "{:<14}{:>8}  ", r.method.as_str(), topics);
        for s in &r.subsets {
            out.push_str("| ");
            for v in &s.means {
                let txt = v.map_or_else(|| "-".to_string(), |x| format!("{x:.1}"));
                let _ = write!(out, "{txt:<cell$}");
            }
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "relevant: grade >= {}; unjudged reviewers discarded before P@k",
        first.threshold
    );
    out
}

fn validate_ks(ks: &[usize], threshold: u8) -> Result<()> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Config("k-list entries must be at least 1".into()));
    }
    if !(1..=3).contains(&threshold) {
        return Err(Error::Config(format!("threshold must be 1, 2 or 3, got {threshold}")));
    }
    Ok(())
}

/// Evaluates precomputed score rows. Every judged submission must have rows
/// and every judged reviewer must be scored against it.
pub fn evaluate_rows(rows: &[ScoreRow], qrels: &QRels, ks: &[usize], threshold: u8) -> Result<EvalReport> {
    validate_ks(ks, threshold)?;
    if qrels.is_empty() {
        return Err(Error::Config("no judgments to evaluate against".into()));
    }
    let method = rows
        .first()
        .map(|r| r.method)
        .ok_or_else(|| Error::Config("no scores to evaluate".into()))?;
    if let Some(other) = rows.iter().find(|r| r.method != method || r.k != rows[0].k) {
        return Err(Error::Config(format!(
            "scores mix configurations: {} K={} and {} K={}",
            method, rows[0].k, other.method, other.k
        )));
    }
    let k_topics = method.uses_topics().then_some(rows[0].k);

    let mut by_sub: BTreeMap<&str, Vec<(&str, f64)>> = BTreeMap::new();
    for r in rows {
        by_sub
            .entry(r.submission_id.as_str())
            .or_default()
            .push((r.reviewer_id.as_str(), r.score.value));
    }

    let mut missing_subs = Vec::new();
    let mut missing_revs = BTreeSet::new();
    for sub in qrels.submissions() {
        match by_sub.get(sub) {
            None => missing_subs.push(sub.to_string()),
            Some(cands) => {
                let have: HashSet<&str> = cands.iter().map(|c| c.0).collect();
                for rev in qrels.grades(sub).into_iter().flat_map(BTreeMap::keys) {
                    if !have.contains(rev.as_str()) {
                        missing_revs.insert(rev.clone());
                    }
                }
            }
        }
    }
    if !missing_subs.is_empty() {
        return Err(Error::MissingJudged {
            kind: "submission abstract",
            ids: missing_subs,
        });
    }
    if !missing_revs.is_empty() {
        return Err(Error::MissingJudged {
            kind: "reviewer profile",
            ids: missing_revs.into_iter().collect(),
        });
    }

    let mut per_submission = Vec::new();
    let mut undefined = Vec::new();
    for sub in qrels.submissions() {
        let grades = qrels.grades(sub).expect("listed submission");
        let ranked = rank_reviewers(sub, by_sub[sub].iter().copied(), method.higher_is_better())?;
        let precision: Vec<Option<f64>> = ks
            .iter()
            .map(|&k| precision_at_k(&ranked, grades, k, threshold))
            .collect();
        if precision.iter().all(Option::is_none) {
            undefined.push(sub.to_string());
        }
        per_submission.push(SubmissionEval {
            submission_id: sub.to_string(),
            judged: grades.len(),
            relevant: grades.values().filter(|&&g| g >= threshold).count(),
            precision,
        });
    }

    let subsets = (1..=3)
        .map(|min_relevant| {
            let members = gt_subset(qrels, min_relevant, threshold);
            let means = (0..ks.len())
                .map(|i| {
                    let vals: Vec<f64> = per_submission
                        .iter()
                        .filter(|p| members.contains(&p.submission_id))
                        .filter_map(|p| p.precision[i])
                        .collect();
                    (!vals.is_empty()).then(|| 100.0 * vals.iter().sum::<f64>() / vals.len() as f64)
                })
                .collect();
            SubsetSummary {
                min_relevant,
                submissions: members.len(),
                means,
            }
        })
        .collect();

    Ok(EvalReport {
        method,
        k_topics,
        ks: ks.to_vec(),
        threshold,
        subsets,
        per_submission,
        undefined,
    })
}

/// Inputs for scoring live from profiles and embeddings.
pub struct LiveCorpus<'a> {
    pub profiles: &'a [ReviewerProfile],
    pub submissions: &'a [SubmissionDoc],
    pub table: &'a EmbeddingTable,
    pub stopwords: &'a std::collections::HashSet<String>,
}

/// Scores every judged submission against every profiled reviewer, then
/// evaluates.
pub fn evaluate(
    method: Method,
    corpus: &LiveCorpus<'_>,
    qrels: &QRels,
    ks: &[usize],
    k_topics: usize,
    threshold: u8,
    jobs: usize,
) -> Result<EvalReport> {
    validate_ks(ks, threshold)?;
    if qrels.is_empty() {
        return Err(Error::Config("no judgments to evaluate against".into()));
    }
    let profiled: HashSet<&str> = corpus.profiles.iter().map(|p| p.reviewer_id.as_str()).collect();
    let with_abstract: HashSet<&str> = corpus.submissions.iter().map(|s| s.submission_id.as_str()).collect();

    let missing_subs: Vec<String> = qrels
        .submissions()
        .filter(|s| !with_abstract.contains(s))
        .map(String::from)
        .collect();
    if !missing_subs.is_empty() {
        return Err(Error::MissingJudged {
            kind: "submission abstract",
            ids: missing_subs,
        });
    }
    let missing_revs: BTreeSet<String> = qrels
        .judgments()
        .filter(|j| !profiled.contains(j.reviewer_id.as_str()))
        .map(|j| j.reviewer_id)
        .collect();
    if !missing_revs.is_empty() {
        return Err(Error::MissingJudged {
            kind: "reviewer profile",
            ids: missing_revs.into_iter().collect(),
        });
    }

    let judged: HashSet<&str> = qrels.submissions().collect();
    let prepare = |tokens: &[String]| PreparedDoc::new(&doc_matrix_without(tokens, corpus.table, corpus.stopwords));
    let reviewers = map_ordered(corpus.profiles, jobs, |p| (p.reviewer_id.clone(), prepare(&p.tokens)))?;
    let judged_docs: Vec<&SubmissionDoc> = corpus
        .submissions
        .iter()
        .filter(|s| judged.contains(s.submission_id.as_str()))
        .collect();
    let submissions = map_ordered(&judged_docs, jobs, |s| (s.submission_id.clone(), prepare(&s.tokens)))?;
    let rows = score_all(method, &reviewers, &submissions, k_topics, jobs)?;
    evaluate_rows(&rows, qrels, ks, threshold)
}
