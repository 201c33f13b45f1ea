//! Method selection, batch scoring of (submission, reviewer) pairs and the
//! `scores.tsv` format.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{centroid_prepared, hidden_topic_match, relaxed_wmd_prepared};
use crate::corpus::write_file;
use crate::error::{Error, Result};
use crate::topics::{match_score_prepared, PreparedDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    CommonTopic,
    HiddenTopic,
    Centroid,
    RelaxedWmd,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::CommonTopic,
        Method::HiddenTopic,
        Method::Centroid,
        Method::RelaxedWmd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::CommonTopic => "common-topic",
            Method::HiddenTopic => "hidden-topic",
            Method::Centroid => "centroid",
            Method::RelaxedWmd => "relaxed-wmd",
        }
    }

    pub fn higher_is_better(self) -> bool {
        self != Method::RelaxedWmd
    }

    /// Whether the method depends on the number of topics.
    pub fn uses_topics(self) -> bool {
        matches!(self, Method::CommonTopic | Method::HiddenTopic)
    }

    pub fn score(self, reviewer: &PreparedDoc, submission: &PreparedDoc, k: usize) -> Result<PairScore> {
        Ok(match self {
            Method::CommonTopic | Method::HiddenTopic => {
                let m = if self == Method::CommonTopic {
                    match_score_prepared(reviewer, submission, k)?
                } else {
                    hidden_topic_match(reviewer, submission, k)?
                };
                PairScore {
                    value: m.score,
                    rel_reviewer: Some(m.rel_reviewer),
                    rel_submission: Some(m.rel_submission),
                    k_eff: Some(m.k_eff),
                    degenerate: m.degenerate,
                }
            }
            Method::Centroid | Method::RelaxedWmd => {
                if reviewer.dim() != submission.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: reviewer.dim(),
                        actual: submission.dim(),
                    });
                }
                let b = if self == Method::Centroid {
                    centroid_prepared(reviewer, submission)
                } else {
                    relaxed_wmd_prepared(reviewer, submission)
                };
                PairScore {
                    value: b.value,
                    rel_reviewer: None,
                    rel_submission: None,
                    k_eff: None,
                    degenerate: b.degenerate,
                }
            }
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub value: f64,
    pub rel_reviewer: Option<f64>,
    pub rel_submission: Option<f64>,
    pub k_eff: Option<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub submission_id: String,
    pub reviewer_id: String,
    pub method: Method,
    pub k: usize,
    pub score: PairScore,
}

type Entry = (String, PreparedDoc);

/// Scores every (submission, reviewer) pair. With `jobs > 1` pairs are
/// evaluated on a dedicated thread pool; rows always come back sorted by
/// `(submission_id, reviewer_id)`, so the result does not depend on `jobs`.
pub fn score_all(
    method: Method,
    reviewers: &[(String, PreparedDoc)],
    submissions: &[(String, PreparedDoc)],
    k: usize,
    jobs: usize,
) -> Result<Vec<ScoreRow>> {
    let mut subs: Vec<&Entry> = submissions.iter().collect();
    subs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut revs: Vec<&Entry> = reviewers.iter().collect();
    revs.sort_by(|a, b| a.0.cmp(&b.0));
    let pairs: Vec<(&Entry, &Entry)> = subs.iter().flat_map(|s| revs.iter().map(move |r| (*s, *r))).collect();

    let run = |pair: &(&Entry, &Entry)| -> Result<ScoreRow> {
        let ((sid, sdoc), (rid, rdoc)) = (pair.0, pair.1);
        Ok(ScoreRow {
            submission_id: sid.clone(),
            reviewer_id: rid.clone(),
            method,
            k,
            score: method.score(rdoc, sdoc, k)?,
        })
    };

    map_ordered(&pairs, jobs, run)?.into_iter().collect()
}

/// `items.iter().map(f)` on `jobs` worker threads; output order always
/// matches input order.
pub(crate) fn map_ordered<T, U, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    if jobs <= 1 {
        return Ok(items.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

pub const SCORES_HEADER: &str =
    "submission_id\treviewer_id\tmethod\tK\tscore\trel_reviewer\trel_submission\tk_eff\tdegenerate";

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

/// Renders rows as TSV with a header line. Floats use the shortest
/// representation that round-trips, so re-reading is lossless.
pub fn scores_to_tsv(rows: &[ScoreRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SCORES_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.submission_id,
            r.reviewer_id,
            r.method,
            r.k,
            r.score.value,
            opt(r.score.rel_reviewer),
            opt(r.score.rel_submission),
            opt(r.score.k_eff),
            r.score.degenerate,
        ));
    }
    out
}

pub fn write_scores(path: impl AsRef<Path>, rows: &[ScoreRow]) -> Result<()> {
    write_file(path.as_ref(), scores_to_tsv(rows).as_bytes())
}

pub fn read_scores(path: impl AsRef<Path>) -> Result<Vec<ScoreRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || (idx == 0 && line.starts_with("submission_id\t")) {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 9 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 9 fields, got {}", f.len()),
            ));
        }
        let bad = |field: &str| Error::parse(path, line_no, format!("invalid `{field}`"));
        let opt_f64 = |s: &str, field: &str| -> Result<Option<f64>> {
            if s == "NA" {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad(field))
            }
        };
        rows.push(ScoreRow {
            submission_id: f[0].to_string(),
            reviewer_id: f[1].to_string(),
            method: f[2].parse().map_err(|_| bad("method"))?,
            k: f[3].parse().map_err(|_| bad("K"))?,
            score: PairScore {
                value: f[4].parse().map_err(|_| bad("score"))?,
                rel_reviewer: opt_f64(f[5], "rel_reviewer")?,
                rel_submission: opt_f64(f[6], "rel_submission")?,
                k_eff: if f[7] == "NA" {
                    None
                } else {
                    Some(f[7].parse().map_err(|_| bad("k_eff"))?)
                },
                degenerate: f[8].parse().map_err(|_| bad("degenerate"))?,
            },
        });
    }
    Ok(rows)
}
