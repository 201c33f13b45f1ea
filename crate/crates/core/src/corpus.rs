//! Publication and submission records, tokenization, reviewer profiles and
//! the reviewer eligibility filter.
//!
//! All record files are JSONL: one JSON object per line. Blank lines are
//! skipped; any other line that fails to parse is reported with its 1-based
//! line number.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Publication {
    pub pub_id: String,
    pub reviewer_ids: Vec<String>,
    pub year: i32,
    #[serde(default)]
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub submission_id: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
}

impl Submission {
    pub fn to_doc(&self) -> SubmissionDoc {
        SubmissionDoc {
            submission_id: self.submission_id.clone(),
            tokens: tokenize(&self.abstract_text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewerProfile {
    pub reviewer_id: String,
    pub tokens: Vec<String>,
    pub source_pub_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmissionDoc {
    pub submission_id: String,
    pub tokens: Vec<String>,
}

/// Splits text into maximal runs of alphanumeric characters, lowercased.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Concatenates the tokenized abstracts of `publications` in ascending
/// `(year, pub_id)` order.
pub fn build_profile(reviewer_id: &str, publications: &[&Publication]) -> Result<ReviewerProfile> {
    if publications.is_empty() {
        return Err(Error::NoProfileMaterial(reviewer_id.to_string()));
    }
    if let Some(p) = publications
        .iter()
        .find(|p| !p.reviewer_ids.iter().any(|r| r == reviewer_id))
    {
        return Err(Error::NotAnAuthor {
            pub_id: p.pub_id.clone(),
            reviewer_id: reviewer_id.to_string(),
        });
    }

    let mut ordered: Vec<&Publication> = publications.to_vec();
    ordered.sort_by(|a, b| (a.year, &a.pub_id).cmp(&(b.year, &b.pub_id)));

    let mut tokens = Vec::new();
    let mut source_pub_ids = Vec::with_capacity(ordered.len());
    for p in ordered {
        tokens.extend(tokenize(&p.abstract_text));
        source_pub_ids.push(p.pub_id.clone());
    }
    Ok(ReviewerProfile {
        reviewer_id: reviewer_id.to_string(),
        tokens,
        source_pub_ids,
    })
}

/// Groups publications by reviewer. A publication with several reviewers
/// appears under each of them.
pub fn publications_by_reviewer(publications: &[Publication]) -> BTreeMap<String, Vec<&Publication>> {
    let mut out: BTreeMap<String, Vec<&Publication>> = BTreeMap::new();
    for p in publications {
        let mut seen = HashSet::new();
        for r in &p.reviewer_ids {
            if seen.insert(r) {
                out.entry(r.clone()).or_default().push(p);
            }
        }
    }
    out
}

/// Builds the profile of every reviewer named in `publications`, keyed by id.
pub fn build_profiles(publications: &[Publication]) -> Result<BTreeMap<String, ReviewerProfile>> {
    publications_by_reviewer(publications)
        .into_iter()
        .map(|(id, pubs)| build_profile(&id, &pubs).map(|p| (id, p)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterPolicy {
    pub current_year: i32,
    pub inactivity_window: i32,
    pub veteran_window: i32,
    pub min_prior_papers: usize,
}

impl FilterPolicy {
    pub fn new(current_year: i32) -> Self {
        FilterPolicy {
            current_year,
            inactivity_window: 10,
            veteran_window: 40,
            min_prior_papers: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.inactivity_window <= 0 || self.veteran_window <= 0 {
            return Err(Error::Config("filter windows must be positive".into()));
        }
        if self.min_prior_papers < 1 {
            return Err(Error::Config("min_prior_papers must be at least 1".into()));
        }
        Ok(())
    }

    /// Returns the reason a reviewer with these publication years is
    /// excluded, or `None` when the reviewer is kept.
    pub fn exclusion(&self, years: &[i32]) -> Option<ExclusionReason> {
        let recent_cutoff = self.current_year - self.inactivity_window;
        if years.iter().any(|&y| y > recent_cutoff) {
            return None;
        }
        let first = years.iter().copied().min()?;
        if first <= self.current_year - self.veteran_window {
            return Some(ExclusionReason::InactiveVeteran);
        }
        let prior = years.iter().filter(|&&y| y <= recent_cutoff).count();
        if prior < self.min_prior_papers {
            return Some(ExclusionReason::InactiveSparse);
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    /// Started publishing at least `veteran_window` years ago and has
    /// nothing within the inactivity window.
    InactiveVeteran,
    /// Nothing within the inactivity window and too few papers before it.
    InactiveSparse,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::InactiveVeteran => "inactive-veteran",
            ExclusionReason::InactiveSparse => "inactive-sparse",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilterOutcome {
    pub kept: Vec<String>,
    pub excluded: Vec<(String, ExclusionReason)>,
}

/// Applies `policy` to each candidate, preserving input order in both output
/// lists.
pub fn filter_reviewers(candidates: &[(String, Vec<i32>)], policy: &FilterPolicy) -> FilterOutcome {
    let mut out = FilterOutcome::default();
    for (id, years) in candidates {
        match policy.exclusion(years) {
            None => out.kept.push(id.clone()),
            Some(reason) => out.excluded.push((id.clone(), reason)),
        }
    }
    out
}

/// Publication years per reviewer, in reviewer-id order.
pub fn reviewer_years(publications: &[Publication]) -> Vec<(String, Vec<i32>)> {
    publications_by_reviewer(publications)
        .into_iter()
        .map(|(id, pubs)| {
            let mut years: Vec<i32> = pubs.iter().map(|p| p.year).collect();
            years.sort_unstable();
            (id, years)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Publications,
    Submissions,
    Reviewers,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Records {
    Publications(Vec<Publication>),
    Submissions(Vec<Submission>),
    Reviewers(Vec<ReviewerProfile>),
}

pub fn load_records(path: impl AsRef<Path>, kind: RecordKind) -> Result<Records> {
    let path = path.as_ref();
    Ok(match kind {
        RecordKind::Publications => Records::Publications(load_publications(path)?),
        RecordKind::Submissions => Records::Submissions(load_submissions(path)?),
        RecordKind::Reviewers => Records::Reviewers(load_profiles(path)?),
    })
}

pub fn load_publications(path: impl AsRef<Path>) -> Result<Vec<Publication>> {
    let path = path.as_ref();
    let rows: Vec<(usize, Publication)> = read_jsonl(path)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (line, p) in rows {
        if p.pub_id.is_empty() {
            return Err(Error::parse(path, line, "field `pub_id` is empty"));
        }
        if p.year <= 0 {
            return Err(Error::parse(
                path,
                line,
                format!("field `year` must be positive, got {}", p.year),
            ));
        }
        if !seen.insert(p.pub_id.clone()) {
            return Err(Error::DuplicateId {
                kind: "publication",
                id: p.pub_id,
                line,
            });
        }
        out.push(p);
    }
    Ok(out)
}

pub fn load_submissions(path: impl AsRef<Path>) -> Result<Vec<Submission>> {
    let path = path.as_ref();
    let rows: Vec<(usize, Submission)> = read_jsonl(path)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (line, s) in rows {
        if s.submission_id.is_empty() {
            return Err(Error::parse(path, line, "field `submission_id` is empty"));
        }
        if !seen.insert(s.submission_id.clone()) {
            return Err(Error::DuplicateId {
                kind: "submission",
                id: s.submission_id,
                line,
            });
        }
        out.push(s);
    }
    Ok(out)
}

/// Loads profiles written by [`write_profiles`].
pub fn load_profiles(path: impl AsRef<Path>) -> Result<Vec<ReviewerProfile>> {
    let path = path.as_ref();
    let rows: Vec<(usize, ReviewerProfile)> = read_jsonl(path)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (line, p) in rows {
        if !seen.insert(p.reviewer_id.clone()) {
            return Err(Error::DuplicateId {
                kind: "reviewer",
                id: p.reviewer_id,
                line,
            });
        }
        out.push(p);
    }
    Ok(out)
}

pub fn write_profiles<'a, I>(path: impl AsRef<Path>, profiles: I) -> Result<()>
where
    I: IntoIterator<Item = &'a ReviewerProfile>,
{
    let path = path.as_ref();
    let mut buf = Vec::new();
    for p in profiles {
        serde_json::to_writer(&mut buf, p).map_err(|e| Error::Internal(e.to_string()))?;
        buf.push(b'\n');
    }
    write_file(path, &buf)
}

/// One token per line; blank lines ignored. Tokens are lowercased.
pub fn load_stopwords(path: impl AsRef<Path>) -> Result<HashSet<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_lowercase)
        .collect())
}

pub(crate) fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::parse(path, line_no, e.to_string()))?;
        out.push((line_no, record));
    }
    Ok(out)
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}
