//! Embedding-based comparison methods: hidden topics taken from the
//! reviewer alone, centroid cosine, and a relaxed word mover's distance.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::embeddings::DocumentMatrix;
use crate::error::{Error, Result};
use crate::topics::{MatchScore, PreparedDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineMethod {
    HiddenTopic,
    Centroid,
    RelaxedWmd,
}

impl BaselineMethod {
    pub fn higher_is_better(self) -> bool {
        !matches!(self, BaselineMethod::RelaxedWmd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineScore {
    pub method: BaselineMethod,
    pub value: f64,
    pub higher_is_better: bool,
    pub degenerate: bool,
}

impl BaselineScore {
    fn new(method: BaselineMethod, value: f64, degenerate: bool) -> Self {
        BaselineScore {
            method,
            value,
            higher_is_better: method.higher_is_better(),
            degenerate,
        }
    }
}

/// Top `min(k, rank R)` left singular vectors of the reviewer matrix.
pub fn hidden_topics(r: &DocumentMatrix, k: usize) -> Result<DMatrix<f64>> {
    if r.is_empty() {
        return Err(Error::EmptyDocument);
    }
    hidden_topics_prepared(&PreparedDoc::new(r), k)
}

pub fn hidden_topics_prepared(r: &PreparedDoc, k: usize) -> Result<DMatrix<f64>> {
    if r.is_empty() {
        return Err(Error::EmptyDocument);
    }
    if k == 0 {
        return Err(Error::Config("number of topics must be at least 1".into()));
    }
    // The basis comes from the SVD of R (duplicates merged), so its leading
    // columns are R's leading left singular vectors.
    let k_eff = k.min(r.rank());
    Ok(r.basis().columns(0, k_eff).clone_owned())
}

/// Harmonic mean of reviewer and submission relevance to the reviewer's
/// own hidden topics.
pub fn hidden_topic_match(r: &PreparedDoc, s: &PreparedDoc, k: usize) -> Result<MatchScore> {
    if r.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: r.dim(),
            actual: s.dim(),
        });
    }
    if r.is_empty() || s.is_empty() {
        return Ok(MatchScore {
            rel_reviewer: 0.0,
            rel_submission: 0.0,
            score: 0.0,
            k_eff: 0,
            degenerate: true,
        });
    }
    let topics = hidden_topics_prepared(r, k)?;
    let rel_r = r.relevance(&topics)?;
    let rel_s = s.relevance(&topics)?;
    Ok(MatchScore::from_relevances(rel_r, rel_s, topics.ncols()))
}

pub fn hidden_topic_score(r: &DocumentMatrix, s: &DocumentMatrix, k: usize) -> Result<BaselineScore> {
    let m = hidden_topic_match(&PreparedDoc::new(r), &PreparedDoc::new(s), k)?;
    Ok(BaselineScore::new(BaselineMethod::HiddenTopic, m.score, m.degenerate))
}

fn weighted_mean(doc: &PreparedDoc) -> DVector<f64> {
    let (cols, counts) = doc.distinct_columns();
    let weights = DVector::from_column_slice(counts);
    cols * weights / doc.ncols() as f64
}

pub(crate) fn centroid_prepared(r: &PreparedDoc, s: &PreparedDoc) -> BaselineScore {
    if r.is_empty() || s.is_empty() {
        return BaselineScore::new(BaselineMethod::Centroid, 0.0, true);
    }
    let (a, b) = (weighted_mean(r), weighted_mean(s));
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return BaselineScore::new(BaselineMethod::Centroid, 0.0, true);
    }
    let cos = (a.dot(&b) / (na * nb)).clamp(-1.0, 1.0);
    BaselineScore::new(BaselineMethod::Centroid, cos, false)
}

/// Cosine between the column means of the two documents.
pub fn centroid_score(r: &DocumentMatrix, s: &DocumentMatrix) -> Result<BaselineScore> {
    if r.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: r.dim(),
            actual: s.dim(),
        });
    }
    Ok(centroid_prepared(&PreparedDoc::new(r), &PreparedDoc::new(s)))
}

/// Mean distance from each word of `from` to its nearest word in `to`.
fn directional_cost(from: &PreparedDoc, to: &PreparedDoc) -> f64 {
    let (fc, fw) = from.distinct_columns();
    let (tc, _) = to.distinct_columns();
    let dots = fc.transpose() * tc;
    let mut total = 0.0;
    for (i, &w) in fw.iter().enumerate() {
        let row = dots.row(i);
        let nearest = row
            .iter()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |best, (j, &x)| if x > best.1 { (j, x) } else { best },
            )
            .0;
        // exact distance for the chosen pair; 2 - 2·dot cancels badly near 0
        total += w * (fc.column(i) - tc.column(nearest)).norm();
    }
    total / from.ncols() as f64
}

pub(crate) fn relaxed_wmd_prepared(r: &PreparedDoc, s: &PreparedDoc) -> BaselineScore {
    if r.is_empty() || s.is_empty() {
        return BaselineScore::new(BaselineMethod::RelaxedWmd, f64::INFINITY, true);
    }
    let value = directional_cost(s, r).max(directional_cost(r, s));
    BaselineScore::new(BaselineMethod::RelaxedWmd, value, false)
}

/// Relaxed word mover's distance: each word travels to its nearest
/// neighbour in the other document; the larger of the two directional
/// costs is returned. Lower is more similar.
pub fn relaxed_wmd(r: &DocumentMatrix, s: &DocumentMatrix) -> Result<BaselineScore> {
    if r.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: r.dim(),
            actual: s.dim(),
        });
    }
    Ok(relaxed_wmd_prepared(&PreparedDoc::new(r), &PreparedDoc::new(s)))
}
