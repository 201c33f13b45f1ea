//! Common topic extraction and relevance scoring.
//!
//! Given a reviewer matrix `R` (`d × m`) and a submission matrix `S`
//! (`d × n`) with unit-norm columns, the common topics are `K` orthonormal
//! pairs `(P_k, Q_k)` with `P = R a`, `Q = S b` that maximize
//! `Σ_k cos(P_k, Q_k)`. The maximizer is given by principal vectors: with
//! orthonormal bases `U_R`, `U_S` and `U_Rᵀ U_S = W Σ Vᵀ`, take
//! `P* = U_R W`, `Q* = U_S V` and the objective is the sum of the top
//! singular values.
//!
//! Relevance of a word `w` to a topic set `T` is `Σ_k (wᵀ T_k)²`, the
//! squared norm of its projection onto `span(T)`; a document's relevance is
//! the mean over its words. The match score is the harmonic mean of the
//! reviewer's and the submission's relevance to `P*`.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::embeddings::DocumentMatrix;
use crate::error::{Error, Result};
use crate::linalg::{column_basis, peak_is_negative, thin_svd, top_eigenvectors, RANK_EPS};

#[derive(Debug, Clone, PartialEq)]
pub struct CommonTopics {
    /// Reviewer-side topics, `d × k_eff`, orthonormal columns.
    pub p_star: DMatrix<f64>,
    /// Submission-side topics, `d × k_eff`, orthonormal columns.
    pub q_star: DMatrix<f64>,
    /// `cos(P*_k, Q*_k)`, descending.
    pub cosines: Vec<f64>,
    pub k_requested: usize,
    pub k_eff: usize,
}

impl CommonTopics {
    /// Value of the maximized objective, `Σ_k cos(P*_k, Q*_k)`.
    pub fn objective(&self) -> f64 {
        self.cosines.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchScore {
    pub rel_reviewer: f64,
    pub rel_submission: f64,
    pub score: f64,
    pub k_eff: usize,
    /// Set when either document had no columns; all values are then 0.
    pub degenerate: bool,
}

impl MatchScore {
    fn degenerate() -> Self {
        MatchScore {
            rel_reviewer: 0.0,
            rel_submission: 0.0,
            score: 0.0,
            k_eff: 0,
            degenerate: true,
        }
    }

    pub(crate) fn from_relevances(rel_reviewer: f64, rel_submission: f64, k_eff: usize) -> Self {
        MatchScore {
            rel_reviewer,
            rel_submission,
            score: harmonic_mean(rel_reviewer, rel_submission),
            k_eff,
            degenerate: false,
        }
    }
}

/// `2ab / (a + b)`, or 0 when `a + b = 0`.
pub fn harmonic_mean(a: f64, b: f64) -> f64 {
    let sum = a + b;
    if sum <= 0.0 {
        0.0
    } else {
        (2.0 * a * b / sum).clamp(a.min(b), a.max(b))
    }
}

/// A document reduced to what scoring needs: its column-space basis, the
/// Gram matrix `D Dᵀ`, and its distinct columns with multiplicities.
///
/// Preparing once per document lets a batch matcher reuse the expensive
/// decomposition across every pair the document takes part in.
#[derive(Debug, Clone)]
pub struct PreparedDoc {
    ncols: usize,
    basis: DMatrix<f64>,
    gram: DMatrix<f64>,
    distinct: DMatrix<f64>,
    counts: Vec<f64>,
    /// Squared singular values of the weighted matrix, one per basis
    /// column: `basisᵀ G basis` is this diagonal.
    energy: Vec<f64>,
}

impl PreparedDoc {
    pub fn new(doc: &DocumentMatrix) -> Self {
        let m = doc.matrix();
        let d = m.nrows();

        // Identical tokens share a vector; merge them with weight sqrt(count)
        // so that the weighted matrix has the same Gram matrix as `m`.
        let mut slot: HashMap<&str, usize> = HashMap::new();
        let mut first_col = Vec::new();
        let mut counts: Vec<f64> = Vec::new();
        for (j, tok) in doc.kept_tokens().iter().enumerate() {
            match slot.get(tok.as_str()) {
                Some(&s) => counts[s] += 1.0,
                None => {
                    slot.insert(tok, counts.len());
                    first_col.push(j);
                    counts.push(1.0);
                }
            }
        }
        let mut distinct = DMatrix::zeros(d, first_col.len());
        for (s, &j) in first_col.iter().enumerate() {
            distinct.set_column(s, &m.column(j));
        }
        let mut weighted = distinct.clone();
        for (mut col, &c) in weighted.column_iter_mut().zip(&counts) {
            col *= c.sqrt();
        }
        let (basis, singular) = column_basis(&weighted, RANK_EPS);
        let energy = singular[..basis.ncols()].iter().map(|x| x * x).collect();
        let gram = &weighted * weighted.transpose();
        PreparedDoc {
            ncols: m.ncols(),
            basis,
            gram,
            distinct,
            counts,
            energy,
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_empty(&self) -> bool {
        self.ncols == 0
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal basis of the column space.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Distinct columns and how often each occurs.
    pub(crate) fn distinct_columns(&self) -> (&DMatrix<f64>, &[f64]) {
        (&self.distinct, &self.counts)
    }

    /// Mean relevance of the document's words to an orthonormal topic
    /// set, computed as `tr(Tᵀ G T) / m`.
    pub fn relevance(&self, topics: &DMatrix<f64>) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyDocument);
        }
        check_dim(self.dim(), topics.nrows())?;
        let projected = &self.gram * topics;
        let total: f64 = topics.iter().zip(projected.iter()).map(|(a, b)| a * b).sum();
        Ok((total / self.ncols as f64).clamp(0.0, 1.0))
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Solves the common topic problem for two documents.
pub fn common_topics(r: &DocumentMatrix, s: &DocumentMatrix, k: usize) -> Result<CommonTopics> {
    if r.is_empty() || s.is_empty() {
        return Err(Error::EmptyDocument);
    }
    check_dim(r.dim(), s.dim())?;
    common_topics_prepared(&PreparedDoc::new(r), &PreparedDoc::new(s), k)
}

pub fn common_topics_prepared(r: &PreparedDoc, s: &PreparedDoc, k: usize) -> Result<CommonTopics> {
    if k == 0 {
        return Err(Error::Config("number of topics must be at least 1".into()));
    }
    if r.is_empty() || s.is_empty() {
        return Err(Error::EmptyDocument);
    }
    check_dim(r.dim(), s.dim())?;

    let cross = r.basis.transpose() * &s.basis;
    let svd = thin_svd(&cross, true);
    let k_eff = k.min(r.rank()).min(s.rank()).min(svd.s.len());
    let (w, v) = resolve_boundary_tie(r, s, &svd, k_eff);

    let mut p_star = &r.basis * w;
    let mut q_star = &s.basis * v;
    for j in 0..k_eff {
        if peak_is_negative(p_star.column(j).iter()) {
            p_star.column_mut(j).neg_mut();
            q_star.column_mut(j).neg_mut();
        }
    }
    let cosines = svd.s[..k_eff].iter().map(|&x| x.clamp(0.0, 1.0)).collect();
    Ok(CommonTopics {
        p_star,
        q_star,
        cosines,
        k_requested: k,
        k_eff,
    })
}

/// Singular values closer than this are treated as equal when choosing
/// among equally optimal topic sets.
const TIE_TOL: f64 = 1e-10;

/// Coefficients `(W, V)` of the first `k_eff` topic pairs in the two bases.
///
/// When the singular value at the cutoff is shared with directions past it,
/// the optimal topic span is not unique. The tied cluster is then resolved
/// by keeping the directions that carry the most reviewer weight (top
/// eigenvectors of the reviewer Gram matrix restricted to the cluster), so
/// the result depends only on the two column spaces and `R Rᵀ`, not on
/// column order.
fn resolve_boundary_tie(
    r: &PreparedDoc,
    s: &PreparedDoc,
    svd: &crate::linalg::ThinSvd,
    k_eff: usize,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let t = svd.s.len();
    let head = |m: &DMatrix<f64>| m.columns(0, k_eff).clone_owned();
    if k_eff == 0 {
        return (head(&svd.u), head(&svd.v));
    }
    let cut = svd.s[k_eff - 1];
    let above = svd.s.iter().take_while(|&&x| x > cut + TIE_TOL).count();
    let cluster_end = above + svd.s[above..].iter().take_while(|&&x| x >= cut - TIE_TOL).count();
    let zero_cluster = cut <= TIE_TOL;
    let ambiguous = cluster_end > k_eff || (zero_cluster && r.rank() > t);
    if !ambiguous {
        return (head(&svd.u), head(&svd.v));
    }

    let need = k_eff - above;
    let r_weight = DMatrix::from_diagonal(&DVector::from_vec(r.energy.clone()));
    let (w_sel, v_sel) = if zero_cluster {
        // Every direction orthogonal to the other document ties at zero;
        // each side is resolved by its own Gram matrix.
        let s_weight = DMatrix::from_diagonal(&DVector::from_vec(s.energy.clone()));
        let wc = with_complement(&svd.u.columns(above, t - above).clone_owned(), &svd.u);
        let vc = with_complement(&svd.v.columns(above, t - above).clone_owned(), &svd.v);
        (
            &wc * top_eigenvectors(&(wc.transpose() * &r_weight * &wc), need),
            &vc * top_eigenvectors(&(vc.transpose() * &s_weight * &vc), need),
        )
    } else {
        let wc = svd.u.columns(above, cluster_end - above).clone_owned();
        let vc = svd.v.columns(above, cluster_end - above).clone_owned();
        // Rotating both sides by the same Z keeps them paired singular
        // vectors of the shared value.
        let z = top_eigenvectors(&(wc.transpose() * &r_weight * &wc), need);
        (&wc * &z, &vc * z)
    };

    let mut w = DMatrix::zeros(svd.u.nrows(), k_eff);
    let mut v = DMatrix::zeros(svd.v.nrows(), k_eff);
    w.columns_mut(0, above).copy_from(&svd.u.columns(0, above));
    v.columns_mut(0, above).copy_from(&svd.v.columns(0, above));
    w.columns_mut(above, need).copy_from(&w_sel);
    v.columns_mut(above, need).copy_from(&v_sel);
    (w, v)
}

/// `cols` extended by an orthonormal basis of the complement of `full`'s
/// column space.
fn with_complement(cols: &DMatrix<f64>, full: &DMatrix<f64>) -> DMatrix<f64> {
    let n = full.nrows();
    let projector = DMatrix::<f64>::identity(n, n) - full * full.transpose();
    let (perp, _) = column_basis(&projector, 1e-6);
    let mut out = DMatrix::zeros(n, cols.ncols() + perp.ncols());
    out.columns_mut(0, cols.ncols()).copy_from(cols);
    out.columns_mut(cols.ncols(), perp.ncols()).copy_from(&perp);
    out
}

/// `Σ_k cos(P_k, Q_k)` over paired columns.
pub fn pair_topic_similarity(p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<f64> {
    check_dim(p.nrows(), q.nrows())?;
    check_dim(p.ncols(), q.ncols())?;
    let mut total = 0.0;
    for (j, (a, b)) in p.column_iter().zip(q.column_iter()).enumerate() {
        let (na, nb) = (a.norm(), b.norm());
        if na == 0.0 || nb == 0.0 {
            return Err(Error::ZeroColumn(j));
        }
        total += a.dot(&b) / (na * nb);
    }
    Ok(total)
}

/// `Σ_k (wᵀ T_k)²` for a unit vector `w` and orthonormal topics `T`.
pub fn word_topic_relevance(w: &[f64], topics: &DMatrix<f64>) -> Result<f64> {
    check_dim(topics.nrows(), w.len())?;
    let w = DVector::from_column_slice(w);
    let norm = w.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::NotUnitNorm(norm));
    }
    Ok(column_relevance(&w, topics))
}

fn column_relevance(w: &DVector<f64>, topics: &DMatrix<f64>) -> f64 {
    topics
        .column_iter()
        .map(|t| t.dot(w).powi(2))
        .sum::<f64>()
        .clamp(0.0, 1.0)
}

/// Mean of [`word_topic_relevance`] over the document's columns.
pub fn doc_topic_relevance(doc: &DocumentMatrix, topics: &DMatrix<f64>) -> Result<f64> {
    if doc.is_empty() {
        return Err(Error::EmptyDocument);
    }
    check_dim(topics.nrows(), doc.dim())?;
    let total: f64 = doc
        .matrix()
        .column_iter()
        .map(|c| column_relevance(&c.clone_owned(), topics))
        .sum();
    Ok((total / doc.ncols() as f64).clamp(0.0, 1.0))
}

/// Reviewer-submission match score. An empty document yields a zero score
/// flagged as degenerate rather than an error.
pub fn match_score(r: &DocumentMatrix, s: &DocumentMatrix, k: usize) -> Result<MatchScore> {
    check_dim(r.dim(), s.dim())?;
    if r.is_empty() || s.is_empty() {
        return Ok(MatchScore::degenerate());
    }
    match_score_prepared(&PreparedDoc::new(r), &PreparedDoc::new(s), k)
}

pub fn match_score_prepared(r: &PreparedDoc, s: &PreparedDoc, k: usize) -> Result<MatchScore> {
    check_dim(r.dim(), s.dim())?;
    if r.is_empty() || s.is_empty() {
        return Ok(MatchScore::degenerate());
    }
    let topics = common_topics_prepared(r, s, k)?;
    let rel_r = r.relevance(&topics.p_star)?;
    let rel_s = s.relevance(&topics.p_star)?;
    Ok(MatchScore::from_relevances(rel_r, rel_s, topics.k_eff))
}
