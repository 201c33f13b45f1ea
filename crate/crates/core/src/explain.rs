//! Human-readable view of common topics: the vocabulary words closest to
//! each topic vector.

use std::fmt::Write as _;

use serde::Serialize;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::topics::{CommonTopics, MatchScore};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopWord {
    pub word: String,
    /// Squared cosine between the word and the topic.
    pub weight: f64,
}

/// The `top_words` words with the highest squared cosine to each column of
/// `topics.p_star`. Ties are broken by word.
pub fn top_words(topics: &CommonTopics, table: &EmbeddingTable, top_words: usize) -> Result<Vec<Vec<TopWord>>> {
    if topics.p_star.nrows() != table.dim() {
        return Err(Error::DimensionMismatch {
            expected: table.dim(),
            actual: topics.p_star.nrows(),
        });
    }
    let sims = table.as_matrix() * &topics.p_star;
    let words = table.words();
    Ok((0..topics.k_eff)
        .map(|k| {
            let mut scored: Vec<(usize, f64)> = sims.column(k).iter().map(|x| x * x).enumerate().collect();
            scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| words[a.0].cmp(&words[b.0])));
            scored
                .into_iter()
                .take(top_words)
                .map(|(i, w)| TopWord {
                    word: words[i].clone(),
                    weight: w,
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopicExplanation {
    pub submission_id: String,
    pub reviewer_id: String,
    pub k_eff: usize,
    pub cosines: Vec<f64>,
    /// Reviewer-side topic vectors, one `d`-vector per topic.
    pub topics: Vec<Vec<f64>>,
    pub top_words: Vec<Vec<TopWord>>,
    pub score: f64,
    pub rel_reviewer: f64,
    pub rel_submission: f64,
}

impl TopicExplanation {
    pub fn new(
        submission_id: &str,
        reviewer_id: &str,
        topics: &CommonTopics,
        score: &MatchScore,
        table: &EmbeddingTable,
        n_words: usize,
    ) -> Result<Self> {
        Ok(TopicExplanation {
            submission_id: submission_id.to_string(),
            reviewer_id: reviewer_id.to_string(),
            k_eff: topics.k_eff,
            cosines: topics.cosines.clone(),
            topics: topics
                .p_star
                .column_iter()
                .map(|c| c.iter().copied().collect())
                .collect(),
            top_words: top_words(topics, table, n_words)?,
            score: score.score,
            rel_reviewer: score.rel_reviewer,
            rel_submission: score.rel_submission,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "submission {}  reviewer {}", self.submission_id, self.reviewer_id);
        let _ = writeln!(
            out,
            "score {:.4}  rel_reviewer {:.4}  rel_submission {:.4}  topics {}",
            self.score, self.rel_reviewer, self.rel_submission, self.k_eff
        );
        for (k, (cos, words)) in self.cosines.iter().zip(&self.top_words).enumerate() {
            let list: Vec<String> = words.iter().map(|w| format!("{} ({:.3})", w.word, w.weight)).collect();
            let _ = writeln!(out, "topic {:>2}  cos {:.4}  {}", k + 1, cos, list.join(", "));
        }
        out
    }
}
