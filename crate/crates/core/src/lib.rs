//! Paper-reviewer matching with common topic vectors.
//!
//! A reviewer is represented by the concatenated abstracts of their
//! publications and a submission by its abstract. Both become matrices of
//! unit word vectors. The common topics of a pair are the orthonormal
//! directions, one set inside each document's column space, whose pairwise
//! cosines are as large as possible; they come out of an SVD in closed
//! form. The match score measures how much of each document those topics
//! explain.
//!
//! ```
//! use common_topics::embeddings::{doc_matrix, EmbeddingTable};
//! use common_topics::topics::match_score;
//!
//! let (table, _) = EmbeddingTable::from_vectors(3, vec![
//!     ("bayesian".to_string(), vec![1.0, 0.1, 0.0]),
//!     ("inference".to_string(), vec![0.9, 0.3, 0.0]),
//!     ("circuits".to_string(), vec![0.0, 0.0, 1.0]),
//! ]).unwrap();
//! let reviewer = doc_matrix(&["bayesian", "inference", "circuits"], &table);
//! let submission = doc_matrix(&["bayesian", "inference"], &table);
//! let m = match_score(&reviewer, &submission, 2).unwrap();
//! assert!(m.score > 0.0 && m.score <= 1.0);
//! ```

pub mod baselines;
pub mod corpus;
pub mod embeddings;
pub mod error;
pub mod eval;
pub mod explain;
pub mod linalg;
pub mod pipeline;
pub mod scoring;
pub mod topics;

pub use error::{Error, Result};
