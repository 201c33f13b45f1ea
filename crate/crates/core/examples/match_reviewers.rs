//! End to end on the toy corpus: build profiles, score every pair, keep the
//! top two reviewers per submission.
//!
//!     cargo run --example match_reviewers [-- OUT_DIR]

use std::path::{Path, PathBuf};

use common_topics::pipeline::{self, IngestOptions, Inputs, MatchOptions, RankOptions};
use common_topics::scoring::Method;

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ctm-match-reviewers"));

    let ingest = pipeline::ingest(&IngestOptions::new(toy.join("publications.jsonl"), out.clone()))?;
    println!("{} reviewers kept, {} excluded", ingest.kept, ingest.excluded);

    let summary = pipeline::match_all(&MatchOptions {
        inputs: Inputs {
            profiles: out.join(pipeline::PROFILES_FILE),
            submissions: toy.join("submissions.jsonl"),
            embeddings: toy.join("embeddings.txt"),
            stopwords: Some(toy.join("stopwords.txt")),
        },
        out: out.join("scores.tsv"),
        method: Method::CommonTopic,
        k: 3,
        jobs: 2,
    })?;
    println!("scored {} pairs", summary.rows);

    pipeline::rank(&RankOptions {
        scores: out.join("scores.tsv"),
        out: out.join("recommendations.tsv"),
        top_n: 2,
    })?;
    let text = std::fs::read_to_string(out.join("recommendations.tsv")).map_err(|e| common_topics::Error::Io {
        path: out.join("recommendations.tsv"),
        source: e,
    })?;
    print!("{text}");
    println!("outputs in {}", out.display());
    Ok(())
}
