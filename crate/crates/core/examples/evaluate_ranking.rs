//! Precision at 1 and 3 for every method against the toy judgments.
//!
//!     cargo run --example evaluate_ranking

use std::path::Path;

use common_topics::corpus::{build_profiles, load_publications, load_stopwords, load_submissions};
use common_topics::embeddings::load_embeddings;
use common_topics::eval::{evaluate, load_judgments_jsonl, render_table, LiveCorpus, DEFAULT_THRESHOLD};
use common_topics::scoring::Method;

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let table = load_embeddings(toy.join("embeddings.txt"))?.table;
    let stopwords = load_stopwords(toy.join("stopwords.txt"))?;
    let profiles: Vec<_> = build_profiles(&load_publications(toy.join("publications.jsonl"))?)?
        .into_values()
        .collect();
    let submissions: Vec<_> = load_submissions(toy.join("submissions.jsonl"))?
        .iter()
        .map(|s| s.to_doc())
        .collect();
    let qrels = load_judgments_jsonl(toy.join("judgments.jsonl"))?;

    let corpus = LiveCorpus {
        profiles: &profiles,
        submissions: &submissions,
        table: &table,
        stopwords: &stopwords,
    };
    let reports = Method::ALL
        .iter()
        .map(|&m| evaluate(m, &corpus, &qrels, &[1, 3], 3, DEFAULT_THRESHOLD, 1))
        .collect::<common_topics::Result<Vec<_>>>()?;
    print!("{}", render_table(&reports));
    Ok(())
}
