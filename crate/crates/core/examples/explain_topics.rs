//! Words nearest to each common topic of a reviewer and a submission.
//!
//!     cargo run --example explain_topics [-- SUBMISSION REVIEWER]

use std::path::Path;

use common_topics::corpus::{build_profiles, load_publications, load_stopwords, load_submissions};
use common_topics::embeddings::{doc_matrix_without, load_embeddings};
use common_topics::explain::TopicExplanation;
use common_topics::topics::{common_topics, match_score};
use common_topics::Error;

fn main() -> common_topics::Result<()> {
    let mut args = std::env::args().skip(1);
    let sub_id = args.next().unwrap_or_else(|| "s3".into());
    let rev_id = args.next().unwrap_or_else(|| "dara".into());

    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let table = load_embeddings(toy.join("embeddings.txt"))?.table;
    let stop = load_stopwords(toy.join("stopwords.txt"))?;
    let profiles = build_profiles(&load_publications(toy.join("publications.jsonl"))?)?;
    let profile = profiles.get(&rev_id).ok_or_else(|| Error::UnknownId {
        kind: "reviewer",
        id: rev_id.clone(),
    })?;
    let sub = load_submissions(toy.join("submissions.jsonl"))?
        .into_iter()
        .find(|s| s.submission_id == sub_id)
        .ok_or_else(|| Error::UnknownId {
            kind: "submission",
            id: sub_id.clone(),
        })?;

    let r = doc_matrix_without(&profile.tokens, &table, &stop);
    let s = doc_matrix_without(&sub.to_doc().tokens, &table, &stop);
    let topics = common_topics(&r, &s, 3)?;
    let score = match_score(&r, &s, 3)?;
    print!(
        "{}",
        TopicExplanation::new(&sub_id, &rev_id, &topics, &score, &table, 5)?.render()
    );
    Ok(())
}
