//! Common topics between one toy reviewer and one toy submission.
//!
//!     cargo run --example common_topics

use std::path::Path;

use common_topics::corpus::{build_profiles, load_publications, load_stopwords, load_submissions};
use common_topics::embeddings::{doc_matrix_without, load_embeddings};
use common_topics::topics::{common_topics, match_score};

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let table = load_embeddings(toy.join("embeddings.txt"))?.table;
    let stop = load_stopwords(toy.join("stopwords.txt"))?;
    let profiles = build_profiles(&load_publications(toy.join("publications.jsonl"))?)?;
    let submissions = load_submissions(toy.join("submissions.jsonl"))?;

    let submission = submissions[0].to_doc();
    let s = doc_matrix_without(&submission.tokens, &table, &stop);
    println!("submission {} ({} words kept)", submission.submission_id, s.ncols());

    for reviewer in ["ana", "ben", "chen"] {
        let r = doc_matrix_without(&profiles[reviewer].tokens, &table, &stop);
        let topics = common_topics(&r, &s, 3)?;
        let m = match_score(&r, &s, 3)?;
        let cos: Vec<String> = topics.cosines.iter().map(|c| format!("{c:.3}")).collect();
        println!(
            "  {reviewer:<5} cosines [{}]  rel_r {:.3}  rel_s {:.3}  score {:.3}",
            cos.join(", "),
            m.rel_reviewer,
            m.rel_submission,
            m.score
        );
    }
    Ok(())
}
