//! All four scoring methods side by side on the toy corpus, over the
//! reviewers that pass the eligibility filter.
//!
//!     cargo run --example baselines

use std::path::Path;

use common_topics::corpus::{
    build_profiles, filter_reviewers, load_publications, load_stopwords, load_submissions, reviewer_years, FilterPolicy,
};
use common_topics::embeddings::{doc_matrix_without, load_embeddings};
use common_topics::scoring::Method;
use common_topics::topics::PreparedDoc;

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let table = load_embeddings(toy.join("embeddings.txt"))?.table;
    let stop = load_stopwords(toy.join("stopwords.txt"))?;
    let pubs = load_publications(toy.join("publications.jsonl"))?;
    let latest = pubs.iter().map(|p| p.year).max().unwrap_or_default();
    let eligible = filter_reviewers(&reviewer_years(&pubs), &FilterPolicy::new(latest)).kept;
    let profiles = build_profiles(&pubs)?;
    let submissions = load_submissions(toy.join("submissions.jsonl"))?;

    let reviewers: Vec<(&String, PreparedDoc)> = eligible
        .iter()
        .map(|id| {
            (
                id,
                PreparedDoc::new(&doc_matrix_without(&profiles[id].tokens, &table, &stop)),
            )
        })
        .collect();

    for sub in &submissions {
        let doc = sub.to_doc();
        let s = PreparedDoc::new(&doc_matrix_without(&doc.tokens, &table, &stop));
        println!("{}", sub.submission_id);
        for method in Method::ALL {
            let mut scored: Vec<(&String, f64)> = reviewers
                .iter()
                .map(|(id, r)| method.score(r, &s, 3).map(|p| (*id, p.value)))
                .collect::<common_topics::Result<_>>()?;
            if method.higher_is_better() {
                scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
            } else {
                scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(b.0)));
            }
            let top: Vec<String> = scored.iter().take(3).map(|(id, v)| format!("{id} {v:.3}")).collect();
            println!("  {:<13} {}", method.as_str(), top.join(", "));
        }
    }
    Ok(())
}
