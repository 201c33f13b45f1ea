//! Which toy reviewers the eligibility filter keeps now and if the same
//! corpus were assessed eleven years later.
//!
//!     cargo run --example reviewer_filter

use std::path::Path;

use common_topics::corpus::{filter_reviewers, load_publications, reviewer_years, FilterPolicy};

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let pubs = load_publications(toy.join("publications.jsonl"))?;
    let candidates = reviewer_years(&pubs);
    for (id, years) in &candidates {
        println!("{id:<5} {years:?}");
    }

    let latest = pubs.iter().map(|p| p.year).max().unwrap_or_default();
    for policy in [FilterPolicy::new(latest), FilterPolicy::new(latest + 11)] {
        policy.validate()?;
        let out = filter_reviewers(&candidates, &policy);
        let excluded: Vec<String> = out
            .excluded
            .iter()
            .map(|(id, why)| format!("{id} ({})", why.as_str()))
            .collect();
        println!(
            "in {}: kept {:?}; excluded {}",
            policy.current_year,
            out.kept,
            excluded.join(", ")
        );
    }
    Ok(())
}
