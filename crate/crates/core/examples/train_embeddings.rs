//! Trains small CBOW embeddings on the toy abstracts, writes them in
//! word2vec text format, and shows what the model predicts for a few
//! contexts.
//!
//!     cargo run --example train_embeddings

use std::path::Path;

use common_topics::corpus::{load_publications, tokenize};
use common_topics::embeddings::{train_embeddings, TrainConfig};

fn main() -> common_topics::Result<()> {
    let toy = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let pubs = load_publications(toy.join("publications.jsonl"))?;
    // repeat the tiny corpus so every word is seen often enough
    let streams: Vec<Vec<String>> = (0..200)
        .flat_map(|_| pubs.iter().map(|p| tokenize(&p.abstract_text)))
        .collect();
    let config = TrainConfig {
        dim: 16,
        window: 1,
        epochs: 5,
        min_count: 1,
        ..TrainConfig::default()
    };
    let out = train_embeddings(&streams, &config)?;
    let losses: Vec<String> = out.epoch_losses.iter().map(|l| format!("{l:.4}")).collect();
    println!("{} words, loss per epoch [{}]", out.table.len(), losses.join(", "));
    for context in [["variational", "for"], ["object", "with"], ["spectral", "of"]] {
        let mut guesses: Vec<(&str, f64)> = out
            .table
            .words()
            .iter()
            .filter_map(|w| Some((w.as_str(), out.model.center_probability(&context, w)?)))
            .collect();
        guesses.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
        let top: Vec<String> = guesses.iter().take(3).map(|(w, p)| format!("{w} {p:.2}")).collect();
        println!("  {} _ {}: {}", context[0], context[1], top.join(", "));
    }

    let path = std::env::temp_dir().join("ctm-toy-embeddings.txt");
    out.table.save(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
