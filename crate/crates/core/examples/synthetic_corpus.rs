//! Synthetic labeled corpora: base entities with typo-corrupted duplicates
//! and derived ground-truth match pairs.
//!
//!     cargo run --example synthetic_corpus

use shingleblock::corpus::{generate_synthetic, write_corpus, SynthConfig};

fn main() -> shingleblock::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        n_base: 50,
        dup_rate: 0.2,
        max_dups: 1,
        noise: 0.08,
        seed: 1,
    })?;
    let truth = corpus.truth().unwrap();
    println!("{} records, {} true match pairs\n", corpus.n(), truth.len());

    // Print the first few duplicate pairs side by side.
    for &(a, b) in truth.match_pairs.iter().take(3) {
        for i in [a, b] {
            let r = corpus.record(i);
            println!("{:<8} {}", r.id, r.joined_text());
        }
        println!();
    }

    let out = std::env::temp_dir().join("shingleblock_synth.csv");
    write_corpus(&corpus, &out)?;
    println!("written to {}", out.display());
    Ok(())
}
