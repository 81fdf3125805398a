//! Banded candidate generation: K signature slots per band, L bands; records
//! colliding in any band become a candidate pair. Growing L only ever adds
//! candidates, trading reduction ratio for recall.
//!
//!     cargo run --release --example banding

use shingleblock::banding::{build_tables_from_keys, candidates, max_bucket_stats};
use shingleblock::corpus::{generate_synthetic, SynthConfig};
use shingleblock::doph::DophConfig;
use shingleblock::metrics::{confusion, recall_precision, reduction_ratio};
use shingleblock::pipeline::Pipeline;
use shingleblock::shingle::ShingleConfig;

fn main() -> shingleblock::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        n_base: 2500,
        dup_rate: 0.12,
        max_dups: 1,
        noise: 0.06,
        seed: 33,
    })?;
    let truth = corpus.truth().unwrap();
    let pipeline = Pipeline::new(&corpus, ShingleConfig::with_k(3))?;

    let max_bands = 64;
    let cfg = DophConfig::new(8, max_bands, 5);
    let (hashes, _) = pipeline.element_hashes(cfg.seed);
    let keys = Pipeline::band_keys(&hashes, &cfg)?;
    let tables = build_tables_from_keys(&keys, max_bands)?;

    println!("{:>6} {:>10} {:>10} {:>12}", "bands", "recall", "rr", "candidates");
    for bands in [1usize, 2, 4, 8, 16, 32, 64] {
        let cand = candidates(&tables[..bands]);
        let counts = confusion(&cand, truth, corpus.n())?;
        let (recall, _) = recall_precision(&counts);
        let rr = reduction_ratio(&cand, corpus.n())?;
        println!("{bands:>6} {recall:>10.4} {rr:>10.4} {:>12}", cand.len());
    }

    let stats = max_bucket_stats(&tables);
    let worst = stats.iter().map(|s| s.max_bucket).max().unwrap_or(0);
    println!("largest bucket across all {max_bands} tables: {worst} records");
    Ok(())
}
