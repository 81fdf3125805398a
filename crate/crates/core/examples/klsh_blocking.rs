//! KLSH blocking: IDF-weighted shingle vectors are projected onto random
//! Gaussian directions and k-means clustered into disjoint blocks. More
//! blocks means cheaper comparison but lower recall.
//!
//!     cargo run --release --example klsh_blocking

use shingleblock::corpus::{generate_synthetic, SynthConfig};
use shingleblock::klsh::KlshConfig;
use shingleblock::metrics::{confusion, recall_precision, reduction_ratio};
use shingleblock::pipeline::Pipeline;
use shingleblock::shingle::ShingleConfig;

fn main() -> shingleblock::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        n_base: 1800,
        dup_rate: 0.12,
        max_dups: 1,
        noise: 0.05,
        seed: 21,
    })?;
    let truth = corpus.truth().unwrap();
    let pipeline = Pipeline::new(&corpus, ShingleConfig::with_k(2))?;

    println!("{} records, {} true match pairs", corpus.n(), truth.len());
    println!("{:>8} {:>10} {:>10} {:>10}", "blocks", "recall", "precision", "rr");
    for clusters in [2usize, 5, 10, 25, 50, 100] {
        let cfg = KlshConfig {
            projections: 20,
            clusters,
            seed: 3,
            ..Default::default()
        };
        let (candidates, _) = pipeline.klsh_candidates(&cfg)?;
        let counts = confusion(&candidates, truth, corpus.n())?;
        let (recall, precision) = recall_precision(&counts);
        let rr = reduction_ratio(&candidates, corpus.n())?;
        println!("{clusters:>8} {recall:>10.4} {precision:>10.4} {rr:>10.4}");
    }
    Ok(())
}
