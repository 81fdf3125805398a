//! Weighted minwise hashing of IDF-weighted shingle vectors.
//!
//! Shows the exact binary-expansion route (grid-quantized weights) and the
//! fast per-feature sampling route side by side against the exact weighted
//! Jaccard.
//!
//!     cargo run --release --example weighted_hashing

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use shingleblock::doph::{
    t_expand, weighted_doph_signature, DophConfig, WeightedSamplingConfig,
};
use shingleblock::minhash::{jaccard, weighted_jaccard};
use shingleblock::vectorize::WeightedShingleVector;

fn main() -> shingleblock::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let sampling = WeightedSamplingConfig {
        normalizer: 1.0,
        delta: 1.0 / 16.0,
        max_multiple: 16,
        seed: 99,
    };
    let doph = DophConfig::new(20, 200, 5); // 4000 slots

    // Two overlapping vectors with weights on the delta-grid, so the
    // binary expansion is exact.
    let weight = |rng: &mut ChaCha20Rng| rng.random_range(4..=16) as f64 * sampling.delta;
    let x = WeightedShingleVector {
        record: 0,
        entries: (0..1500).map(|i| (i, weight(&mut rng))).collect(),
    };
    let y = WeightedShingleVector {
        record: 1,
        entries: (700..2200).map(|i| (i, weight(&mut rng))).collect(),
    };

    let jw = weighted_jaccard(&x, &y);
    println!("exact weighted jaccard        {jw:.4}");

    // Route 1: expand each weight into multiple binary features, then take
    // the plain Jaccard. This is exact for on-grid weights.
    let expanded = jaccard(&t_expand(&x, &sampling)?, &t_expand(&y, &sampling)?);
    println!("binary-expansion jaccard      {expanded:.4}  (exact)");

    // Route 2: keep each feature with probability weight / normalizer using
    // shared per-feature coins, then run the one-pass engine.
    let (sx, _) = weighted_doph_signature(&x, &sampling, &doph)?;
    let (sy, _) = weighted_doph_signature(&y, &sampling, &doph)?;
    let agree = sx.values.iter().zip(&sy.values).filter(|(a, b)| a == b).count();
    println!(
        "sampled signature collision   {:.4}  (approximate)",
        agree as f64 / sx.values.len() as f64
    );
    Ok(())
}
