//! Timing breakdown of one K column of the DOPH grid on a 10k-record corpus.
//!
//!     cargo run --release --example profile_grid [K]

use std::time::Instant;

use shingleblock::banding;
use shingleblock::corpus::{generate_synthetic, SynthConfig};
use shingleblock::doph::DophConfig;
use shingleblock::metrics::confusion;
use shingleblock::pipeline::Pipeline;
use shingleblock::shingle::ShingleConfig;

fn main() -> shingleblock::Result<()> {
    let k_band: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(15);
    let mut t = Instant::now();
    let mut lap = |label: &str| {
        println!("{label:<18} {:.2}s", t.elapsed().as_secs_f64());
        t = Instant::now();
    };

    let corpus = generate_synthetic(&SynthConfig {
        n_base: 9091,
        dup_rate: 0.1,
        max_dups: 1,
        noise: 0.05,
        seed: 606,
    })?;
    lap("synth");
    let pipeline = Pipeline::new(&corpus, ShingleConfig::with_k(3))?;
    lap("shingle");

    // similarity profile: true duplicate pairs vs random pairs
    use rand::prelude::*;
    use shingleblock::minhash::jaccard;
    let shingles = pipeline.shingles();
    let truth = corpus.truth().unwrap();
    let mut dup_j: Vec<f64> = truth
        .match_pairs
        .iter()
        .map(|&(a, b)| jaccard(&shingles[a as usize], &shingles[b as usize]))
        .collect();
    dup_j.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
    let mut rand_j: Vec<f64> = (0..100_000)
        .map(|_| {
            let a = rng.random_range(0..corpus.n());
            let b = rng.random_range(0..corpus.n());
            jaccard(&shingles[a.min(b)], &shingles[a.max(b).max(a.min(b) + 1)])
        })
        .collect();
    rand_j.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |v: &[f64], p: f64| v[((v.len() - 1) as f64 * p) as usize];
    println!(
        "dup J:  min {:.3} p5 {:.3} p50 {:.3}",
        dup_j[0],
        q(&dup_j, 0.05),
        q(&dup_j, 0.5)
    );
    println!(
        "rand J: p50 {:.3} p99 {:.3} p99.99 {:.3} max {:.3}",
        q(&rand_j, 0.5),
        q(&rand_j, 0.99),
        q(&rand_j, 0.9999),
        rand_j[rand_j.len() - 1]
    );
    lap("similarity probe");

    // per-slot collision rate vs exact J for a few duplicate pairs
    let probe_cfg = DophConfig::new(k_band, 1000, 66);
    let layout = banding::BandLayout::new(&probe_cfg);
    for &(a, b) in truth.match_pairs.iter().take(8) {
        let (sa, _) = shingleblock::doph::oph_signature(&shingles[a as usize], &probe_cfg)?;
        let (sb, _) = shingleblock::doph::oph_signature(&shingles[b as usize], &probe_cfg)?;
        let agree = sa.values.iter().zip(&sb.values).filter(|(x, y)| x == y).count();
        let band_hits = (0..probe_cfg.bands)
            .filter(|&band| {
                banding::band_key(&sa, band, &probe_cfg, &layout)
                    == banding::band_key(&sb, band, &probe_cfg, &layout)
            })
            .count();
        let p = agree as f64 / sa.values.len() as f64;
        println!(
            "pair ({a},{b}): J {:.3}  slot collision {:.3}  band hits {band_hits}/1000 (expect {:.1})",
            jaccard(&shingles[a as usize], &shingles[b as usize]),
            p,
            1000.0 * p.powi(k_band as i32)
        );
    }
    lap("slot probe");
    let cfg = DophConfig::new(k_band, 1000, 66);
    let (hashes, _) = pipeline.element_hashes(cfg.seed);
    lap("element hashes");
    let keys = Pipeline::band_keys(&hashes, &cfg)?;
    lap("band keys");
    let tables = banding::build_tables_from_keys(&keys, cfg.bands)?;
    lap("tables");
    let cand = banding::candidates(&tables);
    lap("candidates");
    let counts = confusion(&cand, corpus.truth().unwrap(), corpus.n())?;
    lap("confusion");
    println!("K={k_band} L=1000: {} candidate pairs, counts {counts:?}", cand.len());
    Ok(())
}
