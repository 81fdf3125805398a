//! Parameter grid sweep: run the one-pass engine across a (K, L) grid on a
//! synthetic corpus and write the recall / reduction-ratio table plus
//! per-shingle curve files.
//!
//!     cargo run --release --example grid_sweep

use shingleblock::corpus::{generate_synthetic, SynthConfig};
use shingleblock::pipeline::{emit_curves, run_grid, write_grid, EngineKind, GridSpec, RunConfig};
use shingleblock::shingle::ShingleConfig;

fn main() -> shingleblock::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        n_base: 1500,
        dup_rate: 0.12,
        max_dups: 1,
        noise: 0.05,
        seed: 8,
    })?;

    let cfg = RunConfig {
        engine: EngineKind::Doph,
        seed: 8,
        grid: GridSpec {
            hashes_per_band: vec![10, 15, 20, 25],
            bands: vec![50, 100, 200, 400],
            clusters: vec![],
            shingle_k: vec![2, 3],
        },
        shingle: ShingleConfig::default(),
        ..Default::default()
    };

    let rows = run_grid(&corpus, &cfg)?;
    println!(
        "{:>4} {:>4} {:>4} {:>10} {:>10} {:>8}",
        "sk", "K", "L", "recall", "rr", "secs"
    );
    for row in &rows {
        println!(
            "{:>4} {:>4} {:>4} {:>10.4} {:>10.4} {:>8.2}",
            row.shingle_k, row.hashes_per_band, row.bands, row.recall, row.rr, row.seconds
        );
    }

    let dir = std::env::temp_dir().join("shingleblock_grid");
    std::fs::create_dir_all(&dir)?;
    write_grid(&rows, &dir.join("grid.csv"))?;
    let (paths, _) = emit_curves(&rows, &dir)?;
    println!("\ngrid table and {} curve files -> {}", paths.len(), dir.display());
    Ok(())
}
