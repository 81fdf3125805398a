//! Full pipeline in one call: synthesize, block with each engine, and print
//! the evaluation report.
//!
//!     cargo run --release --example end_to_end

use shingleblock::corpus::{generate_synthetic, SynthConfig};
use shingleblock::doph::DophConfig;
use shingleblock::klsh::KlshConfig;
use shingleblock::pipeline::{run_once, EngineKind, RunConfig};
use shingleblock::shingle::ShingleConfig;

fn main() -> shingleblock::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        n_base: 2000,
        dup_rate: 0.1,
        max_dups: 1,
        noise: 0.05,
        seed: 4,
    })?;
    println!(
        "{} records, {} true match pairs\n",
        corpus.n(),
        corpus.truth().map_or(0, |t| t.len())
    );

    for engine in [EngineKind::Doph, EngineKind::WeightedDoph, EngineKind::Klsh] {
        let cfg = RunConfig {
            engine,
            seed: 4,
            shingle: ShingleConfig::with_k(2),
            doph: DophConfig::new(15, 200, 4),
            klsh: KlshConfig {
                clusters: 25,
                seed: 4,
                ..Default::default()
            },
            ..Default::default()
        };
        let (report, candidates) = run_once(&corpus, &cfg)?;
        println!(
            "{:<14} recall {:.4}  precision {:.4}  rr {:.4}  ({} candidates, {:.2}s)",
            engine.as_str(),
            report.recall,
            report.precision,
            report.rr,
            candidates.len(),
            report.timings.seconds
        );
    }
    Ok(())
}
