//! Command-line front end: `block`, `grid`, `synth`, `eval`.
//!
//! Exit codes: 0 success, 1 configuration error, 2 data error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use shingleblock::corpus::{self, SynthConfig};
use shingleblock::error::{Error, Result};
use shingleblock::klsh::KlshConfig;
use shingleblock::metrics::{BlockingReport, Timings};
use shingleblock::pipeline::{self, EngineKind, RunConfig};
use shingleblock::Corpus;

#[derive(Parser)]
#[command(name = "shingleblock", version, about = "Entity-resolution blocking via KLSH and densified one-permutation hashing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one blocking configuration and report recall/precision/RR.
    Block(RunArgs),
    /// Sweep a parameter grid and write a results table plus curve data.
    Grid(RunArgs),
    /// Generate a synthetic labeled corpus.
    Synth(SynthArgs),
    /// Evaluate an externally produced candidate-pair file.
    Eval(EvalArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus CSV path.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated field columns to ingest.
    #[arg(long, value_delimiter = ',')]
    schema: Option<Vec<String>>,
    /// Ground-truth label column.
    #[arg(long)]
    label_col: Option<String>,
    #[arg(long, value_enum)]
    engine: Option<EngineKind>,
    #[arg(long)]
    shingle_k: Option<usize>,
    /// DOPH hashes per band (K).
    #[arg(long = "K")]
    hashes_per_band: Option<usize>,
    /// DOPH number of bands (L).
    #[arg(long = "L")]
    bands: Option<usize>,
    /// KLSH number of block-clusters (c).
    #[arg(long)]
    clusters: Option<usize>,
    /// KLSH number of random projections (p).
    #[arg(long)]
    projections: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid sweep: comma-separated K values.
    #[arg(long = "K-list", value_delimiter = ',')]
    k_list: Option<Vec<usize>>,
    /// Grid sweep: comma-separated L values.
    #[arg(long = "L-list", value_delimiter = ',')]
    l_list: Option<Vec<usize>>,
    /// Grid sweep: comma-separated cluster counts.
    #[arg(long = "c-list", value_delimiter = ',')]
    c_list: Option<Vec<usize>>,
    /// Grid sweep: comma-separated shingle lengths.
    #[arg(long = "shingle-k-list", value_delimiter = ',')]
    shingle_k_list: Option<Vec<usize>>,
    /// Dump each record's shingle set for inspection.
    #[arg(long)]
    dump_shingles: bool,
}

impl RunArgs {
    fn into_config(self) -> Result<(RunConfig, bool)> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_toml_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.corpus {
            cfg.corpus = Some(v);
        }
        if let Some(v) = self.schema {
            cfg.schema = v;
        }
        if let Some(v) = self.label_col {
            cfg.label_column = Some(v);
        }
        if let Some(v) = self.engine {
            cfg.engine = v;
        }
        if let Some(v) = self.shingle_k {
            cfg.shingle.k = v;
        }
        if let Some(v) = self.hashes_per_band {
            cfg.doph.hashes_per_band = v;
        }
        if let Some(v) = self.bands {
            cfg.doph.bands = v;
        }
        if let Some(v) = self.clusters {
            cfg.klsh.clusters = v;
        }
        if let Some(v) = self.projections {
            cfg.klsh.projections = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.out {
            cfg.out = Some(v);
        }
        if let Some(v) = self.k_list {
            cfg.grid.hashes_per_band = v;
        }
        if let Some(v) = self.l_list {
            cfg.grid.bands = v;
        }
        if let Some(v) = self.c_list {
            cfg.grid.clusters = v;
        }
        if let Some(v) = self.shingle_k_list {
            cfg.grid.shingle_k = v;
        }
        Ok((cfg, self.dump_shingles))
    }
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 1000)]
    n_base: usize,
    #[arg(long, default_value_t = 0.1)]
    dup_rate: f64,
    #[arg(long, default_value_t = 2)]
    max_dups: usize,
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_delimiter = ',')]
    schema: Vec<String>,
    /// Ground-truth label column (alternative to --truth-pairs).
    #[arg(long)]
    label_col: Option<String>,
    /// Two-column id_a,id_b truth file (alternative to --label-col).
    #[arg(long)]
    truth_pairs: Option<PathBuf>,
    /// Candidate pairs file (id_a,id_b) to evaluate.
    #[arg(long)]
    candidates: PathBuf,
    /// Report JSON path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_run_corpus(cfg: &RunConfig) -> Result<Corpus> {
    let path = cfg
        .corpus
        .as_ref()
        .ok_or_else(|| Error::Config("no corpus path given (--corpus or config file)".into()))?;
    if cfg.schema.is_empty() {
        return Err(Error::Config("no schema given (--schema or config file)".into()));
    }
    corpus::load_corpus(path, &cfg.schema, cfg.label_column.as_deref())
}

fn dump_shingles(corpus: &Corpus, cfg: &RunConfig) -> Result<()> {
    let pipeline = shingleblock::Pipeline::new(corpus, cfg.shingle.clone())?;
    let vocab = pipeline.vocabulary();
    for s in pipeline.shingles() {
        let grams: Vec<&str> = s.indices.iter().map(|&i| vocab.term(i)).collect();
        println!("{}\t{}", corpus.record(s.record).id, grams.join(" "));
    }
    Ok(())
}

fn cmd_block(args: RunArgs) -> Result<()> {
    let (cfg, dump) = args.into_config()?;
    let corpus = load_run_corpus(&cfg)?;
    if dump {
        dump_shingles(&corpus, &cfg)?;
    }
    let (report, candidates) = pipeline::run_once(&corpus, &cfg)?;
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            pipeline::write_report(&report, &dir.join("report.json"))?;
            pipeline::write_candidates(&candidates, &corpus, &dir.join("candidates.csv"))?;
            if cfg.engine == EngineKind::Klsh {
                let klsh_cfg = KlshConfig {
                    seed: cfg.seed,
                    ..cfg.klsh
                };
                let pipeline = shingleblock::Pipeline::new(&corpus, cfg.shingle.clone())?;
                let assignment = pipeline.klsh_assignment(&klsh_cfg)?;
                pipeline::write_blocks(&assignment, &corpus, &dir.join("blocks.csv"))?;
            }
            println!(
                "recall {:.4}  precision {:.4}  rr {:.4}  ({} candidate pairs) -> {}",
                report.recall,
                report.precision,
                report.rr,
                report.candidate_pairs,
                dir.display()
            );
        }
        None => println!(
            "{}",
            serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Config(format!("report serialization: {e}")))?
        ),
    }
    Ok(())
}

fn cmd_grid(args: RunArgs) -> Result<()> {
    let (cfg, _) = args.into_config()?;
    let corpus = load_run_corpus(&cfg)?;
    let rows = pipeline::run_grid(&corpus, &cfg)?;
    let dir = cfg
        .out
        .clone()
        .ok_or_else(|| Error::Config("grid requires an output directory (--out)".into()))?;
    std::fs::create_dir_all(&dir)?;
    pipeline::write_grid(&rows, &dir.join("grid.csv"))?;
    let (paths, skipped) = pipeline::emit_curves(&rows, &dir)?;
    println!(
        "{} grid rows ({} failed), {} curve files -> {}",
        rows.len(),
        skipped,
        paths.len(),
        dir.display()
    );
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let corpus = corpus::generate_synthetic(&SynthConfig {
        n_base: args.n_base,
        dup_rate: args.dup_rate,
        max_dups: args.max_dups,
        noise: args.noise,
        seed: args.seed,
    })?;
    corpus::write_corpus(&corpus, &args.out)?;
    println!(
        "{} records, {} true match pairs -> {}",
        corpus.n(),
        corpus.truth().map_or(0, |t| t.len()),
        args.out.display()
    );
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let corpus = corpus::load_corpus(&args.corpus, &args.schema, args.label_col.as_deref())?;
    let truth = match (&args.truth_pairs, corpus.truth()) {
        (Some(path), _) => corpus::load_truth_pairs(path, &corpus)?,
        (None, Some(t)) => t.clone(),
        (None, None) => {
            return Err(Error::Config(
                "supply --label-col or --truth-pairs for evaluation".into(),
            ))
        }
    };
    let candidates = pipeline::read_candidates(&args.candidates, &corpus)?;
    let report = BlockingReport::new(
        &candidates,
        &truth,
        corpus.n(),
        serde_json::json!({"engine": "external", "candidates": args.candidates.display().to_string()}),
        Timings::default(),
    )?;
    match &args.out {
        Some(path) => {
            pipeline::write_report(&report, path)?;
            println!(
                "recall {:.4}  precision {:.4}  rr {:.4} -> {}",
                report.recall,
                report.precision,
                report.rr,
                path.display()
            );
        }
        None => println!(
            "{}",
            serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Config(format!("report serialization: {e}")))?
        ),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Block(args) => cmd_block(args),
        Command::Grid(args) => cmd_grid(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Eval(args) => cmd_eval(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
