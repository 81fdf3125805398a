//! End-to-end orchestration: shingle -> (vectorize) -> engine -> candidates
//! -> metrics, plus grid sweeps and report/curve emission.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::banding::{self, CandidatePairSet};
use crate::corpus::{Corpus, GroundTruth};
use crate::doph::{self, DophConfig, WeightedSamplingConfig};
use crate::error::{Error, Result};
use crate::klsh::{self, BlockAssignment, KlshConfig, ProjectionMatrix};
use crate::metrics::{BlockingReport, Timings};
use crate::minhash::HashSignature;
use crate::shingle::{shingle_corpus, ShingleConfig, ShingleSet, Vocabulary};
use crate::vectorize::{compute_idf, vectorize, IdfTable, WeightedShingleVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum EngineKind {
    Klsh,
    Doph,
    WeightedDoph,
}

impl EngineKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EngineKind::Klsh => "klsh",
            EngineKind::Doph => "doph",
            EngineKind::WeightedDoph => "weighted-doph",
        }
    }
}

/// Grid sweep axes. DOPH defaults are the standard (K, L) grid used for the
/// RR-vs-recall curves; the KLSH sweep varies the cluster count.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSpec {
    pub hashes_per_band: Vec<usize>,
    pub bands: Vec<usize>,
    pub clusters: Vec<usize>,
    pub shingle_k: Vec<usize>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            hashes_per_band: vec![15, 18, 20, 23, 25, 28, 30, 32, 35],
            bands: (1..=10).map(|i| i * 100).collect(),
            clusters: vec![5, 10, 20, 50, 100, 200, 500, 1000],
            shingle_k: vec![1, 2, 3, 4],
        }
    }
}

impl GridSpec {
    fn validate(&self, engine: EngineKind) -> Result<()> {
        if self.shingle_k.is_empty() {
            return Err(Error::Config("grid shingle_k list is empty".into()));
        }
        match engine {
            EngineKind::Klsh if self.clusters.is_empty() => {
                Err(Error::Config("grid clusters list is empty".into()))
            }
            EngineKind::Doph | EngineKind::WeightedDoph
                if self.hashes_per_band.is_empty() || self.bands.is_empty() =>
            {
                Err(Error::Config("grid K/L lists are empty".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Declarative run configuration. Loadable from a TOML file; every field has
/// a default so flags can override selectively.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub schema: Vec<String>,
    pub label_column: Option<String>,
    pub engine: EngineKind,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub shingle: ShingleConfig,
    pub klsh: KlshConfig,
    pub doph: DophConfig,
    pub grid: GridSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            schema: vec![],
            label_column: None,
            engine: EngineKind::Doph,
            seed: 0,
            out: None,
            shingle: ShingleConfig::default(),
            klsh: KlshConfig::default(),
            doph: DophConfig::default(),
            grid: GridSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Echo of the engine-relevant parameters for reports.
    fn parameters(&self, shingle_k: usize) -> serde_json::Value {
        match self.engine {
            EngineKind::Klsh => json!({
                "engine": self.engine.as_str(),
                "shingle_k": shingle_k,
                "projections": self.klsh.projections,
                "clusters": self.klsh.clusters,
                "seed": self.seed,
            }),
            _ => json!({
                "engine": self.engine.as_str(),
                "shingle_k": shingle_k,
                "K": self.doph.hashes_per_band,
                "L": self.doph.bands,
                "seed": self.seed,
            }),
        }
    }
}

/// Shingled corpus ready for any engine. Immutable once built; all engine
/// runs against it are pure.
pub struct Pipeline<'a> {
    corpus: &'a Corpus,
    config: ShingleConfig,
    vocab: Vocabulary,
    shingles: Vec<ShingleSet>,
}

impl<'a> Pipeline<'a> {
    pub fn new(corpus: &'a Corpus, config: ShingleConfig) -> Result<Self> {
        let (vocab, shingles) = shingle_corpus(corpus, &config)?;
        for s in &shingles {
            if s.is_empty() {
                return Err(Error::Signature(format!(
                    "record '{}' yields no shingles",
                    corpus.record(s.record).id
                )));
            }
        }
        Ok(Pipeline {
            corpus,
            config,
            vocab,
            shingles,
        })
    }

    pub fn corpus(&self) -> &Corpus {
        self.corpus
    }

    pub fn shingle_config(&self) -> &ShingleConfig {
        &self.config
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn shingles(&self) -> &[ShingleSet] {
        &self.shingles
    }

    /// Element hashes per record under an engine seed, computed once so grid
    /// sweeps do not re-hash per grid point. Total invocations = Σ |support|.
    pub fn element_hashes(&self, seed: u64) -> (Vec<Vec<u64>>, u64) {
        let hashes: Vec<Vec<u64>> = self
            .shingles
            .par_iter()
            .map(|s| {
                s.indices
                    .iter()
                    .map(|&e| doph::element_hash(seed, e))
                    .collect()
            })
            .collect();
        let invocations = hashes.iter().map(|h| h.len() as u64).sum();
        (hashes, invocations)
    }

    /// IDF table and weighted vectors for the KLSH / weighted-DOPH paths.
    pub fn weighted_vectors(&self) -> (IdfTable, Vec<WeightedShingleVector>) {
        let idf = compute_idf(&self.shingles, self.vocab.len());
        let vectors = self
            .shingles
            .par_iter()
            .map(|s| vectorize(s, &idf))
            .collect();
        (idf, vectors)
    }

    /// Default sampling configuration over a vector corpus: normalizer is the
    /// corpus-wide maximum component.
    pub fn sampling_config(
        vectors: &[WeightedShingleVector],
        seed: u64,
    ) -> Result<WeightedSamplingConfig> {
        let normalizer = doph::max_component(vectors);
        if !(normalizer > 0.0) {
            return Err(Error::Config(
                "all weighted vectors are zero; cannot normalize".into(),
            ));
        }
        let max_multiple = 16;
        Ok(WeightedSamplingConfig {
            normalizer,
            delta: normalizer / max_multiple as f64,
            max_multiple,
            seed,
        })
    }

    /// Shared-coin samples of every weighted vector, with empty samples
    /// reported per record.
    pub fn sampled_sets(
        &self,
        vectors: &[WeightedShingleVector],
        sampling: &WeightedSamplingConfig,
    ) -> Result<Vec<ShingleSet>> {
        sampling.validate()?;
        let sets: Vec<ShingleSet> = vectors
            .par_iter()
            .map(|v| doph::sample_weighted(v, sampling))
            .collect();
        let empty: Vec<&str> = sets
            .iter()
            .filter(|s| s.is_empty())
            .map(|s| self.corpus.record(s.record).id.as_str())
            .collect();
        if !empty.is_empty() {
            return Err(Error::Signature(format!(
                "weighted sampling produced empty sets for {} record(s), e.g. '{}'",
                empty.len(),
                empty[0]
            )));
        }
        Ok(sets)
    }

    /// Per-record band keys from precomputed element hashes.
    pub fn band_keys(hashes: &[Vec<u64>], config: &DophConfig) -> Result<Vec<Vec<u64>>> {
        config.validate()?;
        let layout = banding::BandLayout::new(config);
        hashes
            .par_iter()
            .enumerate()
            .map(|(record, h)| {
                let sig = doph::oph_signature_from_hashes(record as u32, h, config)?;
                Ok((0..config.bands)
                    .map(|band| banding::band_key(&sig, band, config, &layout))
                    .collect())
            })
            .collect()
    }

    /// DOPH candidates plus the element-hash invocation count.
    pub fn doph_candidates(&self, config: &DophConfig) -> Result<(CandidatePairSet, u64)> {
        let (hashes, invocations) = self.element_hashes(config.seed);
        let keys = Self::band_keys(&hashes, config)?;
        let tables = banding::build_tables_from_keys(&keys, config.bands)?;
        Ok((banding::candidates(&tables), invocations))
    }

    /// Weighted DOPH candidates; sampling coins are derived from the engine
    /// seed and shared corpus-wide.
    pub fn weighted_doph_candidates(
        &self,
        config: &DophConfig,
    ) -> Result<(CandidatePairSet, u64)> {
        let (_, vectors) = self.weighted_vectors();
        let sampling = Self::sampling_config(&vectors, config.seed ^ 0x5EED_5A3B)?;
        let sets = self.sampled_sets(&vectors, &sampling)?;
        let hashes: Vec<Vec<u64>> = sets
            .par_iter()
            .map(|s| {
                s.indices
                    .iter()
                    .map(|&e| doph::element_hash(config.seed, e))
                    .collect()
            })
            .collect();
        let invocations = hashes.iter().map(|h| h.len() as u64).sum();
        let keys = Self::band_keys(&hashes, config)?;
        let tables = banding::build_tables_from_keys(&keys, config.bands)?;
        Ok((banding::candidates(&tables), invocations))
    }

    /// Full DOPH signatures, for export and inspection.
    pub fn doph_signatures(&self, config: &DophConfig) -> Result<Vec<HashSignature>> {
        self.shingles
            .par_iter()
            .map(|s| doph::oph_signature(s, config).map(|(sig, _)| sig))
            .collect()
    }

    /// KLSH block assignment over projected IDF-weighted vectors.
    pub fn klsh_assignment(&self, config: &KlshConfig) -> Result<BlockAssignment> {
        config.validate(self.corpus.n())?;
        let (_, vectors) = self.weighted_vectors();
        let proj = ProjectionMatrix::generate(config.projections, self.vocab.len(), config.seed);
        let points: Vec<Vec<f64>> = vectors
            .par_iter()
            .map(|v| klsh::project(v, &proj))
            .collect();
        klsh::kmeans_block(&points, config)
    }

    pub fn klsh_candidates(&self, config: &KlshConfig) -> Result<(CandidatePairSet, BlockAssignment)> {
        let assignment = self.klsh_assignment(config)?;
        Ok((klsh::klsh_candidates(&assignment), assignment))
    }
}

fn require_truth(corpus: &Corpus) -> Result<&GroundTruth> {
    corpus.truth().ok_or_else(|| {
        Error::Truth("corpus carries no ground truth; supply a label column or pairs file".into())
    })
}

/// One full blocking run under `config`, evaluated against the corpus truth.
pub fn run_once(corpus: &Corpus, config: &RunConfig) -> Result<(BlockingReport, CandidatePairSet)> {
    let truth = require_truth(corpus)?;
    let start = Instant::now();
    let pipeline = Pipeline::new(corpus, config.shingle.clone())?;
    let (candidates, element_hashes) = match config.engine {
        EngineKind::Doph => {
            let doph = DophConfig {
                seed: config.seed,
                ..config.doph
            };
            pipeline.doph_candidates(&doph)?
        }
        EngineKind::WeightedDoph => {
            let doph = DophConfig {
                seed: config.seed,
                ..config.doph
            };
            pipeline.weighted_doph_candidates(&doph)?
        }
        EngineKind::Klsh => {
            let klsh_cfg = KlshConfig {
                seed: config.seed,
                ..config.klsh
            };
            let (candidates, _) = pipeline.klsh_candidates(&klsh_cfg)?;
            (candidates, 0)
        }
    };
    let timings = Timings {
        seconds: start.elapsed().as_secs_f64(),
        element_hashes,
    };
    let report = BlockingReport::new(
        &candidates,
        truth,
        corpus.n(),
        config.parameters(config.shingle.k),
        timings,
    )?;
    Ok((report, candidates))
}

/// One row of a grid sweep. Failed grid points carry an error string and NaN
/// metrics rather than aborting the sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridRow {
    pub engine: String,
    pub shingle_k: usize,
    pub hashes_per_band: usize,
    pub bands: usize,
    pub clusters: usize,
    pub recall: f64,
    pub precision: f64,
    pub rr: f64,
    pub candidate_pairs: u64,
    pub seconds: f64,
    pub error: Option<String>,
}

impl GridRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

fn grid_row_err(
    config: &RunConfig,
    shingle_k: usize,
    point: (usize, usize, usize),
    err: &Error,
) -> GridRow {
    GridRow {
        engine: config.engine.as_str().to_string(),
        shingle_k,
        hashes_per_band: point.0,
        bands: point.1,
        clusters: point.2,
        recall: f64::NAN,
        precision: f64::NAN,
        rr: f64::NAN,
        candidate_pairs: 0,
        seconds: 0.0,
        error: Some(err.to_string()),
    }
}

fn grid_row(
    config: &RunConfig,
    shingle_k: usize,
    point: (usize, usize, usize),
    candidates: &CandidatePairSet,
    truth: &GroundTruth,
    n: usize,
    seconds: f64,
) -> Result<GridRow> {
    let counts = crate::metrics::confusion(candidates, truth, n)?;
    let (recall, precision) = crate::metrics::recall_precision(&counts);
    let rr = crate::metrics::reduction_ratio(candidates, n)?;
    Ok(GridRow {
        engine: config.engine.as_str().to_string(),
        shingle_k,
        hashes_per_band: point.0,
        bands: point.1,
        clusters: point.2,
        recall,
        precision,
        rr,
        candidate_pairs: candidates.len() as u64,
        seconds,
        error: None,
    })
}

/// Sweep the configured grid. Each grid point is independently deterministic
/// under the run seed; failures are recorded and the sweep continues.
pub fn run_grid(corpus: &Corpus, config: &RunConfig) -> Result<Vec<GridRow>> {
    config.grid.validate(config.engine)?;
    let truth = require_truth(corpus)?;
    let n = corpus.n();
    let mut rows = Vec::new();

    for &shingle_k in &config.grid.shingle_k {
        let shingle = ShingleConfig {
            k: shingle_k,
            ..config.shingle.clone()
        };
        let pipeline = match Pipeline::new(corpus, shingle) {
            Ok(p) => p,
            Err(e) => {
                for point in grid_points(config) {
                    rows.push(grid_row_err(config, shingle_k, point, &e));
                }
                continue;
            }
        };

        match config.engine {
            EngineKind::Klsh => {
                for &c in &config.grid.clusters {
                    let klsh_cfg = KlshConfig {
                        clusters: c,
                        seed: config.seed,
                        ..config.klsh
                    };
                    let start = Instant::now();
                    let point = (0, 0, c);
                    match pipeline.klsh_candidates(&klsh_cfg) {
                        Ok((candidates, _)) => rows.push(grid_row(
                            config,
                            shingle_k,
                            point,
                            &candidates,
                            truth,
                            n,
                            start.elapsed().as_secs_f64(),
                        )?),
                        Err(e) => rows.push(grid_row_err(config, shingle_k, point, &e)),
                    }
                }
            }
            EngineKind::Doph | EngineKind::WeightedDoph => {
                // hash (or sample + hash) once per shingle configuration
                let prepared: Result<Vec<Vec<u64>>> = match config.engine {
                    EngineKind::Doph => Ok(pipeline.element_hashes(config.seed).0),
                    _ => {
                        let (_, vectors) = pipeline.weighted_vectors();
                        let sampling =
                            Pipeline::sampling_config(&vectors, config.seed ^ 0x5EED_5A3B)?;
                        let sets = pipeline.sampled_sets(&vectors, &sampling)?;
                        Ok(sets
                            .par_iter()
                            .map(|s| {
                                s.indices
                                    .iter()
                                    .map(|&e| doph::element_hash(config.seed, e))
                                    .collect()
                            })
                            .collect())
                    }
                };
                let hashes = match prepared {
                    Ok(h) => h,
                    Err(e) => {
                        for point in grid_points(config) {
                            rows.push(grid_row_err(config, shingle_k, point, &e));
                        }
                        continue;
                    }
                };
                // Band-count points nest: the sweep hashes each record once
                // per K at the largest band count, and smaller band counts
                // take prefixes of the same tables, so candidates(L') ⊆
                // candidates(L) for L' < L within one sweep.
                let mut band_counts = config.grid.bands.clone();
                band_counts.sort_unstable();
                band_counts.dedup();
                let l_max = *band_counts.last().expect("grid validated non-empty");
                for &k_band in &config.grid.hashes_per_band {
                    let doph_cfg = DophConfig {
                        hashes_per_band: k_band,
                        bands: l_max,
                        seed: config.seed,
                        ..config.doph
                    };
                    let mut mark = Instant::now();
                    let prep = Pipeline::band_keys(&hashes, &doph_cfg)
                        .and_then(|keys| banding::build_tables_from_keys(&keys, l_max));
                    let tables = match prep {
                        Ok(t) => t,
                        Err(e) => {
                            for &bands in &band_counts {
                                rows.push(grid_row_err(config, shingle_k, (k_band, bands, 0), &e));
                            }
                            continue;
                        }
                    };
                    let mut acc = CandidatePairSet::default();
                    let mut covered = 0usize;
                    for &bands in &band_counts {
                        banding::collect_candidates_into(&tables[covered..bands], &mut acc);
                        covered = bands;
                        rows.push(grid_row(
                            config,
                            shingle_k,
                            (k_band, bands, 0),
                            &acc,
                            truth,
                            n,
                            std::mem::replace(&mut mark, Instant::now())
                                .elapsed()
                                .as_secs_f64(),
                        )?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn grid_points(config: &RunConfig) -> Vec<(usize, usize, usize)> {
    match config.engine {
        EngineKind::Klsh => config.grid.clusters.iter().map(|&c| (0, 0, c)).collect(),
        _ => config
            .grid
            .hashes_per_band
            .iter()
            .flat_map(|&k| config.grid.bands.iter().map(move |&l| (k, l, 0)))
            .collect(),
    }
}

/// Write per-shingle (recall, RR) scatter data for external plotting.
///
/// Rows with errors (and hence NaN metrics) are excluded; the number skipped
/// is returned and logged. Returns the paths written.
pub fn emit_curves(rows: &[GridRow], dir: &Path) -> Result<(Vec<PathBuf>, usize)> {
    if rows.is_empty() {
        return Err(Error::Config("empty results table".into()));
    }
    std::fs::create_dir_all(dir)?;
    let mut by_shingle: BTreeMap<usize, Vec<&GridRow>> = BTreeMap::new();
    let mut skipped = 0usize;
    for row in rows {
        if row.is_ok() {
            by_shingle.entry(row.shingle_k).or_default().push(row);
        } else {
            skipped += 1;
        }
    }
    if skipped > 0 {
        log::warn!("emit_curves: skipped {skipped} failed grid rows");
    }
    let mut paths = Vec::new();
    for (shingle_k, group) in by_shingle {
        let path = dir.join(format!("curve_shingle{shingle_k}.csv"));
        let mut writer = csv::Writer::from_path(&path)?;
        writer.write_record(["recall", "rr", "hashes_per_band", "bands", "clusters"])?;
        for row in group {
            writer.write_record([
                row.recall.to_string(),
                row.rr.to_string(),
                row.hashes_per_band.to_string(),
                row.bands.to_string(),
                row.clusters.to_string(),
            ])?;
        }
        writer.flush()?;
        paths.push(path);
    }
    Ok((paths, skipped))
}

/// Grid rows as a CSV results table (one row per grid point).
pub fn write_grid(rows: &[GridRow], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_grid(path: &Path) -> Result<Vec<GridRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Candidate pairs as two-column delimited text of record ids.
pub fn write_candidates(
    candidates: &CandidatePairSet,
    corpus: &Corpus,
    path: &Path,
) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["id_a", "id_b"])?;
    for (a, b) in candidates.sorted() {
        writer.write_record([&corpus.record(a).id, &corpus.record(b).id])?;
    }
    writer.flush()?;
    Ok(())
}

/// Candidate pairs from a two-column id file, resolved against the corpus.
pub fn read_candidates(path: &Path, corpus: &Corpus) -> Result<CandidatePairSet> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = CandidatePairSet::default();
    for record in reader.records() {
        let rec = record?;
        let (a, b) = (rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""));
        let ia = corpus
            .index_of(a)
            .ok_or_else(|| Error::Metric(format!("unknown record id '{a}' in candidates file")))?;
        let ib = corpus
            .index_of(b)
            .ok_or_else(|| Error::Metric(format!("unknown record id '{b}' in candidates file")))?;
        out.insert(ia, ib);
    }
    Ok(out)
}

/// KLSH block assignment as two-column delimited text (record_id, block_id).
pub fn write_blocks(assignment: &BlockAssignment, corpus: &Corpus, path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["record_id", "block_id"])?;
    for (i, &block) in assignment.blocks.iter().enumerate() {
        writer.write_record([&corpus.record(i as u32).id, &block.to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

/// Signatures as delimited text: record_id followed by the k hash values.
pub fn write_signatures(
    signatures: &[HashSignature],
    corpus: &Corpus,
    path: &Path,
) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_path(path)?;
    for sig in signatures {
        let mut row = vec![corpus.record(sig.record).id.clone()];
        row.extend(sig.values.iter().map(u64::to_string));
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_report(report: &BlockingReport, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate_synthetic, SynthConfig};

    fn small_corpus(noise: f64, seed: u64) -> Corpus {
        generate_synthetic(&SynthConfig {
            n_base: 80,
            dup_rate: 0.5,
            max_dups: 1,
            noise,
            seed,
        })
        .unwrap()
    }

    fn doph_config(corpus_path: Option<PathBuf>) -> RunConfig {
        RunConfig {
            corpus: corpus_path,
            engine: EngineKind::Doph,
            seed: 42,
            shingle: ShingleConfig::with_k(2),
            doph: DophConfig::new(15, 100, 42),
            ..Default::default()
        }
    }

    #[test]
    fn zero_noise_generous_doph_has_full_recall() {
        let corpus = small_corpus(0.0, 1);
        let (report, _) = run_once(&corpus, &doph_config(None)).unwrap();
        assert_eq!(report.recall, 1.0);
    }

    #[test]
    fn run_once_deterministic() {
        let corpus = small_corpus(0.1, 2);
        let cfg = doph_config(None);
        let (a, ca) = run_once(&corpus, &cfg).unwrap();
        let (b, cb) = run_once(&corpus, &cfg).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.recall, b.recall);
    }

    #[test]
    fn klsh_with_singleton_blocks_has_zero_recall() {
        let corpus = small_corpus(0.0, 3);
        let cfg = RunConfig {
            engine: EngineKind::Klsh,
            klsh: KlshConfig {
                clusters: corpus.n(),
                ..Default::default()
            },
            shingle: ShingleConfig::with_k(2),
            ..Default::default()
        };
        let (report, candidates) = run_once(&corpus, &cfg).unwrap();
        assert!(candidates.is_empty());
        assert_eq!(report.recall, 0.0);
        assert_eq!(report.rr, 1.0);
    }

    #[test]
    fn grid_of_one_point_equals_run_once() {
        let corpus = small_corpus(0.05, 4);
        let mut cfg = doph_config(None);
        cfg.grid = GridSpec {
            hashes_per_band: vec![15],
            bands: vec![100],
            clusters: vec![],
            shingle_k: vec![2],
        };
        let rows = run_grid(&corpus, &cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let (report, _) = run_once(&corpus, &cfg).unwrap();
        assert_eq!(rows[0].recall, report.recall);
        assert_eq!(rows[0].rr, report.rr);
        assert_eq!(rows[0].candidate_pairs, report.candidate_pairs);
    }

    #[test]
    fn default_doph_grid_is_90_points() {
        let cfg = RunConfig::default();
        assert_eq!(grid_points(&cfg).len(), 90);
    }

    #[test]
    fn rr_non_increasing_in_bands_at_fixed_k() {
        let corpus = small_corpus(0.1, 5);
        let mut cfg = doph_config(None);
        cfg.grid = GridSpec {
            hashes_per_band: vec![10],
            bands: vec![10, 30, 60, 100],
            clusters: vec![],
            shingle_k: vec![2],
        };
        let rows = run_grid(&corpus, &cfg).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].rr <= pair[0].rr + 1e-12);
        }
    }

    #[test]
    fn curves_roundtrip() {
        let corpus = small_corpus(0.05, 6);
        let mut cfg = doph_config(None);
        cfg.grid = GridSpec {
            hashes_per_band: vec![10, 15],
            bands: vec![20, 50],
            clusters: vec![],
            shingle_k: vec![2, 3],
        };
        let rows = run_grid(&corpus, &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (paths, skipped) = emit_curves(&rows, dir.path()).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(skipped, 0);

        // re-parse equals source columns
        let mut reader = csv::Reader::from_path(&paths[0]).unwrap();
        let parsed: Vec<(f64, f64)> = reader
            .records()
            .map(|r| {
                let r = r.unwrap();
                (r[0].parse().unwrap(), r[1].parse().unwrap())
            })
            .collect();
        let expected: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.shingle_k == 2)
            .map(|r| (r.recall, r.rr))
            .collect();
        assert_eq!(parsed, expected);

        let grid_path = dir.path().join("grid.csv");
        write_grid(&rows, &grid_path).unwrap();
        let back = read_grid(&grid_path).unwrap();
        assert_eq!(back.len(), rows.len());
        assert_eq!(back[0].recall, rows[0].recall);
    }

    #[test]
    fn failed_grid_points_recorded_not_fatal() {
        let corpus = small_corpus(0.05, 7);
        let mut cfg = RunConfig {
            engine: EngineKind::Klsh,
            ..Default::default()
        };
        // one cluster count larger than n fails, the other succeeds
        cfg.grid = GridSpec {
            hashes_per_band: vec![],
            bands: vec![],
            clusters: vec![10, corpus.n() + 5],
            shingle_k: vec![2],
        };
        let rows = run_grid(&corpus, &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].is_ok());
        assert!(!rows[1].is_ok());
    }

    #[test]
    fn candidates_file_roundtrip() {
        let corpus = small_corpus(0.0, 8);
        let (_, candidates) = run_once(&corpus, &doph_config(None)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cands.csv");
        write_candidates(&candidates, &corpus, &path).unwrap();
        let back = read_candidates(&path, &corpus).unwrap();
        assert_eq!(back, candidates);
    }

    #[test]
    fn toml_config_roundtrip() {
        let cfg = RunConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, text).unwrap();
        let back = RunConfig::from_toml_file(&path).unwrap();
        assert_eq!(back.engine, cfg.engine);
        assert_eq!(back.grid.hashes_per_band, cfg.grid.hashes_per_band);
    }
}
