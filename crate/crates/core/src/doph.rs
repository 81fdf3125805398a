//! Densified one-permutation hashing (DOPH) and its weighted extension.
//!
//! Every element is hashed exactly once; the hash range is split into
//! k = K*L equal-width bins and each bin keeps the minimum offset it sees.
//! Empty bins are then densified by borrowing circularly from the next
//! non-empty bin to the right, at distance t, with value offset + t*w. The
//! full signature costs O(d + k) per record instead of O(d*k) for classical
//! minwise hashing.
//!
//! The weighted path samples a binary set from a non-negative vector using
//! per-feature coins shared across the whole corpus, so that set collisions
//! estimate the weighted Jaccard similarity. The exact binary expansion
//! `t_expand` is retained purely as a small-scale correctness oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hashing;
use crate::minhash::HashSignature;
use crate::shingle::ShingleSet;
use crate::vectorize::WeightedShingleVector;

/// Empty-bin sentinel inside [`OphState`].
pub const EMPTY_SLOT: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DophConfig {
    /// K: signature values per band.
    pub hashes_per_band: usize,
    /// L: number of bands / hash tables.
    pub bands: usize,
    pub seed: u64,
    /// Bin width is 2^bin_bits; the hash range is k * 2^bin_bits.
    pub bin_bits: u32,
}

impl Default for DophConfig {
    fn default() -> Self {
        DophConfig {
            hashes_per_band: 20,
            bands: 500,
            seed: 0,
            bin_bits: 20,
        }
    }
}

impl DophConfig {
    pub fn new(hashes_per_band: usize, bands: usize, seed: u64) -> Self {
        DophConfig {
            hashes_per_band,
            bands,
            seed,
            ..Default::default()
        }
    }

    /// k = K * L.
    pub fn signature_len(&self) -> usize {
        self.hashes_per_band * self.bands
    }

    /// Equal bin width w.
    pub fn bin_width(&self) -> u64 {
        1u64 << self.bin_bits
    }

    pub fn validate(&self) -> Result<()> {
        if self.hashes_per_band == 0 || self.bands == 0 {
            return Err(Error::Config("K and L must be >= 1".into()));
        }
        if self.bin_bits == 0 || self.bin_bits > 40 {
            return Err(Error::Config("bin_bits must lie in 1..=40".into()));
        }
        Ok(())
    }

    /// Split one element hash into (bin, offset). The element is hashed once;
    /// bin and offset are independent digits of the same uniform value.
    #[inline]
    pub fn bin_and_offset(&self, h: u64) -> (usize, u64) {
        let k = self.signature_len() as u64;
        let bin = (h % k) as usize;
        let offset = (h / k) & (self.bin_width() - 1);
        (bin, offset)
    }
}

/// Hash of one set element under the engine seed. This is the only place
/// elements are hashed; everything else reuses the value.
#[inline]
pub fn element_hash(seed: u64, element: u32) -> u64 {
    hashing::keyed(seed, element as u64)
}

/// Per-bin minimum offsets before densification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OphState {
    /// Length k; `EMPTY_SLOT` marks an empty bin, otherwise the value is < w.
    pub slots: Vec<u64>,
}

/// One pass over the element hashes, keeping the minimum offset per bin.
pub fn fill_bins(element_hashes: &[u64], config: &DophConfig) -> OphState {
    let mut slots = vec![EMPTY_SLOT; config.signature_len()];
    for &h in element_hashes {
        let (bin, offset) = config.bin_and_offset(h);
        if offset < slots[bin] {
            slots[bin] = offset;
        }
    }
    OphState { slots }
}

/// Fill empty bins by circular rightward borrowing: an empty bin at distance
/// t from the first non-empty bin to its right takes that bin's offset plus
/// t*w, which cannot collide with any directly stored offset.
///
/// Runs in O(k) regardless of sparsity.
pub fn densify(state: &OphState, config: &DophConfig) -> Result<Vec<u64>> {
    let k = state.slots.len();
    let w = config.bin_width();
    let start = state
        .slots
        .iter()
        .position(|&v| v != EMPTY_SLOT)
        .ok_or_else(|| Error::Densification("all bins empty".into()))?;

    let mut out = vec![0u64; k];
    out[start] = state.slots[start];
    // walk leftwards from a non-empty anchor; `dist` is the circular distance
    // to the nearest non-empty bin on the right
    let mut source = state.slots[start];
    let mut dist = 0u64;
    for step in 1..k {
        let j = (start + k - step) % k;
        if state.slots[j] != EMPTY_SLOT {
            source = state.slots[j];
            dist = 0;
            out[j] = source;
        } else {
            dist += 1;
            out[j] = source + dist * w;
        }
    }
    Ok(out)
}

/// Full one-pass DOPH signature of a set.
///
/// Returns the signature and the element-hash invocation count, which is
/// exactly the number of distinct elements.
pub fn oph_signature(s: &ShingleSet, config: &DophConfig) -> Result<(HashSignature, u64)> {
    config.validate()?;
    if s.is_empty() {
        return Err(Error::Signature(format!(
            "record {} has an empty shingle set",
            s.record
        )));
    }
    let hashes: Vec<u64> = s
        .indices
        .iter()
        .map(|&e| element_hash(config.seed, e))
        .collect();
    let values = densify(&fill_bins(&hashes, config), config)?;
    Ok((
        HashSignature {
            record: s.record,
            values,
        },
        hashes.len() as u64,
    ))
}

/// Signature from precomputed element hashes, reusing caller scratch space.
/// Used by the grid sweep so elements are hashed once per corpus, not once
/// per grid point.
pub fn oph_signature_from_hashes(
    record: u32,
    element_hashes: &[u64],
    config: &DophConfig,
) -> Result<HashSignature> {
    if element_hashes.is_empty() {
        return Err(Error::Signature(format!(
            "record {record} has an empty shingle set"
        )));
    }
    let values = densify(&fill_bins(element_hashes, config), config)?;
    Ok(HashSignature { record, values })
}

/// Configuration of the weighted-to-binary reduction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WeightedSamplingConfig {
    /// Divisor making every component <= 1; typically the corpus-wide
    /// maximum component.
    pub normalizer: f64,
    /// Resolution delta for the exact expansion oracle.
    pub delta: f64,
    /// Maximum integer multiple M, so max component = M * delta.
    pub max_multiple: u32,
    /// Corpus-wide sampling seed shared by every record.
    pub seed: u64,
}

impl WeightedSamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.normalizer > 0.0) {
            return Err(Error::Config("normalizer must be positive".into()));
        }
        if !(self.delta > 0.0) {
            return Err(Error::Config("delta must be positive".into()));
        }
        if self.max_multiple == 0 {
            return Err(Error::Config("max_multiple must be positive".into()));
        }
        Ok(())
    }
}

/// Largest component over a corpus of vectors; the default normalizer.
pub fn max_component(vectors: &[WeightedShingleVector]) -> f64 {
    vectors
        .iter()
        .flat_map(|v| v.entries.iter().map(|&(_, w)| w))
        .fold(0.0, f64::max)
}

/// Sample a binary set from a weighted vector: feature i is kept iff
/// u_i < x_i / normalizer, where u_i is a per-feature coin derived from the
/// shared corpus seed.
///
/// Because the coin depends only on the feature and the shared seed, two
/// records agree on every feature where both weights clear the coin, and
/// set collisions of the samples estimate the weighted Jaccard similarity.
/// Independent per-record coins would not.
pub fn sample_weighted(
    x: &WeightedShingleVector,
    config: &WeightedSamplingConfig,
) -> ShingleSet {
    let kept = x
        .entries
        .iter()
        .filter(|&&(i, w)| hashing::unit_uniform(config.seed, i as u64) < w / config.normalizer)
        .map(|&(i, _)| i)
        .collect();
    ShingleSet::from_indices(x.record, kept)
}

/// Exact binary expansion T(x) over a universe of size M*D: feature (i, j)
/// is present iff j < round(x_i / delta).
///
/// Only intended as a correctness oracle at small M*D.
pub fn t_expand(x: &WeightedShingleVector, config: &WeightedSamplingConfig) -> Result<ShingleSet> {
    config.validate()?;
    let m = config.max_multiple as u64;
    let mut kept = Vec::new();
    for &(i, w) in &x.entries {
        let exact = w / config.delta;
        let multiple = exact.round();
        if (exact - multiple).abs() > 1e-6 {
            return Err(Error::Resolution(format!(
                "component {w} of record {} is not an integer multiple of delta {}",
                x.record, config.delta
            )));
        }
        let multiple = multiple as u64;
        if multiple > m {
            return Err(Error::Resolution(format!(
                "component {w} exceeds max multiple M={m} at delta {}",
                config.delta
            )));
        }
        for j in 0..multiple {
            let expanded = i as u64 * m + j;
            let expanded = u32::try_from(expanded).map_err(|_| {
                Error::Resolution("expanded universe exceeds u32 index space".into())
            })?;
            kept.push(expanded);
        }
    }
    Ok(ShingleSet::from_indices(x.record, kept))
}

/// Weighted DOPH: sample to a binary set, then one-pass DOPH. Total cost
/// O(d + K*L) per record.
pub fn weighted_doph_signature(
    x: &WeightedShingleVector,
    sampling: &WeightedSamplingConfig,
    doph: &DophConfig,
) -> Result<(HashSignature, u64)> {
    sampling.validate()?;
    let sampled = sample_weighted(x, sampling);
    if sampled.is_empty() {
        return Err(Error::Signature(format!(
            "record {}: weighted sampling produced an empty set",
            x.record
        )));
    }
    oph_signature(&sampled, doph)
}
