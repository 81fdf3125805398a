//! Band-structured hash tables over signatures and candidate pair extraction.
//!
//! A length K*L signature partitions into L bands of K slots; band j of a
//! record keys table j. Records sharing a bucket in any table become
//! candidate pairs. Unlike the KLSH path these candidates overlap freely;
//! they are not disjoint blocks.
//!
//! The partition is a seeded random shuffle of the slot indices, not
//! consecutive chunks: densification fills an empty slot from its nearest
//! filled neighbor, so nearby slots are strongly correlated whenever the set
//! is much smaller than the slot count, and a band of adjacent slots would
//! collapse into far fewer than K effective samples.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::corpus::{canonical_pair, Pair};
use crate::doph::DophConfig;
use crate::error::{Error, Result};
use crate::hashing;
use crate::minhash::HashSignature;

/// One hash table keyed by a 64-bit fingerprint of a K-value band.
#[derive(Debug, Clone)]
pub struct BandTable {
    pub index: usize,
    buckets: HashMap<u64, Vec<u32>>,
}

impl BandTable {
    pub fn buckets(&self) -> &HashMap<u64, Vec<u32>> {
        &self.buckets
    }
}

/// Deduplicated unordered candidate record pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidatePairSet {
    pairs: HashSet<Pair>,
}

impl CandidatePairSet {
    pub fn insert(&mut self, a: u32, b: u32) {
        if a != b {
            self.pairs.insert(canonical_pair(a, b));
        }
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.pairs.contains(&canonical_pair(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pair> {
        self.pairs.iter()
    }

    /// Pairs in canonical sort order, for deterministic export.
    pub fn sorted(&self) -> Vec<Pair> {
        let mut out: Vec<Pair> = self.pairs.iter().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn is_subset(&self, other: &CandidatePairSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

impl FromIterator<Pair> for CandidatePairSet {
    fn from_iter<T: IntoIterator<Item = Pair>>(iter: T) -> Self {
        let mut set = CandidatePairSet::default();
        for (a, b) in iter {
            set.insert(a, b);
        }
        set
    }
}

/// Seeded random partition of the K*L signature slots into L bands of K.
///
/// Shared by every record of a run, so equal signatures always produce equal
/// band keys. Deterministic in the config seed and shape.
#[derive(Debug, Clone)]
pub struct BandLayout {
    slots: Vec<u32>,
    hashes_per_band: usize,
}

impl BandLayout {
    pub fn new(config: &DophConfig) -> Self {
        let k = config.signature_len();
        let mut slots: Vec<u32> = (0..k as u32).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(hashing::keyed(config.seed, k as u64));
        slots.shuffle(&mut rng);
        BandLayout {
            slots,
            hashes_per_band: config.hashes_per_band,
        }
    }

    /// The K signature slot indices belonging to one band.
    pub fn band_slots(&self, band: usize) -> &[u32] {
        let k = self.hashes_per_band;
        &self.slots[band * k..(band + 1) * k]
    }
}

/// Band fingerprint for table `band` of a signature.
#[inline]
pub fn band_key(
    signature: &HashSignature,
    band: usize,
    config: &DophConfig,
    layout: &BandLayout,
) -> u64 {
    let slots: Vec<u64> = layout
        .band_slots(band)
        .iter()
        .map(|&i| signature.values[i as usize])
        .collect();
    hashing::fingerprint(config.seed ^ (band as u64).rotate_left(32), &slots)
}

/// Insert every signature into L tables keyed by its band fingerprints.
///
/// Buckets preserve insertion order, so table layout is deterministic for a
/// fixed signature order.
pub fn build_tables(signatures: &[HashSignature], config: &DophConfig) -> Result<Vec<BandTable>> {
    let expected = config.signature_len();
    let layout = BandLayout::new(config);
    let mut tables: Vec<BandTable> = (0..config.bands)
        .map(|index| BandTable {
            index,
            buckets: HashMap::new(),
        })
        .collect();
    for sig in signatures {
        if sig.values.len() != expected {
            return Err(Error::Banding(format!(
                "signature of record {} has length {}, expected {expected}",
                sig.record,
                sig.values.len()
            )));
        }
        for (band, table) in tables.iter_mut().enumerate() {
            let key = band_key(sig, band, config, &layout);
            table.buckets.entry(key).or_default().push(sig.record);
        }
    }
    Ok(tables)
}

/// Build tables directly from per-record band keys (`keys[record][band]`),
/// without keeping full signatures in memory. Used by the grid sweep, where
/// storing n signatures of length K*L would dominate memory.
pub fn build_tables_from_keys(keys: &[Vec<u64>], bands: usize) -> Result<Vec<BandTable>> {
    let mut tables: Vec<BandTable> = (0..bands)
        .map(|index| BandTable {
            index,
            buckets: HashMap::new(),
        })
        .collect();
    for (record, record_keys) in keys.iter().enumerate() {
        if record_keys.len() != bands {
            return Err(Error::Banding(format!(
                "record {record} has {} band keys, expected {bands}",
                record_keys.len()
            )));
        }
        for (table, &key) in tables.iter_mut().zip(record_keys) {
            table.buckets.entry(key).or_default().push(record as u32);
        }
    }
    Ok(tables)
}

/// Union over all tables and buckets of within-bucket pairs, deduplicated.
pub fn candidates(tables: &[BandTable]) -> CandidatePairSet {
    let mut out = CandidatePairSet::default();
    collect_candidates_into(tables, &mut out);
    out
}

/// Add the within-bucket pairs of these tables to an existing candidate set.
/// Lets sweeps over a growing number of bands accumulate incrementally.
pub fn collect_candidates_into(tables: &[BandTable], out: &mut CandidatePairSet) {
    for table in tables {
        for bucket in table.buckets.values() {
            for (i, &a) in bucket.iter().enumerate() {
                for &b in &bucket[i + 1..] {
                    out.insert(a, b);
                }
            }
        }
    }
}

/// Per-table bucket-size statistics for operator tuning.
#[derive(Debug, Clone, Serialize)]
pub struct TableStats {
    pub table: usize,
    pub buckets: usize,
    pub max_bucket: usize,
    pub mean_bucket: f64,
}

pub fn max_bucket_stats(tables: &[BandTable]) -> Vec<TableStats> {
    tables
        .iter()
        .map(|t| {
            let sizes: Vec<usize> = t.buckets.values().map(Vec::len).collect();
            let total: usize = sizes.iter().sum();
            TableStats {
                table: t.index,
                buckets: sizes.len(),
                max_bucket: sizes.iter().copied().max().unwrap_or(0),
                mean_bucket: if sizes.is_empty() {
                    0.0
                } else {
                    total as f64 / sizes.len() as f64
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doph::oph_signature;
    use crate::shingle::ShingleSet;
    use rand::prelude::*;
    use rand_chacha::ChaCha20Rng;

    fn sig(record: u32, values: Vec<u64>) -> HashSignature {
        HashSignature { record, values }
    }

    #[test]
    fn identical_records_share_every_bucket() {
        let cfg = DophConfig::new(2, 3, 0);
        let sigs = vec![sig(0, vec![1, 2, 3, 4, 5, 6]), sig(1, vec![1, 2, 3, 4, 5, 6])];
        let tables = build_tables(&sigs, &cfg).unwrap();
        for t in &tables {
            assert!(t.buckets().values().any(|b| b == &vec![0, 1]));
        }
        let pairs = candidates(&tables);
        assert_eq!(pairs.len(), 1);
        assert!(pairs.contains(0, 1));
    }

    #[test]
    fn degenerate_banding_keys_single_slots() {
        let cfg = DophConfig::new(1, 4, 0);
        let sigs = vec![sig(0, vec![9, 1, 1, 1]), sig(1, vec![9, 2, 2, 2])];
        let tables = build_tables(&sigs, &cfg).unwrap();
        // records agree only on slot 0, so only the band holding slot 0
        // pairs them
        let layout = BandLayout::new(&cfg);
        let hit = (0..4).position(|b| layout.band_slots(b) == [0]).unwrap();
        for (band, table) in tables.iter().enumerate() {
            let pairs = candidates(std::slice::from_ref(table));
            assert_eq!(pairs.contains(0, 1), band == hit, "band {band}");
        }
    }

    #[test]
    fn length_mismatch_is_banding_error() {
        let cfg = DophConfig::new(2, 2, 0);
        let sigs = vec![sig(0, vec![1, 2, 3])];
        assert!(matches!(
            build_tables(&sigs, &cfg).unwrap_err(),
            Error::Banding(_)
        ));
    }

    #[test]
    fn bucket_membership_matches_naive_grouping() {
        // independent oracle: group records by their raw band slot tuples
        let cfg = DophConfig::new(3, 8, 5);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let sets: Vec<ShingleSet> = (0..100)
            .map(|r| {
                let items: Vec<u32> = (0..60).filter(|_| rng.random::<bool>()).chain([999]).collect();
                ShingleSet::from_indices(r, items)
            })
            .collect();
        let sigs: Vec<HashSignature> = sets
            .iter()
            .map(|s| oph_signature(s, &cfg).unwrap().0)
            .collect();
        let tables = build_tables(&sigs, &cfg).unwrap();
        let got = candidates(&tables);

        let mut want = CandidatePairSet::default();
        for band in 0..cfg.bands {
            let mut groups: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
            for s in &sigs {
                let key: Vec<u64> = BandLayout::new(&cfg)
                    .band_slots(band)
                    .iter()
                    .map(|&i| s.values[i as usize])
                    .collect();
                groups.entry(key).or_default().push(s.record);
            }
            for members in groups.values() {
                for (i, &a) in members.iter().enumerate() {
                    for &b in &members[i + 1..] {
                        want.insert(a, b);
                    }
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn singleton_buckets_yield_nothing() {
        let cfg = DophConfig::new(2, 2, 0);
        let sigs = vec![sig(0, vec![1, 2, 3, 4]), sig(1, vec![5, 6, 7, 8])];
        let tables = build_tables(&sigs, &cfg).unwrap();
        assert!(candidates(&tables).is_empty());
    }

    #[test]
    fn union_and_dedup_across_tables() {
        let cfg = DophConfig::new(1, 2, 0);
        // table 0: {1,2,3} share; table 1: {2,3} share
        let sigs = vec![
            sig(1, vec![7, 10]),
            sig(2, vec![7, 20]),
            sig(3, vec![7, 20]),
        ];
        let tables = build_tables(&sigs, &cfg).unwrap();
        let pairs = candidates(&tables);
        assert_eq!(pairs.len(), 3);
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert!(pairs.contains(a, b));
        }
    }

    #[test]
    fn candidate_set_is_order_independent() {
        let cfg = DophConfig::new(2, 4, 9);
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let sets: Vec<ShingleSet> = (0..50)
            .map(|r| {
                let items: Vec<u32> = (0..40).filter(|_| rng.random::<bool>()).chain([7]).collect();
                ShingleSet::from_indices(r, items)
            })
            .collect();
        let mut sigs: Vec<HashSignature> = sets
            .iter()
            .map(|s| oph_signature(s, &cfg).unwrap().0)
            .collect();
        let forward = candidates(&build_tables(&sigs, &cfg).unwrap());
        sigs.reverse();
        let backward = candidates(&build_tables(&sigs, &cfg).unwrap());
        assert_eq!(forward, backward);
    }

    #[test]
    fn bucket_stats() {
        let cfg = DophConfig::new(2, 1, 0);
        let sigs = vec![
            sig(0, vec![1, 1]),
            sig(1, vec![1, 1]),
            sig(2, vec![2, 2]),
        ];
        let tables = build_tables(&sigs, &cfg).unwrap();
        let stats = max_bucket_stats(&tables);
        assert_eq!(stats[0].max_bucket, 2);
        assert_eq!(stats[0].buckets, 2);
        assert!((stats[0].mean_bucket - 1.5).abs() < 1e-12);
    }
}
