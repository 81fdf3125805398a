//! IDF-weighted bag-of-shingles vectors for the KLSH and weighted-DOPH paths.

use crate::shingle::ShingleSet;

/// Per-feature document frequencies and idf = ln(n / df).
///
/// Features never seen in the corpus keep idf 0; in-corpus features always
/// have df >= 1 so no smoothing is needed.
#[derive(Debug, Clone)]
pub struct IdfTable {
    idf: Vec<f64>,
    df: Vec<u32>,
    n_docs: usize,
}

impl IdfTable {
    pub fn idf(&self, feature: u32) -> f64 {
        self.idf[feature as usize]
    }

    pub fn df(&self, feature: u32) -> u32 {
        self.df[feature as usize]
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }
}

/// Document-frequency pass over all shingle sets.
pub fn compute_idf(shingles: &[ShingleSet], universe: usize) -> IdfTable {
    let n = shingles.len();
    let mut df = vec![0u32; universe];
    for s in shingles {
        for &i in &s.indices {
            df[i as usize] += 1;
        }
    }
    let idf = df
        .iter()
        .map(|&d| {
            if d == 0 {
                0.0
            } else {
                (n as f64 / d as f64).ln()
            }
        })
        .collect();
    IdfTable { idf, df, n_docs: n }
}

/// Sparse non-negative weighted vector over the shingle universe.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedShingleVector {
    pub record: u32,
    /// (feature index, weight) with strictly positive weights, index-ascending.
    pub entries: Vec<(u32, f64)>,
}

impl WeightedShingleVector {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Unit-length copy; zero vectors are returned unchanged.
    pub fn l2_normalized(&self) -> Self {
        let norm = self.l2_norm();
        if norm == 0.0 {
            return self.clone();
        }
        WeightedShingleVector {
            record: self.record,
            entries: self.entries.iter().map(|&(i, w)| (i, w / norm)).collect(),
        }
    }
}

/// weight(f) = count(f) * idf(f), zero-weight entries omitted.
pub fn vectorize(shingles: &ShingleSet, idf: &IdfTable) -> WeightedShingleVector {
    let entries = shingles
        .indices
        .iter()
        .zip(&shingles.counts)
        .filter_map(|(&i, &c)| {
            let w = c as f64 * idf.idf(i);
            (w > 0.0).then_some((i, w))
        })
        .collect();
    WeightedShingleVector {
        record: shingles.record,
        entries,
    }
}
