//! Pair-level blocking evaluation: confusion counts, recall, precision and
//! reduction ratio against ground-truth match pairs.
//!
//! The reduction ratio deliberately never looks at the truth: it measures
//! only how far the candidate set shrinks the n(n-1)/2 comparison space.

use serde::Serialize;

use crate::banding::CandidatePairSet;
use crate::corpus::GroundTruth;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfusionCounts {
    /// CL: pairs linked under both truth and estimate.
    pub correct_links: u64,
    /// FN: true pairs missed by the candidate set.
    pub false_negatives: u64,
    /// FP: candidate pairs that are not true matches.
    pub false_positives: u64,
    /// CNL: pairs linked under neither.
    pub correct_non_links: u64,
}

impl ConfusionCounts {
    pub fn total_pairs(&self) -> u64 {
        self.correct_links + self.false_negatives + self.false_positives + self.correct_non_links
    }
}

/// Classify every pair of the corpus against truth and candidates.
pub fn confusion(
    candidates: &CandidatePairSet,
    truth: &GroundTruth,
    n: usize,
) -> Result<ConfusionCounts> {
    let n = n as u64;
    for &(a, b) in candidates.iter() {
        if a as u64 >= n || b as u64 >= n {
            return Err(Error::Metric(format!(
                "candidate pair ({a},{b}) references an unknown record"
            )));
        }
    }
    for &(a, b) in truth.match_pairs.iter() {
        if a as u64 >= n || b as u64 >= n {
            return Err(Error::Metric(format!(
                "truth pair ({a},{b}) references an unknown record"
            )));
        }
    }
    let correct_links = truth
        .match_pairs
        .iter()
        .filter(|&&(a, b)| candidates.contains(a, b))
        .count() as u64;
    let false_negatives = truth.len() as u64 - correct_links;
    let false_positives = candidates.len() as u64 - correct_links;
    let all_pairs = n * (n - 1) / 2;
    let correct_non_links = all_pairs - correct_links - false_negatives - false_positives;
    Ok(ConfusionCounts {
        correct_links,
        false_negatives,
        false_positives,
        correct_non_links,
    })
}

/// recall = CL/(CL+FN), precision = CL/(CL+FP).
///
/// Degenerate cases follow the 0/0 = 0 convention on the error-rate side:
/// no estimated links gives precision 1, no true links gives recall 1.
pub fn recall_precision(counts: &ConfusionCounts) -> (f64, f64) {
    let recall = if counts.correct_links + counts.false_negatives == 0 {
        1.0
    } else {
        counts.correct_links as f64 / (counts.correct_links + counts.false_negatives) as f64
    };
    let precision = if counts.correct_links + counts.false_positives == 0 {
        1.0
    } else {
        counts.correct_links as f64 / (counts.correct_links + counts.false_positives) as f64
    };
    (recall, precision)
}

/// RR = 1 - |candidates| / (n(n-1)/2).
pub fn reduction_ratio(candidates: &CandidatePairSet, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Metric(format!(
            "reduction ratio needs at least 2 records, got {n}"
        )));
    }
    let all_pairs = (n as u64 * (n as u64 - 1) / 2) as f64;
    Ok(1.0 - candidates.len() as f64 / all_pairs)
}

/// Wall-clock and hash-cost counters of one run.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Timings {
    pub seconds: f64,
    pub element_hashes: u64,
}

/// Full evaluation of one blocking run.
#[derive(Debug, Clone, Serialize)]
pub struct BlockingReport {
    pub counts: ConfusionCounts,
    pub recall: f64,
    pub precision: f64,
    pub rr: f64,
    pub candidate_pairs: u64,
    /// Engine configuration echo.
    pub parameters: serde_json::Value,
    pub timings: Timings,
}

impl BlockingReport {
    pub fn new(
        candidates: &CandidatePairSet,
        truth: &GroundTruth,
        n: usize,
        parameters: serde_json::Value,
        timings: Timings,
    ) -> Result<Self> {
        let counts = confusion(candidates, truth, n)?;
        let (recall, precision) = recall_precision(&counts);
        let rr = reduction_ratio(candidates, n)?;
        Ok(BlockingReport {
            counts,
            recall,
            precision,
            rr,
            candidate_pairs: candidates.len() as u64,
            parameters,
            timings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pairs(list: &[(u32, u32)]) -> CandidatePairSet {
        list.iter().copied().collect()
    }

    fn truth(list: &[(u32, u32)]) -> GroundTruth {
        GroundTruth {
            match_pairs: list
                .iter()
                .map(|&(a, b)| crate::corpus::canonical_pair(a, b))
                .collect::<BTreeSet<_>>(),
        }
    }

    #[test]
    fn perfect_blocking() {
        let t = truth(&[(0, 1), (2, 3)]);
        let c = pairs(&[(0, 1), (2, 3)]);
        let counts = confusion(&c, &t, 4).unwrap();
        assert_eq!(counts.false_negatives, 0);
        assert_eq!(counts.false_positives, 0);
        assert_eq!(counts.correct_links, 2);
    }

    #[test]
    fn empty_candidates() {
        let t = truth(&[(0, 1)]);
        let counts = confusion(&CandidatePairSet::default(), &t, 4).unwrap();
        assert_eq!(counts.correct_links, 0);
        assert_eq!(counts.false_negatives, 1);
    }

    #[test]
    fn four_record_enumeration() {
        // n=4, truth={(1,2)}, candidates={(1,2),(3,4)} in 1-based labels;
        // here 0-based: truth {(0,1)}, candidates {(0,1),(2,3)}
        let t = truth(&[(0, 1)]);
        let c = pairs(&[(0, 1), (2, 3)]);
        let counts = confusion(&c, &t, 4).unwrap();
        assert_eq!(
            counts,
            ConfusionCounts {
                correct_links: 1,
                false_negatives: 0,
                false_positives: 1,
                correct_non_links: 4,
            }
        );
        let (recall, precision) = recall_precision(&counts);
        assert_eq!(recall, 1.0);
        assert_eq!(precision, 0.5);
    }

    #[test]
    fn counts_partition_all_pairs() {
        let t = truth(&[(0, 1), (1, 2)]);
        let c = pairs(&[(0, 3), (1, 2)]);
        let counts = confusion(&c, &t, 5).unwrap();
        assert_eq!(counts.total_pairs(), 10);
        assert_eq!(
            counts.correct_links + counts.false_negatives,
            t.len() as u64
        );
    }

    #[test]
    fn unknown_id_is_metric_error() {
        let t = truth(&[(0, 9)]);
        assert!(matches!(
            confusion(&CandidatePairSet::default(), &t, 4).unwrap_err(),
            Error::Metric(_)
        ));
    }

    #[test]
    fn degenerate_conventions() {
        // no estimated links -> precision 1 by the 0/0 convention
        let counts = ConfusionCounts {
            correct_links: 0,
            false_negatives: 2,
            false_positives: 0,
            correct_non_links: 4,
        };
        let (recall, precision) = recall_precision(&counts);
        assert_eq!(precision, 1.0);
        assert_eq!(recall, 0.0);

        // no true links -> recall 1, symmetric convention
        let counts = ConfusionCounts {
            correct_links: 0,
            false_negatives: 0,
            false_positives: 3,
            correct_non_links: 3,
        };
        let (recall, precision) = recall_precision(&counts);
        assert_eq!(recall, 1.0);
        assert_eq!(precision, 0.0);
    }

    #[test]
    fn half_recall_symmetry() {
        let counts = ConfusionCounts {
            correct_links: 5,
            false_negatives: 5,
            false_positives: 0,
            correct_non_links: 0,
        };
        assert_eq!(recall_precision(&counts).0, 0.5);
    }

    #[test]
    fn reduction_ratio_extremes() {
        let all: CandidatePairSet = (0..4u32)
            .flat_map(|a| ((a + 1)..4).map(move |b| (a, b)))
            .collect();
        assert_eq!(reduction_ratio(&all, 4).unwrap(), 0.0);
        assert_eq!(reduction_ratio(&CandidatePairSet::default(), 4).unwrap(), 1.0);
        let two = pairs(&[(0, 1), (2, 3)]);
        assert!((reduction_ratio(&two, 4).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            reduction_ratio(&two, 1).unwrap_err(),
            Error::Metric(_)
        ));
    }

    #[test]
    fn metrics_ignore_duplicate_insertions() {
        let mut c = CandidatePairSet::default();
        c.insert(0, 1);
        c.insert(1, 0);
        c.insert(0, 1);
        assert_eq!(c.len(), 1);
    }
}
