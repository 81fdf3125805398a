//! Exact similarities and classical minwise hashing.
//!
//! These are the slow reference implementations: `jaccard` and
//! `weighted_jaccard` are the exact oracles, and `naive_minhash` evaluates k
//! independent hash functions per element (k passes over the set). The fast
//! one-pass engine lives in the `doph` module and is validated against these.

use crate::error::{Error, Result};
use crate::hashing;
use crate::shingle::ShingleSet;
use crate::vectorize::WeightedShingleVector;

/// The k hash values of one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashSignature {
    pub record: u32,
    pub values: Vec<u64>,
}

/// Seeded family of uniform 64-bit hash functions standing in for random
/// permutations. Collisions in a 64-bit range are negligible at this scale.
#[derive(Debug, Clone, Copy)]
pub struct HashFamily {
    seed: u64,
}

impl HashFamily {
    pub fn new(seed: u64) -> Self {
        HashFamily { seed }
    }

    /// Value of the i-th hash function on an element.
    #[inline]
    pub fn hash(&self, i: usize, element: u32) -> u64 {
        hashing::keyed(hashing::keyed(self.seed, i as u64), element as u64)
    }
}

/// |a ∩ b| / |a ∪ b| over sorted index sets.
///
/// Both-empty is defined as 1 (identical) and logged.
pub fn jaccard(a: &ShingleSet, b: &ShingleSet) -> f64 {
    if a.is_empty() && b.is_empty() {
        log::warn!("jaccard of two empty sets defined as 1.0");
        return 1.0;
    }
    let mut inter = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.indices.len() && j < b.indices.len() {
        match a.indices[i].cmp(&b.indices[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.indices.len() + b.indices.len() - inter;
    inter as f64 / union as f64
}

/// Weighted Jaccard: Σ min(x_i, y_i) / Σ max(x_i, y_i).
///
/// Both-zero is defined as 1 (identical) and logged.
pub fn weighted_jaccard(x: &WeightedShingleVector, y: &WeightedShingleVector) -> f64 {
    if x.is_empty() && y.is_empty() {
        log::warn!("weighted jaccard of two zero vectors defined as 1.0");
        return 1.0;
    }
    let (mut num, mut den) = (0.0, 0.0);
    let (mut i, mut j) = (0, 0);
    while i < x.entries.len() || j < y.entries.len() {
        let xi = x.entries.get(i);
        let yj = y.entries.get(j);
        match (xi, yj) {
            (Some(&(fx, wx)), Some(&(fy, wy))) => match fx.cmp(&fy) {
                std::cmp::Ordering::Less => {
                    den += wx;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    den += wy;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    num += wx.min(wy);
                    den += wx.max(wy);
                    i += 1;
                    j += 1;
                }
            },
            (Some(&(_, wx)), None) => {
                den += wx;
                i += 1;
            }
            (None, Some(&(_, wy))) => {
                den += wy;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    num / den
}

/// Classical minwise hashing: signature[i] = min over elements of hash_i.
///
/// Returns the signature and the number of element-hash invocations
/// (always |s| * count), for comparison with the one-pass engine.
pub fn naive_minhash(
    s: &ShingleSet,
    family: &HashFamily,
    count: usize,
) -> Result<(HashSignature, u64)> {
    if s.is_empty() {
        return Err(Error::Signature(format!(
            "record {} has an empty shingle set",
            s.record
        )));
    }
    let mut values = Vec::with_capacity(count);
    for i in 0..count {
        // iterate in ascending element order with strict < so that hash ties
        // resolve to the smaller element
        let mut min = u64::MAX;
        for &e in &s.indices {
            let h = family.hash(i, e);
            if h < min {
                min = h;
            }
        }
        values.push(min);
    }
    let invocations = (s.indices.len() * count) as u64;
    Ok((
        HashSignature {
            record: s.record,
            values,
        },
        invocations,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shingle::ShingleSet;
    use rand::prelude::*;
    use rand_chacha::ChaCha20Rng;

    fn set(indices: &[u32]) -> ShingleSet {
        ShingleSet::from_indices(0, indices.to_vec())
    }

    #[test]
    fn jaccard_basics() {
        let a = set(&[1, 2, 3]);
        assert_eq!(jaccard(&a, &a), 1.0);
        assert_eq!(jaccard(&set(&[1, 2]), &set(&[3, 4])), 0.0);
        // {AB,BC} vs {BC,CD}
        let j = jaccard(&set(&[0, 1]), &set(&[1, 2]));
        assert!((j - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(jaccard(&set(&[]), &set(&[])), 1.0);
    }

    fn wvec(entries: &[(u32, f64)]) -> WeightedShingleVector {
        WeightedShingleVector {
            record: 0,
            entries: entries.iter().copied().filter(|&(_, w)| w > 0.0).collect(),
        }
    }

    #[test]
    fn weighted_jaccard_direct() {
        // x=(1,2,0), y=(2,1,1) -> 2/5
        let x = wvec(&[(0, 1.0), (1, 2.0)]);
        let y = wvec(&[(0, 2.0), (1, 1.0), (2, 1.0)]);
        assert!((weighted_jaccard(&x, &y) - 0.4).abs() < 1e-15);
        assert_eq!(weighted_jaccard(&x, &x), 1.0);
        assert_eq!(weighted_jaccard(&wvec(&[]), &wvec(&[])), 1.0);
    }

    #[test]
    fn weighted_jaccard_on_binary_vectors_equals_jaccard() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a: Vec<u32> = (0..40).filter(|_| rng.random::<bool>()).collect();
            let b: Vec<u32> = (0..40).filter(|_| rng.random::<bool>()).collect();
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let sa = set(&a);
            let sb = set(&b);
            let xa = wvec(&a.iter().map(|&i| (i, 1.0)).collect::<Vec<_>>());
            let xb = wvec(&b.iter().map(|&i| (i, 1.0)).collect::<Vec<_>>());
            assert!((jaccard(&sa, &sb) - weighted_jaccard(&xa, &xb)).abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_jaccard_l1_identity() {
        // J_w = 1 - ||x - y||_1 / sum max
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for _ in 0..100 {
            let mut draw = |rng: &mut ChaCha20Rng| {
                (0..30)
                    .filter_map(|i| {
                        (rng.random::<f64>() < 0.5).then(|| (i, rng.random::<f64>() * 3.0))
                    })
                    .collect::<Vec<_>>()
            };
            let x = wvec(&draw(&mut rng));
            let y = wvec(&draw(&mut rng));
            if x.is_empty() && y.is_empty() {
                continue;
            }
            let mut l1 = 0.0;
            let mut summax = 0.0;
            for f in 0..30u32 {
                let wx = x.entries.iter().find(|&&(i, _)| i == f).map_or(0.0, |e| e.1);
                let wy = y.entries.iter().find(|&&(i, _)| i == f).map_or(0.0, |e| e.1);
                l1 += (wx - wy).abs();
                summax += wx.max(wy);
            }
            let lhs = weighted_jaccard(&x, &y);
            let rhs = 1.0 - l1 / summax;
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn singleton_signature_is_raw_hash() {
        let family = HashFamily::new(3);
        let s = set(&[7]);
        let (sig, inv) = naive_minhash(&s, &family, 16).unwrap();
        for (i, &v) in sig.values.iter().enumerate() {
            assert_eq!(v, family.hash(i, 7));
        }
        assert_eq!(inv, 16);
    }

    #[test]
    fn equal_sets_equal_signatures() {
        let family = HashFamily::new(3);
        let (a, _) = naive_minhash(&set(&[1, 5, 9]), &family, 64).unwrap();
        let (b, _) = naive_minhash(&set(&[1, 5, 9]), &family, 64).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn empty_set_is_signature_error() {
        let family = HashFamily::new(3);
        assert!(matches!(
            naive_minhash(&set(&[]), &family, 8).unwrap_err(),
            Error::Signature(_)
        ));
    }

    #[test]
    fn collision_rate_tracks_jaccard() {
        // Monte Carlo check of the minhash collision probability at 3 sigma
        let family = HashFamily::new(41);
        let k = 5000;
        let a: Vec<u32> = (0..150).collect();
        let b: Vec<u32> = (100..250).collect();
        let sa = set(&a);
        let sb = set(&b);
        let j = jaccard(&sa, &sb);
        let (siga, _) = naive_minhash(&sa, &family, k).unwrap();
        let (sigb, _) = naive_minhash(&sb, &family, k).unwrap();
        let agree = siga
            .values
            .iter()
            .zip(&sigb.values)
            .filter(|(x, y)| x == y)
            .count();
        let freq = agree as f64 / k as f64;
        let tol = 3.0 * (j * (1.0 - j) / k as f64).sqrt();
        assert!((freq - j).abs() <= tol, "freq {freq} vs j {j} tol {tol}");
    }
}
