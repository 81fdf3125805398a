//! KLSH blocking: Gaussian random projection of IDF-weighted shingle vectors
//! followed by k-means partitioning into c disjoint blocks.
//!
//! Mean block size is n/c by construction, which is the operator's block-size
//! control knob.

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::banding::CandidatePairSet;
use crate::error::{Error, Result};
use crate::vectorize::WeightedShingleVector;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KlshConfig {
    /// p: number of random projections.
    pub projections: usize,
    /// c: number of block-clusters.
    pub clusters: usize,
    pub max_iters: usize,
    /// Convergence threshold on centroid movement (Euclidean).
    pub tol: f64,
    pub seed: u64,
}

impl Default for KlshConfig {
    fn default() -> Self {
        KlshConfig {
            projections: 20,
            clusters: 10,
            max_iters: 50,
            tol: 1e-6,
            seed: 0,
        }
    }
}

impl KlshConfig {
    pub fn validate(&self, n_points: usize) -> Result<()> {
        if self.projections == 0 {
            return Err(Error::Config("projections must be >= 1".into()));
        }
        if self.clusters == 0 {
            return Err(Error::Config("clusters must be >= 1".into()));
        }
        if self.clusters > n_points {
            return Err(Error::Config(format!(
                "clusters ({}) exceed number of records ({})",
                self.clusters, n_points
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Dense p x D matrix of independent standard Gaussian draws.
#[derive(Debug, Clone)]
pub struct ProjectionMatrix {
    rows: usize,
    cols: usize,
    /// Row-major.
    data: Vec<f64>,
}

impl ProjectionMatrix {
    /// Deterministic under (p, D, seed); entries are drawn row-major from a
    /// single seeded stream.
    pub fn generate(projections: usize, universe: usize, seed: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let data = (0..projections * universe)
            .map(|_| rng.sample(StandardNormal))
            .collect();
        ProjectionMatrix {
            rows: projections,
            cols: universe,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }
}

/// Sparse-aware projection: component j = Σ_f weight(f) * proj[j][f].
pub fn project(vector: &WeightedShingleVector, proj: &ProjectionMatrix) -> Vec<f64> {
    let mut out = vec![0.0; proj.rows];
    for &(f, w) in &vector.entries {
        for (j, o) in out.iter_mut().enumerate() {
            *o += w * proj.at(j, f as usize);
        }
    }
    out
}

/// Total assignment of records to blocks in [0, c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAssignment {
    /// blocks[record index] = block id.
    pub blocks: Vec<u32>,
    pub n_clusters: usize,
}

impl BlockAssignment {
    /// Members of each block, in record order.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n_clusters];
        for (i, &b) in self.blocks.iter().enumerate() {
            out[b as usize].push(i as u32);
        }
        out
    }
}

#[inline]
fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid with ties broken toward the lowest index.
#[inline]
fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = dist2(point, centroid);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    (best, best_d)
}

/// Deterministic k-means++ seeding.
fn init_plus_plus(points: &[Vec<f64>], c: usize, rng: &mut ChaCha20Rng) -> Vec<Vec<f64>> {
    let mut centroids = Vec::with_capacity(c);
    centroids.push(points[rng.random_range(0..points.len())].clone());
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| dist2(p, &centroids[0]))
        .collect();
    while centroids.len() < c {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = points.len() - 1;
            for (i, &d) in d2.iter().enumerate() {
                if target < d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            // all remaining mass at existing centroids; spread deterministically
            centroids.len() % points.len()
        };
        centroids.push(points[next].clone());
        for (i, p) in points.iter().enumerate() {
            let d = dist2(p, centroids.last().unwrap());
            if d < d2[i] {
                d2[i] = d;
            }
        }
    }
    centroids
}

/// Lloyd's algorithm over projected points.
///
/// The assignment step runs in parallel (each point independently); centroid
/// sums accumulate sequentially in record order so results do not depend on
/// the worker count. Empty clusters are re-seeded with the point farthest
/// from its assigned centroid.
pub fn kmeans_block(points: &[Vec<f64>], config: &KlshConfig) -> Result<BlockAssignment> {
    config.validate(points.len())?;
    let c = config.clusters;
    let dim = points.first().map_or(0, Vec::len);
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut centroids = init_plus_plus(points, c, &mut rng);

    let mut assignment: Vec<u32> = vec![0; points.len()];
    let mut prev_objective = f64::INFINITY;
    for _iter in 0..config.max_iters.max(1) {
        let assigned: Vec<(usize, f64)> = points
            .par_iter()
            .map(|p| nearest(p, &centroids))
            .collect();
        let mut assigned: Vec<(usize, f64)> = assigned;

        // re-seed empty clusters from the farthest point, lowest index on ties
        let mut sizes = vec![0usize; c];
        for &(a, _) in &assigned {
            sizes[a] += 1;
        }
        for cluster in 0..c {
            if sizes[cluster] > 0 {
                continue;
            }
            let mut far = 0;
            let mut far_d = -1.0;
            for (i, &(a, d)) in assigned.iter().enumerate() {
                if sizes[a] > 1 && d > far_d {
                    far_d = d;
                    far = i;
                }
            }
            sizes[assigned[far].0] -= 1;
            assigned[far] = (cluster, 0.0);
            sizes[cluster] = 1;
            centroids[cluster] = points[far].clone();
        }

        let objective: f64 = assigned.iter().map(|&(_, d)| d).sum();
        // Lloyd objective never increases between iterations
        debug_assert!(
            objective <= prev_objective + 1e-9 * (1.0 + prev_objective.abs()),
            "k-means objective increased: {prev_objective} -> {objective}"
        );
        prev_objective = objective;

        for (i, &(a, _)) in assigned.iter().enumerate() {
            assignment[i] = a as u32;
        }

        // centroid update, sequential in record order
        let mut sums = vec![vec![0.0; dim]; c];
        for (p, &(a, _)) in points.iter().zip(&assigned) {
            for (s, &v) in sums[a].iter_mut().zip(p) {
                *s += v;
            }
        }
        let mut movement: f64 = 0.0;
        for cluster in 0..c {
            if sizes[cluster] == 0 {
                continue;
            }
            let inv = 1.0 / sizes[cluster] as f64;
            let new: Vec<f64> = sums[cluster].iter().map(|s| s * inv).collect();
            movement = movement.max(dist2(&new, &centroids[cluster]).sqrt());
            centroids[cluster] = new;
        }
        if movement < config.tol {
            break;
        }
    }

    Ok(BlockAssignment {
        blocks: assignment,
        n_clusters: c,
    })
}

/// All unordered within-block pairs; no cross-block pairs.
pub fn klsh_candidates(assignment: &BlockAssignment) -> CandidatePairSet {
    let mut pairs = CandidatePairSet::default();
    for members in assignment.members() {
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                pairs.insert(x, y);
            }
        }
    }
    pairs
}
