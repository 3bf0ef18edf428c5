//! Lloyd's k-means with k-means++ seeding and best-of-`n_init` restarts.

use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub n_init: usize,
    pub max_iter: usize,
    /// Stop when the relative inertia decrease falls to or below this.
    pub tol: f64,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        Self {
            n_init: 10,
            max_iter: 300,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansModel {
    pub centroids: Vec<Vec<f64>>,
    /// Sum of squared distances of each point to its assigned centroid.
    pub inertia: f64,
    pub assignments: Vec<usize>,
    /// Inertia after each assignment step of the winning restart.
    pub inertia_history: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn distinct_count(points: &[&[f64]]) -> usize {
    let mut keys: Vec<Vec<u64>> = points
        .iter()
        .map(|p| p.iter().map(|v| (v + 0.0).to_bits()).collect())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

fn plus_plus_init(points: &[&[f64]], k: usize, rng: &mut SeededRng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centroids = vec![points[rng.below(n)].to_vec()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let target = rng.uniform() * total;
        let mut acc = 0.0;
        // Fall back to the last positive-weight point if rounding overshoots.
        let mut pick = d2.iter().rposition(|&w| w > 0.0).unwrap_or(0);
        for (i, &w) in d2.iter().enumerate() {
            acc += w;
            if w > 0.0 && acc > target {
                pick = i;
                break;
            }
        }
        let c = points[pick].to_vec();
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, &c));
        }
        centroids.push(c);
    }
    centroids
}

fn assign(points: &[&[f64]], centroids: &[Vec<f64>], labels: &mut [usize], cost: &mut [f64]) -> f64 {
    let mut inertia = 0.0;
    for (i, p) in points.iter().enumerate() {
        let (mut best, mut best_d) = (0, f64::INFINITY);
        for (c, cen) in centroids.iter().enumerate() {
            let d = sq_dist(p, cen);
            if d < best_d {
                best = c;
                best_d = d;
            }
        }
        labels[i] = best;
        cost[i] = best_d;
        inertia += best_d;
    }
    inertia
}

fn lloyd(points: &[&[f64]], k: usize, cfg: &KMeansConfig, rng: &mut SeededRng) -> KMeansModel {
    let n = points.len();
    let dims = points[0].len();
    let mut centroids = plus_plus_init(points, k, rng);
    let mut labels = vec![0; n];
    let mut cost = vec![0.0; n];
    let mut history = Vec::new();
    let mut inertia;
    let mut iter = 0;
    loop {
        inertia = assign(points, &centroids, &mut labels, &mut cost);
        history.push(inertia);
        iter += 1;
        if let [.., prev, _] = history[..] {
            if prev - inertia <= cfg.tol * prev {
                break;
            }
        }
        if iter >= cfg.max_iter {
            break;
        }
        let mut sums = vec![vec![0.0; dims]; k];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.iter().zip(&labels) {
            counts[l] += 1;
            for (s, v) in sums[l].iter_mut().zip(p.iter()) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                for s in &mut sums[c] {
                    *s /= counts[c] as f64;
                }
                centroids[c] = std::mem::take(&mut sums[c]);
            } else {
                // Empty cluster: move it onto the point that is currently
                // worst served, and make that point cost nothing.
                let far = (0..n)
                    .max_by(|&a, &b| cost[a].total_cmp(&cost[b]).then(b.cmp(&a)))
                    .unwrap();
                centroids[c] = points[far].to_vec();
                cost[far] = 0.0;
            }
        }
    }
    KMeansModel {
        centroids,
        inertia,
        assignments: labels,
        inertia_history: history,
    }
}

/// Fits `k` centroids; the restart with the lowest inertia wins (earliest on
/// ties).
pub fn kmeans_fit(points: &[&[f64]], k: usize, cfg: &KMeansConfig, seed: u64) -> Result<KMeansModel> {
    let distinct = distinct_count(points);
    if k == 0 || k > distinct {
        return Err(Error::Cluster { requested: k, distinct });
    }
    let mut rng = SeededRng::new(seed);
    let mut best: Option<KMeansModel> = None;
    for _ in 0..cfg.n_init.max(1) {
        let m = lloyd(points, k, cfg, &mut rng);
        if best.as_ref().is_none_or(|b| m.inertia < b.inertia) {
            best = Some(m);
        }
    }
    Ok(best.unwrap())
}
