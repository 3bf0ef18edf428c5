//! Exact k-nearest-neighbor search.
//!
//! Neighbors are ordered by `(distance, row index)`: equal distances go to the
//! lower row index. [`NeighborIndex`] is a k-d tree that returns exactly the
//! lists produced by the O(n²) [`brute_force_knn`] scan under that rule.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    #[default]
    Euclidean,
}

impl DistanceMetric {
    /// Distance between two points of equal length.
    #[inline]
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            DistanceMetric::Euclidean => {
                let mut sq = 0.0;
                for (x, y) in a.iter().zip(b) {
                    let t = x - y;
                    sq += t * t;
                }
                sq.sqrt()
            }
        }
    }
}

pub fn pairwise_distance(a: &[f64], b: &[f64], metric: DistanceMetric) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(metric.distance(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

pub type NeighborList = Vec<Neighbor>;

#[inline]
fn by_distance_then_index(a: &Neighbor, b: &Neighbor) -> Ordering {
    a.distance.total_cmp(&b.distance).then(a.index.cmp(&b.index))
}

/// Which rows are eligible neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restrict<'a> {
    All,
    Class(&'a str),
}

impl Restrict<'_> {
    fn rows(&self, d: &Dataset) -> Vec<usize> {
        match self {
            Restrict::All => (0..d.n_samples()).collect(),
            Restrict::Class(label) => d.indices_of(label),
        }
    }
}

/// Reference scan: distances to every candidate, sorted, truncated to `k`.
pub fn brute_force_knn(
    d: &Dataset,
    point: &[f64],
    candidates: &[usize],
    k: usize,
    exclude: Option<usize>,
    metric: DistanceMetric,
) -> NeighborList {
    let mut all: Vec<Neighbor> = candidates
        .iter()
        .filter(|&&i| Some(i) != exclude)
        .map(|&i| Neighbor {
            index: i,
            distance: metric.distance(point, d.row(i)),
        })
        .collect();
    all.sort_by(by_distance_then_index);
    all.truncate(k);
    all
}

/// Single nearest candidate by linear scan, or `None` when `candidates` is
/// empty.
pub fn nearest_brute(d: &Dataset, point: &[f64], candidates: &[usize], metric: DistanceMetric) -> Option<Neighbor> {
    let mut best: Option<Neighbor> = None;
    for &i in candidates {
        let n = Neighbor {
            index: i,
            distance: metric.distance(point, d.row(i)),
        };
        if best.is_none_or(|b| by_distance_then_index(&n, &b) == Ordering::Less) {
            best = Some(n);
        }
    }
    best
}

/// Sorted buffer holding the best `k` candidates seen so far.
struct Best {
    k: usize,
    items: Vec<Neighbor>,
}

impl Best {
    fn new(k: usize) -> Self {
        Self {
            k,
            items: Vec::with_capacity(k + 1),
        }
    }

    fn full(&self) -> bool {
        self.items.len() == self.k
    }

    fn worst(&self) -> f64 {
        self.items.last().map_or(f64::INFINITY, |n| n.distance)
    }

    fn offer(&mut self, n: Neighbor) {
        if self.full() {
            let last = self.items.last().unwrap();
            if by_distance_then_index(&n, last) != Ordering::Less {
                return;
            }
            self.items.pop();
        }
        let pos = self
            .items
            .partition_point(|x| by_distance_then_index(x, &n) == Ordering::Less);
        self.items.insert(pos, n);
    }
}

const LEAF_SIZE: usize = 16;

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        dim: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

/// k-d tree over a subset of the rows of a dataset.
///
/// Splits put coordinates `<= value` on the left and `>= value` on the right
/// (median element included on the right). A subtree is skipped only when
/// its lower bound is strictly greater than the current k-th distance, so
/// equal-distance candidates with a lower index are never pruned.
#[derive(Debug, Clone)]
pub struct NeighborIndex<'a> {
    data: &'a Dataset,
    metric: DistanceMetric,
    rows: Vec<usize>,
    member: Vec<bool>,
    nodes: Vec<Node>,
}

impl<'a> NeighborIndex<'a> {
    pub fn new(data: &'a Dataset, restrict: Restrict<'_>, metric: DistanceMetric) -> Self {
        Self::over_rows(data, restrict.rows(data), metric)
    }

    pub fn over_rows(data: &'a Dataset, rows: Vec<usize>, metric: DistanceMetric) -> Self {
        let mut member = vec![false; data.n_samples()];
        for &r in &rows {
            member[r] = true;
        }
        let mut index = Self {
            data,
            metric,
            rows,
            member,
            nodes: Vec::new(),
        };
        if !index.rows.is_empty() {
            let n = index.rows.len();
            index.build(0, n);
        }
        index
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { start, end });
        if end - start <= LEAF_SIZE {
            return id;
        }
        let data = self.data;
        let nf = data.n_features();
        let (mut best_dim, mut best_spread) = (0, 0.0);
        for dim in 0..nf {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &r in &self.rows[start..end] {
                let v = data.row(r)[dim];
                lo = lo.min(v);
                hi = hi.max(v);
            }
            if hi - lo > best_spread {
                best_spread = hi - lo;
                best_dim = dim;
            }
        }
        if best_spread == 0.0 {
            return id;
        }
        let mid = (end - start) / 2;
        self.rows[start..end].select_nth_unstable_by(mid, |&a, &b| {
            data.row(a)[best_dim].total_cmp(&data.row(b)[best_dim]).then(a.cmp(&b))
        });
        let value = data.row(self.rows[start + mid])[best_dim];
        let left = self.build(start, start + mid);
        let right = self.build(start + mid, end);
        self.nodes[id] = Node::Split {
            dim: best_dim,
            value,
            left,
            right,
        };
        id
    }

    fn available(&self, exclude: Option<usize>) -> usize {
        match exclude {
            Some(e) if e < self.member.len() && self.member[e] => self.rows.len() - 1,
            _ => self.rows.len(),
        }
    }

    /// The `k` nearest indexed rows to `point`, never returning `exclude`.
    pub fn query_point(&self, point: &[f64], k: usize, exclude: Option<usize>) -> Result<NeighborList> {
        if point.len() != self.data.n_features() {
            return Err(Error::Dimension {
                expected: self.data.n_features(),
                found: point.len(),
            });
        }
        let available = self.available(exclude);
        if k == 0 || k > available {
            return Err(Error::NeighborCount {
                requested: k,
                available,
            });
        }
        let mut best = Best::new(k);
        self.search(0, point, exclude, &mut best);
        Ok(best.items)
    }

    pub fn query_row(&self, row: usize, k: usize, exclude_self: bool) -> Result<NeighborList> {
        if row >= self.data.n_samples() {
            return Err(Error::Index {
                index: row,
                len: self.data.n_samples(),
            });
        }
        self.query_point(self.data.row(row), k, exclude_self.then_some(row))
    }

    /// Elementwise [`NeighborIndex::query_row`], computed in parallel.
    pub fn query_rows(&self, rows: &[usize], k: usize, exclude_self: bool) -> Result<Vec<NeighborList>> {
        rows.par_iter().map(|&r| self.query_row(r, k, exclude_self)).collect()
    }

    fn search(&self, node: usize, point: &[f64], exclude: Option<usize>, best: &mut Best) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &r in &self.rows[start..end] {
                    if Some(r) == exclude {
                        continue;
                    }
                    best.offer(Neighbor {
                        index: r,
                        distance: self.metric.distance(point, self.data.row(r)),
                    });
                }
            }
            Node::Split {
                dim,
                value,
                left,
                right,
            } => {
                let diff = point[dim] - value;
                let (near, far) = if diff < 0.0 { (left, right) } else { (right, left) };
                self.search(near, point, exclude, best);
                let bound = (diff * diff).sqrt();
                if !best.full() || bound <= best.worst() {
                    self.search(far, point, exclude, best);
                }
            }
        }
    }
}

/// k nearest neighbors of one row.
pub fn knn_query(
    d: &Dataset,
    query_index: usize,
    k: usize,
    restrict: Restrict<'_>,
    exclude_self: bool,
) -> Result<NeighborList> {
    NeighborIndex::new(d, restrict, DistanceMetric::Euclidean).query_row(query_index, k, exclude_self)
}

/// [`knn_query`] for many rows against one shared index.
pub fn knn_query_batch(
    d: &Dataset,
    queries: &[usize],
    k: usize,
    restrict: Restrict<'_>,
    exclude_self: bool,
) -> Result<Vec<NeighborList>> {
    NeighborIndex::new(d, restrict, DistanceMetric::Euclidean).query_rows(queries, k, exclude_self)
}
