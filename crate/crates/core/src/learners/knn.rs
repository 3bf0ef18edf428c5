//! k-nearest-neighbor voting.

use crate::dataset::Dataset;
use crate::error::Result;
use crate::neighbors::{DistanceMetric, NeighborIndex, Restrict};

/// Per-row probability of the row's own label.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbEstimate(pub Vec<f64>);

impl ProbEstimate {
    /// Instance hardness: one minus the own-class probability.
    pub fn hardness(&self) -> Vec<f64> {
        self.0.iter().map(|p| 1.0 - p).collect()
    }
}

/// Leave-one-out estimate: the fraction of each row's `k` nearest other rows
/// that share its label.
pub fn knn_loo_true_class_proba(d: &Dataset, k: usize) -> Result<ProbEstimate> {
    loo_true_class_proba(d, k, DistanceMetric::Euclidean)
}

pub(crate) fn loo_true_class_proba(d: &Dataset, k: usize, metric: DistanceMetric) -> Result<ProbEstimate> {
    let index = NeighborIndex::new(d, Restrict::All, metric);
    let rows: Vec<usize> = (0..d.n_samples()).collect();
    let lists = index.query_rows(&rows, k, true)?;
    Ok(ProbEstimate(
        lists
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let same = l.iter().filter(|n| d.label(n.index) == d.label(i)).count();
                same as f64 / k as f64
            })
            .collect(),
    ))
}

/// Majority-vote classifier over a training set. A tied vote goes to the
/// label of the single nearest neighbor.
#[derive(Debug, Clone)]
pub struct KnnClassifier<'a> {
    train: &'a Dataset,
    index: NeighborIndex<'a>,
    k: usize,
}

impl<'a> KnnClassifier<'a> {
    pub fn fit(train: &'a Dataset, k: usize, metric: DistanceMetric) -> Result<Self> {
        let index = NeighborIndex::new(train, Restrict::All, metric);
        // Surface an impossible k at fit time.
        if let Some(first) = train.rows().next() {
            index.query_point(first, k, None)?;
        } else {
            index.query_point(&vec![0.0; train.n_features()], k, None)?;
        }
        Ok(Self { train, index, k })
    }

    pub fn predict(&self, point: &[f64]) -> Result<&'a str> {
        let nn = self.index.query_point(point, self.k, None)?;
        let first = self.train.label(nn[0].index);
        let agree = nn.iter().filter(|n| self.train.label(n.index) == first).count();
        let other = nn.iter().map(|n| self.train.label(n.index)).find(|l| *l != first);
        Ok(match other {
            Some(o) if 2 * agree < nn.len() => o,
            _ => first,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::fixtures::f1;

    #[test]
    fn f1_loo_probabilities() {
        let p = knn_loo_true_class_proba(&f1(), 3).unwrap();
        assert!((p.0[2] - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.0[3] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.0[4] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.0[5] - 2.0 / 3.0).abs() < 1e-15);
        let h = p.hardness();
        assert!((h[2] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_class_is_certain() {
        let d = Dataset::from_rows(&[[0.0], [1.0], [3.0]], &["a", "a", "a"]).unwrap();
        assert_eq!(knn_loo_true_class_proba(&d, 2).unwrap().0, vec![1.0; 3]);
    }

    #[test]
    fn probabilities_on_k_grid() {
        let d = f1();
        for k in 1..=5 {
            for p in knn_loo_true_class_proba(&d, k).unwrap().0 {
                let scaled = p * k as f64;
                assert!((scaled - scaled.round()).abs() < 1e-12);
                assert!((0.0..=1.0).contains(&p));
            }
        }
        assert!(knn_loo_true_class_proba(&d, 6).is_err());
    }

    #[test]
    fn classifier_votes() {
        let d = f1();
        let c = KnnClassifier::fit(&d, 1, DistanceMetric::Euclidean).unwrap();
        assert_eq!(c.predict(&[0.1]).unwrap(), "P");
        assert_eq!(c.predict(&[3.4]).unwrap(), "N");
        let c3 = KnnClassifier::fit(&d, 3, DistanceMetric::Euclidean).unwrap();
        // 0.0: neighbors 0.0 P, 0.4 N, 1.0 P
        assert_eq!(c3.predict(&[0.0]).unwrap(), "P");
        // Even k with a 1-1 split: nearest wins.
        let c2 = KnnClassifier::fit(&d, 2, DistanceMetric::Euclidean).unwrap();
        assert_eq!(c2.predict(&[0.35]).unwrap(), "N");
        assert!(KnnClassifier::fit(&d, 7, DistanceMetric::Euclidean).is_err());
    }
}
