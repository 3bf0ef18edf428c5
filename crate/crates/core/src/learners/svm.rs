//! Linear SVM trained with Pegasos (stochastic sub-gradient descent on the
//! regularised hinge loss). The bias is learned as the weight of a constant
//! feature, so it is regularised together with the other weights.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Margin slack used to call a training row a support vector.
pub const SUPPORT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmConfig {
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-2,
            epochs: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Label mapped to `+1`.
    pub positive_label: String,
    /// Training rows with `y * decision(x) <= max(1, min margin) + SUPPORT_TOLERANCE`, ascending.
    pub support_indices: Vec<usize>,
}

impl LinearSvmModel {
    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    /// `+1` or `-1`; a zero decision value counts as `+1`.
    pub fn predict_sign(&self, x: &[f64]) -> i8 {
        if self.decision(x) >= 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn accuracy(&self, d: &Dataset) -> f64 {
        let ok = (0..d.n_samples())
            .filter(|&i| {
                let y = if d.label(i) == self.positive_label { 1 } else { -1 };
                self.predict_sign(d.row(i)) == y
            })
            .count();
        ok as f64 / d.n_samples() as f64
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fits with the minority label as the positive class.
pub fn linear_svm_fit(d: &Dataset, cfg: &SvmConfig, seed: u64) -> Result<LinearSvmModel> {
    let stats = d.class_stats()?;
    fit_with_positive(d, &stats.minority_label, cfg, &mut SeededRng::new(seed))
}

pub(crate) fn fit_with_positive(
    d: &Dataset,
    positive: &str,
    cfg: &SvmConfig,
    rng: &mut SeededRng,
) -> Result<LinearSvmModel> {
    let n = d.n_samples();
    let n_pos = d.labels().iter().filter(|l| *l == positive).count();
    if n_pos == 0 || n_pos == n {
        return Err(Error::ClassCount { found: 1 });
    }
    if !cfg.lambda.is_finite() || cfg.lambda <= 0.0 {
        return Err(Error::InvalidDataset(format!(
            "svm lambda must be positive, got {}",
            cfg.lambda
        )));
    }
    let y: Vec<f64> = d
        .labels()
        .iter()
        .map(|l| if l == positive { 1.0 } else { -1.0 })
        .collect();
    let nf = d.n_features();
    let mut w = vec![0.0; nf];
    let mut b = 0.0;
    let radius = 1.0 / cfg.lambda.sqrt();
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0u64;
    for _ in 0..cfg.epochs {
        rng.shuffle(&mut order);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (cfg.lambda * t as f64);
            let x = d.row(i);
            let margin = y[i] * (dot(&w, x) + b);
            let shrink = 1.0 - eta * cfg.lambda;
            for v in w.iter_mut() {
                *v *= shrink;
            }
            b *= shrink;
            if margin < 1.0 {
                for (v, xi) in w.iter_mut().zip(x) {
                    *v += eta * y[i] * xi;
                }
                b += eta * y[i];
            }
            let norm = (dot(&w, &w) + b * b).sqrt();
            if norm > radius {
                let s = radius / norm;
                for v in w.iter_mut() {
                    *v *= s;
                }
                b *= s;
            }
        }
    }
    // The exact optimum always has a row at margin <= 1; a stochastic
    // iterate can overshoot, so the cut-off follows the smallest margin.
    let margins: Vec<f64> = (0..n).map(|i| y[i] * (dot(&w, d.row(i)) + b)).collect();
    let floor = margins.iter().copied().fold(f64::INFINITY, f64::min).max(1.0);
    let support_indices = (0..n).filter(|&i| margins[i] <= floor + SUPPORT_TOLERANCE).collect();
    Ok(LinearSvmModel {
        weights: w,
        bias: b,
        positive_label: positive.to_owned(),
        support_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthgen::make_blobs;

    fn two_blobs(seed: u64) -> Dataset {
        make_blobs(
            &[vec![-2.0, 0.0], vec![2.0, 0.0]],
            &[50, 50],
            &["neg", "pos"],
            0.3,
            seed,
        )
        .unwrap()
    }

    #[test]
    fn separable_blobs() {
        let d = two_blobs(7);
        let m = linear_svm_fit(&d, &SvmConfig::default(), 7).unwrap();
        assert!(m.accuracy(&d) >= 0.95, "accuracy {}", m.accuracy(&d));
        assert!(!m.support_indices.is_empty());
        for x in d.rows() {
            assert!(matches!(m.predict_sign(x), 1 | -1));
        }
        assert_eq!(m.decision(&[0.0, 0.0]), m.bias);
    }

    #[test]
    fn deterministic() {
        let d = two_blobs(3);
        let a = linear_svm_fit(&d, &SvmConfig::default(), 11).unwrap();
        let b = linear_svm_fit(&d, &SvmConfig::default(), 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_class_rejected() {
        let d = Dataset::from_rows(&[[0.0], [1.0]], &["a", "a"]).unwrap();
        assert!(matches!(
            linear_svm_fit(&d, &SvmConfig::default(), 0),
            Err(Error::ClassCount { .. })
        ));
    }
}
