//! Seeded synthetic datasets: isotropic Gaussian blobs.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub const MINORITY_LABEL: &str = "0";
pub const MAJORITY_LABEL: &str = "1";

/// Two-class generator settings. `weights` is `[minority, majority]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalancedConfig {
    pub n_samples: usize,
    pub n_features: usize,
    pub weights: [f64; 2],
    pub class_sep: f64,
    pub sigma: f64,
}

impl ImbalancedConfig {
    pub fn new(n_samples: usize, n_features: usize, weights: [f64; 2]) -> Self {
        Self {
            n_samples,
            n_features,
            weights,
            class_sep: 2.0,
            sigma: 1.0,
        }
    }

    /// `(n_minority, n_majority)` after rounding the minority share.
    pub fn class_counts(&self) -> Result<(usize, usize)> {
        let [w_min, w_maj] = self.weights;
        if !(w_min > 0.0 && w_min <= w_maj) || ((w_min + w_maj) - 1.0).abs() > 1e-9 {
            return Err(Error::Weight(format!(
                "need 0 < w_min <= w_maj and w_min + w_maj = 1, got [{w_min}, {w_maj}]"
            )));
        }
        let n_min = (w_min * self.n_samples as f64).round() as usize;
        let n_maj = self.n_samples - n_min;
        if n_min == 0 || n_maj == 0 {
            return Err(Error::Weight(format!(
                "weights [{w_min}, {w_maj}] leave a class empty at n = {}",
                self.n_samples
            )));
        }
        Ok((n_min, n_maj))
    }
}

/// Blob `c` gets `counts[c]` rows labelled `labels[c]`, drawn as
/// `centers[c] + sigma * N(0, I)`. Rows come out blob by blob.
pub fn make_blobs(centers: &[Vec<f64>], counts: &[usize], labels: &[&str], sigma: f64, seed: u64) -> Result<Dataset> {
    if centers.len() != counts.len() || centers.len() != labels.len() || centers.is_empty() {
        return Err(Error::Shape(
            "centers, counts and labels must be non-empty and of equal length".into(),
        ));
    }
    let nf = centers[0].len();
    if let Some(c) = centers.iter().find(|c| c.len() != nf) {
        return Err(Error::Dimension {
            expected: nf,
            found: c.len(),
        });
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidDataset(format!(
            "sigma must be finite and non-negative, got {sigma}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let total: usize = counts.iter().sum();
    let mut features = Vec::with_capacity(total * nf);
    let mut out_labels = Vec::with_capacity(total);
    for ((center, &count), label) in centers.iter().zip(counts).zip(labels) {
        for _ in 0..count {
            for &c in center {
                features.push(c + sigma * rng.normal());
            }
            out_labels.push((*label).to_owned());
        }
    }
    Dataset::new(features, nf, out_labels)
}

/// Minority blob centred at `+(class_sep / sqrt(d)) * 1`, majority at the
/// negation, minority rows first.
pub fn make_imbalanced(cfg: &ImbalancedConfig, seed: u64) -> Result<Dataset> {
    let (n_min, n_maj) = cfg.class_counts()?;
    if cfg.n_features == 0 {
        return Err(Error::InvalidDataset("n_features must be at least 1".into()));
    }
    let offset = cfg.class_sep / (cfg.n_features as f64).sqrt();
    make_blobs(
        &[vec![offset; cfg.n_features], vec![-offset; cfg.n_features]],
        &[n_min, n_maj],
        &[MINORITY_LABEL, MAJORITY_LABEL],
        cfg.sigma,
        seed,
    )
}
