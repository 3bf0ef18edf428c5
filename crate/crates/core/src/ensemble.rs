//! Ensembles of balanced subsets.
//!
//! Subset `i` is drawn with `derive_seed(master, i)`, so any subset can be
//! regenerated without producing its predecessors.

use rayon::prelude::*;

use crate::dataset::{resolve_targets, Dataset, Direction, RatioSpec, ResampleResult};
use crate::error::Result;
use crate::learners::knn::KnnClassifier;
use crate::learners::svm::{fit_with_positive, SvmConfig};
use crate::neighbors::DistanceMetric;
use crate::rng::{derive_seed, SeededRng};
use crate::sampler::Env;
use crate::under_sampling::random_under_core;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSets {
    pub subsets: Vec<ResampleResult>,
    /// Seed each subset was drawn with.
    pub seeds: Vec<u64>,
    /// BalanceCascade only: majority pool size before the first draw and
    /// after each iteration.
    pub pool_sizes: Vec<usize>,
}

impl EnsembleSets {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
}

/// Independent random under-samplings of `d`.
pub fn easy_ensemble(d: &Dataset, n_subsets: usize, ratio: RatioSpec, seed: u64) -> Result<EnsembleSets> {
    let env = Env::new(d, None, DistanceMetric::default())?;
    resolve_targets(&env.roles, ratio, Direction::Under)?;
    let seeds: Vec<u64> = (0..n_subsets as u64).map(|i| derive_seed(seed, i)).collect();
    let subsets = seeds
        .par_iter()
        .map(|&s| random_under_core(d, &env, ratio, false, &mut SeededRng::new(s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleSets {
        subsets,
        seeds,
        pool_sizes: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CascadeClassifier {
    Knn { k: usize },
    LinearSvm(SvmConfig),
}

impl Default for CascadeClassifier {
    fn default() -> Self {
        CascadeClassifier::Knn { k: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeConfig {
    pub max_iter: usize,
    pub classifier: CascadeClassifier,
    pub ratio: RatioSpec,
}

impl CascadeConfig {
    pub fn new(max_iter: usize) -> Self {
        Self {
            max_iter,
            classifier: CascadeClassifier::default(),
            ratio: RatioSpec::Auto,
        }
    }
}

/// Sequential balanced subsets. After each draw a classifier trained on the
/// subset labels the drawn majority rows; correctly classified rows leave the
/// pool, misclassified rows stay eligible. Stops after `max_iter` subsets or
/// when the pool holds fewer rows than one draw needs.
pub fn balance_cascade(d: &Dataset, cfg: &CascadeConfig, seed: u64) -> Result<EnsembleSets> {
    let env = Env::new(d, None, DistanceMetric::default())?;
    let roles = &env.roles;
    let draw = resolve_targets(roles, cfg.ratio, Direction::Under)?.n_majority;
    let minority = d.indices_of(&roles.minority_label);
    let mut pool = d.indices_of(&roles.majority_label);
    let mut out = EnsembleSets {
        subsets: Vec::new(),
        seeds: Vec::new(),
        pool_sizes: vec![pool.len()],
    };
    for i in 0..cfg.max_iter {
        if pool.len() < draw {
            break;
        }
        let s = derive_seed(seed, i as u64);
        let mut rng = SeededRng::new(s);
        let drawn = rng.sample_without_replacement(&pool, draw);
        let mut kept: Vec<usize> = minority.iter().chain(&drawn).copied().collect();
        kept.sort_unstable();
        let subset = ResampleResult::from_kept(d, kept)?;

        let correct: Vec<bool> = match cfg.classifier {
            CascadeClassifier::Knn { k } => {
                let clf = KnnClassifier::fit(&subset.dataset, k, env.metric)?;
                drawn
                    .iter()
                    .map(|&j| clf.predict(d.row(j)).map(|l| l == roles.majority_label))
                    .collect::<Result<_>>()?
            }
            CascadeClassifier::LinearSvm(svm_cfg) => {
                let model = fit_with_positive(&subset.dataset, &roles.minority_label, &svm_cfg, &mut rng)?;
                drawn.iter().map(|&j| model.predict_sign(d.row(j)) < 0).collect()
            }
        };
        let mut retire = vec![false; d.n_samples()];
        for (&j, ok) in drawn.iter().zip(correct) {
            retire[j] = ok;
        }
        pool.retain(|&j| !retire[j]);

        out.subsets.push(subset);
        out.seeds.push(s);
        out.pool_sizes.push(pool.len());
    }
    Ok(out)
}
