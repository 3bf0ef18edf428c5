//! The two-phase sampler contract.
//!
//! [`Sampler::fit`] resolves class roles and targets and trains whatever
//! model the method needs (k-means, hardness scores, linear SVM);
//! [`FittedSampler::sample`] produces the resampled data. `fit_sample` is
//! exactly `fit` followed by `sample`. A fitted sampler keeps the random
//! stream position reached after fitting, so repeated `sample` calls return
//! identical results.

use crate::combine;
use crate::dataset::{resolve_targets, ClassStats, Dataset, Direction, RatioSpec, ResampleResult, Targets};
use crate::error::{Error, Result};
use crate::learners::kmeans::{KMeansConfig, KMeansModel};
use crate::learners::knn::{loo_true_class_proba, ProbEstimate};
use crate::learners::svm::LinearSvmModel;
use crate::neighbors::DistanceMetric;
use crate::over_sampling::{self, SmoteConfig, SmoteKind};
use crate::rng::SeededRng;
use crate::under_sampling::{self, EnnScope, NearMissVariant, TomekRemove};

/// Class roles and metric shared by every stage of a method.
#[derive(Debug, Clone)]
pub(crate) struct Env {
    pub roles: ClassStats,
    pub metric: DistanceMetric,
}

impl Env {
    pub fn new(d: &Dataset, hint: Option<&ClassStats>, metric: DistanceMetric) -> Result<Self> {
        Ok(Self {
            roles: ClassStats::compute_with_hint(d, hint)?,
            metric,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    RandomUnder {
        ratio: RatioSpec,
        with_replacement: bool,
    },
    ClusterCentroids {
        ratio: RatioSpec,
        kmeans: KMeansConfig,
    },
    NearMiss {
        variant: NearMissVariant,
        ratio: RatioSpec,
        k: usize,
        m: usize,
    },
    InstanceHardness {
        ratio: RatioSpec,
        k: usize,
    },
    TomekLinks {
        remove: TomekRemove,
    },
    EditedNn {
        k: usize,
        scope: EnnScope,
    },
    CondensedNn,
    OneSidedSelection,
    NeighbourhoodCleaning {
        k: usize,
    },
    RandomOver {
        ratio: RatioSpec,
    },
    Smote(SmoteConfig),
    SmoteTomek(SmoteConfig),
    SmoteEnn {
        smote: SmoteConfig,
        k: usize,
    },
}

impl Method {
    /// Command-line name of the method.
    pub fn name(&self) -> &'static str {
        match self {
            Method::RandomUnder { .. } => "random-under",
            Method::ClusterCentroids { .. } => "cluster-centroids",
            Method::NearMiss { variant, .. } => match variant {
                NearMissVariant::One => "nearmiss1",
                NearMissVariant::Two => "nearmiss2",
                NearMissVariant::Three => "nearmiss3",
            },
            Method::InstanceHardness { .. } => "iht",
            Method::TomekLinks { .. } => "tomek",
            Method::EditedNn { .. } => "enn",
            Method::CondensedNn => "cnn",
            Method::OneSidedSelection => "oss",
            Method::NeighbourhoodCleaning { .. } => "ncr",
            Method::RandomOver { .. } => "random-over",
            Method::Smote(c) => match c.kind {
                SmoteKind::Regular => "smote",
                SmoteKind::Borderline1 => "smote-borderline1",
                SmoteKind::Borderline2 => "smote-borderline2",
                SmoteKind::Svm => "smote-svm",
            },
            Method::SmoteTomek(_) => "smote-tomek",
            Method::SmoteEnn { .. } => "smote-enn",
        }
    }

    /// Ratio target, if the method has one. Cleaning methods do not.
    pub fn ratio(&self) -> Option<RatioSpec> {
        match self {
            Method::RandomUnder { ratio, .. }
            | Method::ClusterCentroids { ratio, .. }
            | Method::NearMiss { ratio, .. }
            | Method::InstanceHardness { ratio, .. }
            | Method::RandomOver { ratio } => Some(*ratio),
            Method::Smote(c) | Method::SmoteTomek(c) | Method::SmoteEnn { smote: c, .. } => Some(c.ratio),
            _ => None,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Method::RandomOver { .. } | Method::Smote(_) | Method::SmoteTomek(_) | Method::SmoteEnn { .. } => {
                Direction::Over
            }
            _ => Direction::Under,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampler {
    pub method: Method,
    pub metric: DistanceMetric,
}

#[derive(Debug, Clone)]
enum Model {
    None,
    KMeans(KMeansModel),
    Hardness(ProbEstimate),
    Svm(Option<LinearSvmModel>),
}

#[derive(Debug, Clone)]
pub struct FittedSampler {
    sampler: Sampler,
    env: Env,
    targets: Option<Targets>,
    fingerprint: u64,
    model: Model,
    rng: SeededRng,
}

impl Sampler {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            metric: DistanceMetric::default(),
        }
    }

    pub fn with_metric(mut self, metric: DistanceMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn name(&self) -> &'static str {
        self.method.name()
    }

    pub fn fit(&self, d: &Dataset, seed: u64) -> Result<FittedSampler> {
        self.fit_with_hint(d, seed, None)
    }

    pub(crate) fn fit_with_hint(&self, d: &Dataset, seed: u64, hint: Option<&ClassStats>) -> Result<FittedSampler> {
        let env = Env::new(d, hint, self.metric)?;
        let targets = self
            .method
            .ratio()
            .map(|r| resolve_targets(&env.roles, r, self.method.direction()))
            .transpose()?;
        let mut rng = SeededRng::new(seed);
        let model = match &self.method {
            Method::ClusterCentroids { ratio, kmeans } => Model::KMeans(under_sampling::cluster_centroids_fit(
                d, &env, *ratio, kmeans, &mut rng,
            )?),
            Method::InstanceHardness { k, .. } => Model::Hardness(loo_true_class_proba(d, *k, self.metric)?),
            Method::Smote(c) | Method::SmoteTomek(c) | Method::SmoteEnn { smote: c, .. } => {
                Model::Svm(over_sampling::smote_fit(d, &env, c, &mut rng)?)
            }
            _ => Model::None,
        };
        Ok(FittedSampler {
            sampler: *self,
            env,
            targets,
            fingerprint: d.fingerprint(),
            model,
            rng,
        })
    }

    pub fn fit_sample(&self, d: &Dataset, seed: u64) -> Result<ResampleResult> {
        self.fit(d, seed)?.sample(d)
    }
}

impl FittedSampler {
    pub fn sampler(&self) -> &Sampler {
        &self.sampler
    }

    pub fn class_stats(&self) -> &ClassStats {
        &self.env.roles
    }

    /// Class counts the sampler will reach; `None` for cleaning methods.
    pub fn targets(&self) -> Option<Targets> {
        self.targets
    }

    pub fn sample(&self, d: &Dataset) -> Result<ResampleResult> {
        if d.fingerprint() != self.fingerprint {
            return Err(Error::DatasetMismatch);
        }
        let env = &self.env;
        let mut rng = self.rng.clone();
        let svm = match &self.model {
            Model::Svm(m) => m.as_ref(),
            _ => None,
        };
        match (&self.sampler.method, &self.model) {
            (
                Method::RandomUnder {
                    ratio,
                    with_replacement,
                },
                _,
            ) => under_sampling::random_under_core(d, env, *ratio, *with_replacement, &mut rng),
            (Method::ClusterCentroids { .. }, Model::KMeans(m)) => under_sampling::cluster_centroids_core(d, env, m),
            (Method::NearMiss { variant, ratio, k, m }, _) => {
                under_sampling::near_miss_core(d, env, *variant, *ratio, *k, *m)
            }
            (Method::InstanceHardness { ratio, .. }, Model::Hardness(p)) => {
                under_sampling::instance_hardness_core(d, env, *ratio, p)
            }
            (Method::TomekLinks { remove }, _) => under_sampling::tomek_core(d, env, *remove),
            (Method::EditedNn { k, scope }, _) => under_sampling::enn_core(d, env, *k, *scope),
            (Method::CondensedNn, _) => under_sampling::cnn_core(d, env),
            (Method::OneSidedSelection, _) => under_sampling::oss_core(d, env),
            (Method::NeighbourhoodCleaning { k }, _) => under_sampling::ncr_core(d, env, *k),
            (Method::RandomOver { ratio }, _) => over_sampling::random_over_core(d, env, *ratio, &mut rng),
            (Method::Smote(c), _) => over_sampling::smote_core(d, env, c, svm, &mut rng),
            (Method::SmoteTomek(c), _) => combine::smote_tomek_core(d, env, c, svm, &mut rng),
            (Method::SmoteEnn { smote, k }, _) => combine::smote_enn_core(d, env, smote, *k, svm, &mut rng),
            (m, _) => unreachable!("{} fitted without its model", m.name()),
        }
    }
}
