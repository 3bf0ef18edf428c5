//! Over-sampling of the minority class: random replication and SMOTE
//! (regular, borderline-1, borderline-2 and SVM kinds).
//!
//! Synthetic rows are appended after every original row in generation order.
//! Per synthetic row the stream is consumed as: seed row, then (borderline-2
//! only) the neighbor-class coin, then the neighbor, then the gap.

use crate::dataset::{resolve_targets, Dataset, Direction, RatioSpec, ResampleResult, SyntheticOrigin, SyntheticRow};
use crate::error::{Error, Result};
use crate::learners::svm::{fit_with_positive, LinearSvmModel, SvmConfig};
use crate::neighbors::{NeighborIndex, Restrict};
use crate::rng::SeededRng;
use crate::sampler::{Env, Method, Sampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmoteKind {
    #[default]
    Regular,
    Borderline1,
    Borderline2,
    Svm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoteConfig {
    pub kind: SmoteKind,
    /// Minority neighbors used for interpolation.
    pub k_neighbors: usize,
    /// Neighbors used to tag danger rows; clamped to `n - 1`.
    pub m_neighbors: usize,
    pub ratio: RatioSpec,
    pub svm: SvmConfig,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        Self {
            kind: SmoteKind::Regular,
            k_neighbors: 5,
            m_neighbors: 10,
            ratio: RatioSpec::Auto,
            svm: SvmConfig::default(),
        }
    }
}

impl SmoteConfig {
    pub fn new(kind: SmoteKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }
}

/// Neighborhood of a minority row among its `m` nearest rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DangerTag {
    /// Fewer than half of the neighbors are majority.
    Safe,
    /// At least half, but not all, of the neighbors are majority.
    Danger,
    /// Every neighbor is majority.
    Noise,
}

impl DangerTag {
    fn from_count(n_majority: usize, m: usize) -> Self {
        if n_majority == m {
            DangerTag::Noise
        } else if 2 * n_majority >= m {
            DangerTag::Danger
        } else {
            DangerTag::Safe
        }
    }
}

/// `seed + u * (neighbor - seed)`.
pub fn interpolate(seed: &[f64], neighbor: &[f64], u: f64) -> Result<Vec<f64>> {
    if seed.len() != neighbor.len() {
        return Err(Error::Dimension {
            expected: seed.len(),
            found: neighbor.len(),
        });
    }
    Ok(seed.iter().zip(neighbor).map(|(s, n)| s + u * (n - s)).collect())
}

pub fn random_over(d: &Dataset, ratio: RatioSpec, seed: u64) -> Result<ResampleResult> {
    Sampler::new(Method::RandomOver { ratio }).fit_sample(d, seed)
}

/// Tags for every minority row, in ascending row order.
pub fn classify_danger(d: &Dataset, m: usize) -> Result<Vec<(usize, DangerTag)>> {
    let env = Env::new(d, None, Default::default())?;
    let minority = d.indices_of(&env.roles.minority_label);
    let tags = danger_tags(d, &env, &minority, m)?;
    Ok(minority.into_iter().zip(tags).collect())
}

pub fn smote(d: &Dataset, cfg: &SmoteConfig, seed: u64) -> Result<ResampleResult> {
    Sampler::new(Method::Smote(*cfg)).fit_sample(d, seed)
}

fn majority_counts(d: &Dataset, env: &Env, rows: &[usize], m: usize) -> Result<Vec<usize>> {
    let index = NeighborIndex::new(d, Restrict::All, env.metric);
    Ok(index
        .query_rows(rows, m, true)?
        .iter()
        .map(|l| {
            l.iter()
                .filter(|n| d.label(n.index) == env.roles.majority_label)
                .count()
        })
        .collect())
}

fn danger_tags(d: &Dataset, env: &Env, rows: &[usize], m: usize) -> Result<Vec<DangerTag>> {
    Ok(majority_counts(d, env, rows, m)?
        .into_iter()
        .map(|c| DangerTag::from_count(c, m))
        .collect())
}

fn push_synthetic(out: &mut ResampleResult, input: &Dataset, label: &str, seed: usize, neighbor: usize, gap: f64) {
    let row: Vec<f64> = input
        .row(seed)
        .iter()
        .zip(input.row(neighbor))
        .map(|(s, n)| s + gap * (n - s))
        .collect();
    out.dataset.push_row(&row, label);
    out.synthetic.push(SyntheticRow {
        stage: 0,
        origin: SyntheticOrigin::Interpolated {
            seed_index: seed,
            neighbor_index: neighbor,
            gap,
        },
    });
}

pub(crate) fn random_over_core(
    d: &Dataset,
    env: &Env,
    ratio: RatioSpec,
    rng: &mut SeededRng,
) -> Result<ResampleResult> {
    let t = resolve_targets(&env.roles, ratio, Direction::Over)?;
    let minority = d.indices_of(&env.roles.minority_label);
    let mut out = ResampleResult::identity(d);
    for _ in minority.len()..t.n_minority {
        let s = minority[rng.below(minority.len())];
        push_synthetic(&mut out, d, &env.roles.minority_label, s, s, 0.0);
    }
    Ok(out)
}

pub(crate) fn smote_fit(
    d: &Dataset,
    env: &Env,
    cfg: &SmoteConfig,
    rng: &mut SeededRng,
) -> Result<Option<LinearSvmModel>> {
    match cfg.kind {
        SmoteKind::Svm => Ok(Some(fit_with_positive(d, &env.roles.minority_label, &cfg.svm, rng)?)),
        _ => Ok(None),
    }
}

pub(crate) fn smote_core(
    d: &Dataset,
    env: &Env,
    cfg: &SmoteConfig,
    svm: Option<&LinearSvmModel>,
    rng: &mut SeededRng,
) -> Result<ResampleResult> {
    let roles = &env.roles;
    let k = cfg.k_neighbors;
    if k == 0 || k + 1 > roles.n_minority {
        return Err(Error::NeighborCount {
            requested: k,
            available: roles.n_minority.saturating_sub(1),
        });
    }
    let t = resolve_targets(roles, cfg.ratio, Direction::Over)?;
    let n_new = t.n_minority - roles.n_minority;
    if n_new == 0 {
        return Ok(ResampleResult::identity(d));
    }
    let m = cfg.m_neighbors.min(d.n_samples() - 1);
    let minority = d.indices_of(&roles.minority_label);

    let (seeds, extrapolate): (Vec<usize>, Vec<bool>) = match cfg.kind {
        SmoteKind::Regular => (minority.clone(), vec![false; minority.len()]),
        SmoteKind::Borderline1 | SmoteKind::Borderline2 => {
            let tags = danger_tags(d, env, &minority, m)?;
            let seeds: Vec<usize> = minority
                .iter()
                .zip(&tags)
                .filter(|(_, t)| **t == DangerTag::Danger)
                .map(|(&i, _)| i)
                .collect();
            if seeds.is_empty() {
                return Err(Error::DegenerateInput(
                    "borderline SMOTE found no minority rows in danger".into(),
                ));
            }
            let n = seeds.len();
            (seeds, vec![false; n])
        }
        SmoteKind::Svm => {
            let model = svm.expect("SVM-SMOTE sampled without a fitted model");
            let seeds: Vec<usize> = model
                .support_indices
                .iter()
                .copied()
                .filter(|&i| d.label(i) == roles.minority_label)
                .collect();
            if seeds.is_empty() {
                return Err(Error::DegenerateInput(
                    "linear SVM left no minority support vectors".into(),
                ));
            }
            let extrapolate = majority_counts(d, env, &seeds, m)?
                .into_iter()
                .map(|c| 2 * c < m)
                .collect();
            (seeds, extrapolate)
        }
    };

    let minority_index = NeighborIndex::new(d, Restrict::Class(&roles.minority_label), env.metric);
    let minority_nn = minority_index.query_rows(&seeds, k, true)?;
    let majority_nn = if cfg.kind == SmoteKind::Borderline2 {
        if k > roles.n_majority {
            return Err(Error::NeighborCount {
                requested: k,
                available: roles.n_majority,
            });
        }
        NeighborIndex::new(d, Restrict::Class(&roles.majority_label), env.metric).query_rows(&seeds, k, false)?
    } else {
        Vec::new()
    };

    let mut out = ResampleResult::identity(d);
    for _ in 0..n_new {
        let si = rng.below(seeds.len());
        let use_majority = cfg.kind == SmoteKind::Borderline2 && rng.uniform() < 0.5;
        let (neighbor, gap) = if use_majority {
            let nb = majority_nn[si][rng.below(k)].index;
            (nb, 0.5 * rng.uniform())
        } else {
            let nb = minority_nn[si][rng.below(k)].index;
            let u = rng.uniform();
            (nb, if extrapolate[si] { -u } else { u })
        };
        push_synthetic(&mut out, d, &roles.minority_label, seeds[si], neighbor, gap);
    }
    Ok(out)
}
