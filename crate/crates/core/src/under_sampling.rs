//! Under-sampling of the majority class.
//!
//! Fixed methods (random, cluster centroids, NearMiss, instance hardness)
//! remove majority rows down to the count given by [`resolve_targets`].
//! Cleaning methods (Tomek links, ENN, CNN, one-sided selection,
//! neighbourhood cleaning rule) remove rows by a neighborhood criterion and
//! take no ratio. All neighborhood criteria are evaluated on the dataset the
//! method receives, in a single pass, except CNN which iterates to a fixed
//! point.

use crate::dataset::{resolve_targets, Dataset, Direction, RatioSpec, ResampleResult, SyntheticOrigin, SyntheticRow};
use crate::error::{Error, Result};
use crate::learners::kmeans::{kmeans_fit, KMeansConfig, KMeansModel};
use crate::learners::knn::ProbEstimate;
use crate::neighbors::{nearest_brute, NeighborIndex, Restrict};
use crate::rng::SeededRng;
use crate::sampler::{Env, Method, Sampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NearMissVariant {
    One,
    Two,
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TomekRemove {
    #[default]
    MajorityOnly,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnnScope {
    #[default]
    MajorityOnly,
    AllClasses,
}

pub fn random_under(d: &Dataset, ratio: RatioSpec, seed: u64, with_replacement: bool) -> Result<ResampleResult> {
    Sampler::new(Method::RandomUnder {
        ratio,
        with_replacement,
    })
    .fit_sample(d, seed)
}

pub fn cluster_centroids(d: &Dataset, ratio: RatioSpec, seed: u64) -> Result<ResampleResult> {
    Sampler::new(Method::ClusterCentroids {
        ratio,
        kmeans: KMeansConfig::default(),
    })
    .fit_sample(d, seed)
}

pub fn near_miss(
    d: &Dataset,
    variant: NearMissVariant,
    ratio: RatioSpec,
    k: usize,
    m: usize,
) -> Result<ResampleResult> {
    Sampler::new(Method::NearMiss { variant, ratio, k, m }).fit_sample(d, 0)
}

pub fn instance_hardness_threshold(d: &Dataset, ratio: RatioSpec, k: usize) -> Result<ResampleResult> {
    Sampler::new(Method::InstanceHardness { ratio, k }).fit_sample(d, 0)
}

pub fn tomek_links(d: &Dataset, remove: TomekRemove) -> Result<ResampleResult> {
    Sampler::new(Method::TomekLinks { remove }).fit_sample(d, 0)
}

pub fn edited_nn(d: &Dataset, k: usize, scope: EnnScope) -> Result<ResampleResult> {
    Sampler::new(Method::EditedNn { k, scope }).fit_sample(d, 0)
}

pub fn condensed_nn(d: &Dataset) -> Result<ResampleResult> {
    Sampler::new(Method::CondensedNn).fit_sample(d, 0)
}

pub fn one_sided_selection(d: &Dataset) -> Result<ResampleResult> {
    Sampler::new(Method::OneSidedSelection).fit_sample(d, 0)
}

pub fn neighbourhood_cleaning_rule(d: &Dataset, k: usize) -> Result<ResampleResult> {
    Sampler::new(Method::NeighbourhoodCleaning { k }).fit_sample(d, 0)
}

fn with_minority(d: &Dataset, env: &Env, mut majority_kept: Vec<usize>) -> Vec<usize> {
    majority_kept.extend(d.indices_of(&env.roles.minority_label));
    majority_kept.sort_unstable();
    majority_kept
}

fn kept_without(removed: &[bool]) -> Vec<usize> {
    (0..removed.len()).filter(|&i| !removed[i]).collect()
}

pub(crate) fn random_under_core(
    d: &Dataset,
    env: &Env,
    ratio: RatioSpec,
    with_replacement: bool,
    rng: &mut SeededRng,
) -> Result<ResampleResult> {
    let t = resolve_targets(&env.roles, ratio, Direction::Under)?;
    let majority = d.indices_of(&env.roles.majority_label);
    let chosen = if with_replacement {
        (0..t.n_majority).map(|_| majority[rng.below(majority.len())]).collect()
    } else {
        rng.sample_without_replacement(&majority, t.n_majority)
    };
    ResampleResult::from_kept(d, with_minority(d, env, chosen))
}

pub(crate) fn cluster_centroids_fit(
    d: &Dataset,
    env: &Env,
    ratio: RatioSpec,
    cfg: &KMeansConfig,
    rng: &mut SeededRng,
) -> Result<KMeansModel> {
    let t = resolve_targets(&env.roles, ratio, Direction::Under)?;
    let majority = d.indices_of(&env.roles.majority_label);
    let points: Vec<&[f64]> = majority.iter().map(|&i| d.row(i)).collect();
    kmeans_fit(&points, t.n_majority, cfg, rng.next_u64())
}

pub(crate) fn cluster_centroids_core(d: &Dataset, env: &Env, model: &KMeansModel) -> Result<ResampleResult> {
    let mut out = ResampleResult::from_kept(d, d.indices_of(&env.roles.minority_label))?;
    for (c, centroid) in model.centroids.iter().enumerate() {
        out.dataset.push_row(centroid, &env.roles.majority_label);
        out.synthetic.push(SyntheticRow {
            stage: 0,
            origin: SyntheticOrigin::Centroid { cluster: c },
        });
    }
    Ok(out)
}

fn mean_distance(list: &[crate::neighbors::Neighbor]) -> f64 {
    list.iter().map(|n| n.distance).sum::<f64>() / list.len() as f64
}

pub(crate) fn near_miss_core(
    d: &Dataset,
    env: &Env,
    variant: NearMissVariant,
    ratio: RatioSpec,
    k: usize,
    m: usize,
) -> Result<ResampleResult> {
    let roles = &env.roles;
    let t = resolve_targets(roles, ratio, Direction::Under)?;
    if k == 0 || k > roles.n_minority {
        return Err(Error::NeighborCount {
            requested: k,
            available: roles.n_minority,
        });
    }
    if variant == NearMissVariant::Three && (m == 0 || m > roles.n_majority) {
        return Err(Error::NeighborCount {
            requested: m,
            available: roles.n_majority,
        });
    }
    let majority = d.indices_of(&roles.majority_label);
    if t.n_majority >= majority.len() {
        return Ok(ResampleResult::identity(d));
    }
    let minority_index = NeighborIndex::new(d, Restrict::Class(&roles.minority_label), env.metric);

    let chosen: Vec<usize> = match variant {
        NearMissVariant::One | NearMissVariant::Two => {
            let scores: Vec<f64> = if variant == NearMissVariant::One {
                minority_index
                    .query_rows(&majority, k, false)?
                    .iter()
                    .map(|l| mean_distance(l))
                    .collect()
            } else {
                minority_index
                    .query_rows(&majority, roles.n_minority, false)?
                    .iter()
                    .map(|l| mean_distance(&l[l.len() - k..]))
                    .collect()
            };
            let mut order: Vec<usize> = (0..majority.len()).collect();
            order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(majority[a].cmp(&majority[b])));
            order[..t.n_majority].iter().map(|&p| majority[p]).collect()
        }
        NearMissVariant::Three => {
            let majority_index = NeighborIndex::new(d, Restrict::Class(&roles.majority_label), env.metric);
            let minority = d.indices_of(&roles.minority_label);
            let mut shortlisted = vec![false; d.n_samples()];
            for list in majority_index.query_rows(&minority, m, false)? {
                for n in list {
                    shortlisted[n.index] = true;
                }
            }
            let scores: Vec<f64> = minority_index
                .query_rows(&majority, k, false)?
                .iter()
                .map(|l| mean_distance(l))
                .collect();
            // Shortlisted rows first, each group by decreasing score.
            let mut order: Vec<usize> = (0..majority.len()).collect();
            order.sort_by(|&a, &b| {
                shortlisted[majority[b]]
                    .cmp(&shortlisted[majority[a]])
                    .then(scores[b].total_cmp(&scores[a]))
                    .then(majority[a].cmp(&majority[b]))
            });
            order[..t.n_majority].iter().map(|&p| majority[p]).collect()
        }
    };
    ResampleResult::from_kept(d, with_minority(d, env, chosen))
}

pub(crate) fn instance_hardness_core(
    d: &Dataset,
    env: &Env,
    ratio: RatioSpec,
    probs: &ProbEstimate,
) -> Result<ResampleResult> {
    let t = resolve_targets(&env.roles, ratio, Direction::Under)?;
    let mut majority = d.indices_of(&env.roles.majority_label);
    let n_remove = majority.len() - t.n_majority;
    majority.sort_by(|&a, &b| probs.0[a].total_cmp(&probs.0[b]).then(a.cmp(&b)));
    ResampleResult::from_kept(d, with_minority(d, env, majority.split_off(n_remove)))
}

/// Cross-class pairs `(a, b)`, `a < b`, that are each other's nearest neighbor.
pub(crate) fn tomek_pairs(d: &Dataset, env: &Env) -> Result<Vec<(usize, usize)>> {
    let index = NeighborIndex::new(d, Restrict::All, env.metric);
    let rows: Vec<usize> = (0..d.n_samples()).collect();
    let nn: Vec<usize> = index
        .query_rows(&rows, 1, true)?
        .into_iter()
        .map(|l| l[0].index)
        .collect();
    Ok(rows
        .iter()
        .filter_map(|&a| {
            let b = nn[a];
            (a < b && nn[b] == a && d.label(a) != d.label(b)).then_some((a, b))
        })
        .collect())
}

pub(crate) fn tomek_core(d: &Dataset, env: &Env, remove: TomekRemove) -> Result<ResampleResult> {
    let mut removed = vec![false; d.n_samples()];
    for (a, b) in tomek_pairs(d, env)? {
        for r in [a, b] {
            if remove == TomekRemove::Both || d.label(r) == env.roles.majority_label {
                removed[r] = true;
            }
        }
    }
    ResampleResult::from_kept(d, kept_without(&removed))
}

/// Whether each row's `k`-NN vote fails to give its own label a strict
/// majority.
fn vote_fails(d: &Dataset, env: &Env, rows: &[usize], k: usize) -> Result<Vec<bool>> {
    let index = NeighborIndex::new(d, Restrict::All, env.metric);
    Ok(index
        .query_rows(rows, k, true)?
        .iter()
        .zip(rows)
        .map(|(list, &r)| {
            let same = list.iter().filter(|n| d.label(n.index) == d.label(r)).count();
            2 * same <= k
        })
        .collect())
}

fn enn_removed(d: &Dataset, env: &Env, k: usize, scope: EnnScope) -> Result<Vec<bool>> {
    let rows: Vec<usize> = match scope {
        EnnScope::MajorityOnly => d.indices_of(&env.roles.majority_label),
        EnnScope::AllClasses => (0..d.n_samples()).collect(),
    };
    let mut removed = vec![false; d.n_samples()];
    for (r, fails) in rows.iter().zip(vote_fails(d, env, &rows, k)?) {
        removed[*r] = fails;
    }
    Ok(removed)
}

pub(crate) fn enn_core(d: &Dataset, env: &Env, k: usize, scope: EnnScope) -> Result<ResampleResult> {
    ResampleResult::from_kept(d, kept_without(&enn_removed(d, env, k, scope)?))
}

pub(crate) fn cnn_core(d: &Dataset, env: &Env) -> Result<ResampleResult> {
    let majority = d.indices_of(&env.roles.majority_label);
    let mut store = d.indices_of(&env.roles.minority_label);
    let mut in_store = vec![false; d.n_samples()];
    if let Some(&first) = majority.first() {
        store.push(first);
    }
    for &i in &store {
        in_store[i] = true;
    }
    loop {
        let mut added = false;
        for &j in &majority {
            if in_store[j] {
                continue;
            }
            let nearest = nearest_brute(d, d.row(j), &store, env.metric).expect("store is never empty");
            if d.label(nearest.index) != d.label(j) {
                store.push(j);
                in_store[j] = true;
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    store.sort_unstable();
    ResampleResult::from_kept(d, store)
}

pub(crate) fn oss_core(d: &Dataset, env: &Env) -> Result<ResampleResult> {
    let condensed = cnn_core(d, env)?;
    let cleaned = tomek_core(&condensed.dataset, env, TomekRemove::MajorityOnly)?;
    Ok(condensed.then(cleaned, 0))
}

pub(crate) fn ncr_core(d: &Dataset, env: &Env, k: usize) -> Result<ResampleResult> {
    let mut removed = enn_removed(d, env, k, EnnScope::MajorityOnly)?;
    let minority = d.indices_of(&env.roles.minority_label);
    let index = NeighborIndex::new(d, Restrict::All, env.metric);
    let lists = index.query_rows(&minority, k, true)?;
    for (list, fails) in lists.iter().zip(vote_fails(d, env, &minority, k)?) {
        if fails {
            for n in list {
                if d.label(n.index) == env.roles.majority_label {
                    removed[n.index] = true;
                }
            }
        }
    }
    ResampleResult::from_kept(d, kept_without(&removed))
}
