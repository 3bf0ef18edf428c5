//! SMOTE followed by a cleaning pass over the over-sampled data. Tomek links
//! drop both members of each link and ENN edits every class, so synthetic
//! rows can be cleaned away.

use crate::dataset::{Dataset, ResampleResult};
use crate::error::Result;
use crate::learners::svm::LinearSvmModel;
use crate::over_sampling::{smote_core, SmoteConfig};
use crate::rng::SeededRng;
use crate::sampler::{Env, Method, Sampler};
use crate::under_sampling::{enn_core, tomek_core, EnnScope, TomekRemove};

pub fn smote_tomek(d: &Dataset, cfg: &SmoteConfig, seed: u64) -> Result<ResampleResult> {
    Sampler::new(Method::SmoteTomek(*cfg)).fit_sample(d, seed)
}

pub fn smote_enn(d: &Dataset, cfg: &SmoteConfig, k: usize, seed: u64) -> Result<ResampleResult> {
    Sampler::new(Method::SmoteEnn { smote: *cfg, k }).fit_sample(d, seed)
}

pub(crate) fn smote_tomek_core(
    d: &Dataset,
    env: &Env,
    cfg: &SmoteConfig,
    svm: Option<&LinearSvmModel>,
    rng: &mut SeededRng,
) -> Result<ResampleResult> {
    let over = smote_core(d, env, cfg, svm, rng)?;
    let clean = tomek_core(&over.dataset, &stage_env(&over, env)?, TomekRemove::Both)?;
    Ok(over.then(clean, 0))
}

pub(crate) fn smote_enn_core(
    d: &Dataset,
    env: &Env,
    cfg: &SmoteConfig,
    k: usize,
    svm: Option<&LinearSvmModel>,
    rng: &mut SeededRng,
) -> Result<ResampleResult> {
    let over = smote_core(d, env, cfg, svm, rng)?;
    let clean = enn_core(&over.dataset, &stage_env(&over, env)?, k, EnnScope::AllClasses)?;
    Ok(over.then(clean, 0))
}

fn stage_env(over: &ResampleResult, env: &Env) -> Result<Env> {
    Env::new(&over.dataset, Some(&env.roles), env.metric)
}
