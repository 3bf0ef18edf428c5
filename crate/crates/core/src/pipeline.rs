//! Left-to-right composition of samplers.
//!
//! Stage `i` is fitted with `derive_seed(master, i)`. When an intermediate
//! dataset ends up exactly balanced, class roles are carried over from the
//! previous stage instead of being re-derived from label order.

use crate::dataset::{Dataset, ResampleResult};
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::sampler::{FittedSampler, Sampler};

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerChain {
    stages: Vec<Sampler>,
}

impl SamplerChain {
    pub fn new(stages: Vec<Sampler>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Shape("a sampler chain needs at least one stage".into()));
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[Sampler] {
        &self.stages
    }

    /// Runs every stage but the last and fits the last one on the
    /// intermediate output.
    pub fn fit(&self, d: &Dataset, seed: u64) -> Result<FittedChain> {
        let last = self.stages.len() - 1;
        let mut prefix: Option<ResampleResult> = None;
        let mut hint = None;
        for (i, stage) in self.stages[..last].iter().enumerate() {
            let input = prefix.as_ref().map_or(d, |p| &p.dataset);
            let out = stage
                .fit_with_hint(input, derive_seed(seed, i as u64), hint.as_ref())
                .and_then(|f| {
                    hint = Some(f.class_stats().clone());
                    f.sample(input)
                })
                .map_err(|e| stage_error(i, e))?;
            prefix = Some(match prefix {
                Some(p) => p.then(out, i),
                None => out,
            });
        }
        let input = prefix.as_ref().map_or(d, |p| &p.dataset);
        let fitted_last = self.stages[last]
            .fit_with_hint(input, derive_seed(seed, last as u64), hint.as_ref())
            .map_err(|e| stage_error(last, e))?;
        Ok(FittedChain {
            prefix,
            last: fitted_last,
            fingerprint: d.fingerprint(),
            last_index: last,
        })
    }

    pub fn fit_sample(&self, d: &Dataset, seed: u64) -> Result<ResampleResult> {
        self.fit(d, seed)?.sample(d)
    }
}

fn stage_error(stage: usize, e: Error) -> Error {
    Error::Stage {
        stage,
        source: Box::new(e),
    }
}

#[derive(Debug, Clone)]
pub struct FittedChain {
    prefix: Option<ResampleResult>,
    last: FittedSampler,
    fingerprint: u64,
    last_index: usize,
}

impl FittedChain {
    pub fn sample(&self, d: &Dataset) -> Result<ResampleResult> {
        if d.fingerprint() != self.fingerprint {
            return Err(Error::DatasetMismatch);
        }
        let input = self.prefix.as_ref().map_or(d, |p| &p.dataset);
        let out = self.last.sample(input).map_err(|e| stage_error(self.last_index, e))?;
        Ok(match &self.prefix {
            Some(p) => p.clone().then(out, self.last_index),
            None => out,
        })
    }
}

/// One-shot form of [`SamplerChain::fit`] + [`FittedChain::sample`].
pub fn fit_sample_chain(chain: &SamplerChain, d: &Dataset, seed: u64) -> Result<ResampleResult> {
    chain.fit_sample(d, seed)
}
