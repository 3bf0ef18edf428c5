//! Resampling for imbalanced binary classification data.
//!
//! Every sampler follows the same two-phase contract ([`Sampler::fit`] then
//! [`FittedSampler::sample`], or [`Sampler::fit_sample`]) and is a pure
//! function of the dataset, its configuration and a 64-bit seed.
//!
//! ```
//! use rebalance::{over_sampling, synthgen, RatioSpec};
//!
//! let data = synthgen::make_imbalanced(&synthgen::ImbalancedConfig::new(1000, 5, [0.1, 0.9]), 7)?;
//! let cfg = over_sampling::SmoteConfig { ratio: RatioSpec::Auto, ..Default::default() };
//! let out = over_sampling::smote(&data, &cfg, 42)?;
//! let stats = out.dataset.class_stats()?;
//! assert_eq!(stats.n_minority, stats.n_majority);
//! # Ok::<(), rebalance::Error>(())
//! ```

pub mod cli;
pub mod combine;
pub mod dataset;
pub mod ensemble;
pub mod error;
pub mod io;
pub mod learners;
pub mod neighbors;
pub mod over_sampling;
pub mod pipeline;
pub mod rng;
pub mod sampler;
pub mod synthgen;
pub mod under_sampling;

pub use dataset::{
    balancing_ratio, resolve_targets, ClassStats, Dataset, Direction, RatioSpec, ResampleResult, SyntheticOrigin,
    SyntheticRow, Targets,
};
pub use error::{Error, Result};
pub use pipeline::{fit_sample_chain, SamplerChain};
pub use sampler::{FittedSampler, Method, Sampler};
