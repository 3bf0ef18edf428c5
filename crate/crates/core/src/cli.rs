//! Command-line front end. Exit codes: 0 success, 1 data or sampler error
//! (one line on stderr), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{Dataset, RatioSpec};
use crate::ensemble::{balance_cascade, easy_ensemble, CascadeClassifier, CascadeConfig};
use crate::error::{Error, Result};
use crate::io::{read_csv, write_csv};
use crate::learners::kmeans::KMeansConfig;
use crate::learners::svm::SvmConfig;
use crate::over_sampling::{SmoteConfig, SmoteKind};
use crate::sampler::{Method, Sampler};
use crate::synthgen::{make_imbalanced, ImbalancedConfig};
use crate::under_sampling::{EnnScope, NearMissVariant, TomekRemove};

#[derive(Debug, Parser)]
#[command(name = "rebalance", version, about = "Resample imbalanced binary datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply one sampler to a CSV dataset.
    Resample(ResampleArgs),
    /// Build an ensemble of balanced subsets.
    Ensemble(EnsembleArgs),
    /// Write a synthetic two-class Gaussian dataset.
    Generate(GenerateArgs),
    /// Print class counts and the balancing ratio.
    Stats {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    RandomUnder,
    ClusterCentroids,
    Nearmiss1,
    Nearmiss2,
    Nearmiss3,
    Iht,
    Tomek,
    Enn,
    Cnn,
    Oss,
    Ncr,
    RandomOver,
    Smote,
    SmoteBorderline1,
    SmoteBorderline2,
    SmoteSvm,
    SmoteTomek,
    SmoteEnn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RemoveArg {
    Majority,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Majority,
    All,
}

#[derive(Debug, Args)]
struct ResampleArgs {
    #[arg(long, value_enum)]
    method: MethodName,
    /// `auto` or a target minority/majority ratio in (0, 1].
    #[arg(long, default_value = "auto", value_parser = parse_ratio)]
    ratio: RatioSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    #[command(flatten)]
    params: MethodParams,
}

/// Method knobs; each method reads the ones it understands.
#[derive(Debug, Args, Clone)]
struct MethodParams {
    /// Neighbors for NearMiss (default 3), IHT (5), ENN/NCR and the ENN
    /// stage of smote-enn (3).
    #[arg(long)]
    k: Option<usize>,
    /// NearMiss-3 shortlist size.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// SMOTE interpolation neighbors.
    #[arg(long, default_value_t = 5)]
    k_neighbors: usize,
    /// SMOTE danger-detection neighbors.
    #[arg(long, default_value_t = 10)]
    m_neighbors: usize,
    #[arg(long, value_enum, default_value = "majority")]
    remove: RemoveArg,
    #[arg(long, value_enum, default_value = "majority")]
    scope: ScopeArg,
    #[arg(long)]
    with_replacement: bool,
    #[arg(long, default_value_t = SvmConfig::default().lambda)]
    svm_lambda: f64,
    #[arg(long, default_value_t = SvmConfig::default().epochs)]
    svm_epochs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleKind {
    Easy,
    Cascade,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifierArg {
    Knn,
    Svm,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    #[arg(long, value_enum)]
    method: EnsembleKind,
    #[arg(long, default_value_t = 10)]
    n_subsets: usize,
    #[arg(long, default_value_t = 10)]
    max_iter: usize,
    #[arg(long, value_enum, default_value = "knn")]
    classifier: ClassifierArg,
    /// Neighbors of the cascade's k-NN classifier.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value = "auto", value_parser = parse_ratio)]
    ratio: RatioSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    features: usize,
    /// Minority and majority shares, e.g. `0.1,0.9`.
    #[arg(long, value_parser = parse_weights)]
    weights: [f64; 2],
    #[arg(long, default_value_t = 2.0)]
    class_sep: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

fn parse_weights(s: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two comma-separated weights, got '{s}'"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad weight '{t}': {e}"));
    Ok([num(a)?, num(b)?])
}

fn parse_ratio(s: &str) -> std::result::Result<RatioSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl MethodName {
    pub fn all() -> &'static [MethodName] {
        MethodName::value_variants()
    }

    /// Inverse of [`MethodName::cli_name`].
    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::from_str(name, false).ok()
    }

    pub fn cli_name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_owned()
    }
}

/// The sampler a `resample` invocation runs, with every knob at its default.
pub fn default_sampler(name: MethodName, ratio: RatioSpec) -> Sampler {
    build_sampler(name, ratio, &MethodParams::default_values())
}

impl MethodParams {
    fn default_values() -> Self {
        Self {
            k: None,
            m: 3,
            k_neighbors: 5,
            m_neighbors: 10,
            remove: RemoveArg::Majority,
            scope: ScopeArg::Majority,
            with_replacement: false,
            svm_lambda: SvmConfig::default().lambda,
            svm_epochs: SvmConfig::default().epochs,
        }
    }
}

fn build_sampler(name: MethodName, ratio: RatioSpec, p: &MethodParams) -> Sampler {
    let smote = |kind| SmoteConfig {
        kind,
        k_neighbors: p.k_neighbors,
        m_neighbors: p.m_neighbors,
        ratio,
        svm: SvmConfig {
            lambda: p.svm_lambda,
            epochs: p.svm_epochs,
        },
    };
    let near_miss = |variant| Method::NearMiss {
        variant,
        ratio,
        k: p.k.unwrap_or(3),
        m: p.m,
    };
    let method = match name {
        MethodName::RandomUnder => Method::RandomUnder {
            ratio,
            with_replacement: p.with_replacement,
        },
        MethodName::ClusterCentroids => Method::ClusterCentroids {
            ratio,
            kmeans: KMeansConfig::default(),
        },
        MethodName::Nearmiss1 => near_miss(NearMissVariant::One),
        MethodName::Nearmiss2 => near_miss(NearMissVariant::Two),
        MethodName::Nearmiss3 => near_miss(NearMissVariant::Three),
        MethodName::Iht => Method::InstanceHardness {
            ratio,
            k: p.k.unwrap_or(5),
        },
        MethodName::Tomek => Method::TomekLinks {
            remove: match p.remove {
                RemoveArg::Majority => TomekRemove::MajorityOnly,
                RemoveArg::Both => TomekRemove::Both,
            },
        },
        MethodName::Enn => Method::EditedNn {
            k: p.k.unwrap_or(3),
            scope: match p.scope {
                ScopeArg::Majority => EnnScope::MajorityOnly,
                ScopeArg::All => EnnScope::AllClasses,
            },
        },
        MethodName::Cnn => Method::CondensedNn,
        MethodName::Oss => Method::OneSidedSelection,
        MethodName::Ncr => Method::NeighbourhoodCleaning { k: p.k.unwrap_or(3) },
        MethodName::RandomOver => Method::RandomOver { ratio },
        MethodName::Smote => Method::Smote(smote(SmoteKind::Regular)),
        MethodName::SmoteBorderline1 => Method::Smote(smote(SmoteKind::Borderline1)),
        MethodName::SmoteBorderline2 => Method::Smote(smote(SmoteKind::Borderline2)),
        MethodName::SmoteSvm => Method::Smote(smote(SmoteKind::Svm)),
        MethodName::SmoteTomek => Method::SmoteTomek(smote(SmoteKind::Regular)),
        MethodName::SmoteEnn => Method::SmoteEnn {
            smote: smote(SmoteKind::Regular),
            k: p.k.unwrap_or(3),
        },
    };
    Sampler::new(method)
}

/// `minority=<label> n_min=<k> n_maj=<k> ratio=<r>`.
pub fn stats_line(d: &Dataset) -> Result<String> {
    let s = d.class_stats()?;
    Ok(format!(
        "minority={} n_min={} n_maj={} ratio={}",
        s.minority_label,
        s.n_minority,
        s.n_majority,
        s.balancing_ratio()
    ))
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Resample(a) => {
            let d = read_csv(&a.input)?;
            let out = build_sampler(a.method, a.ratio, &a.params).fit_sample(&d, a.seed)?;
            write_csv(&out.dataset, &a.output)
        }
        Command::Ensemble(a) => {
            let d = read_csv(&a.input)?;
            let sets = match a.method {
                EnsembleKind::Easy => easy_ensemble(&d, a.n_subsets, a.ratio, a.seed)?,
                EnsembleKind::Cascade => {
                    let classifier = match a.classifier {
                        ClassifierArg::Knn => CascadeClassifier::Knn { k: a.k },
                        ClassifierArg::Svm => CascadeClassifier::LinearSvm(SvmConfig::default()),
                    };
                    balance_cascade(
                        &d,
                        &CascadeConfig {
                            max_iter: a.max_iter,
                            classifier,
                            ratio: a.ratio,
                        },
                        a.seed,
                    )?
                }
            };
            fs::create_dir_all(&a.out_dir)?;
            for (i, s) in sets.subsets.iter().enumerate() {
                write_csv(&s.dataset, a.out_dir.join(format!("subset_{i:03}.csv")))?;
            }
            Ok(())
        }
        Command::Generate(a) => {
            let cfg = ImbalancedConfig {
                n_samples: a.n,
                n_features: a.features,
                weights: a.weights,
                class_sep: a.class_sep,
                sigma: a.sigma,
            };
            write_csv(&make_imbalanced(&cfg, a.seed)?, &a.output)
        }
        Command::Stats { input } => {
            println!("{}", stats_line(&read_csv(&input)?)?);
            Ok(())
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
