//! Data model: labelled feature matrix, class statistics, balancing ratio
//! arithmetic and the resampling result with its provenance.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense row-major feature matrix with one opaque label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    n_features: usize,
    labels: Vec<String>,
}

impl Dataset {
    pub fn new(features: Vec<f64>, n_features: usize, labels: Vec<String>) -> Result<Self> {
        if n_features == 0 {
            return Err(Error::InvalidDataset("n_features must be at least 1".into()));
        }
        if features.len() != labels.len() * n_features {
            return Err(Error::InvalidDataset(format!(
                "{} feature values do not fill {} rows of {} features",
                features.len(),
                labels.len(),
                n_features
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value at row {}, feature {}",
                pos / n_features,
                pos % n_features
            )));
        }
        Ok(Self {
            features,
            n_features,
            labels,
        })
    }

    pub fn from_rows<R, L>(rows: &[R], labels: &[L]) -> Result<Self>
    where
        R: AsRef<[f64]>,
        L: AsRef<str>,
    {
        let n_features = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rows.len() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let mut features = Vec::with_capacity(rows.len() * n_features);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n_features {
                return Err(Error::Dimension {
                    expected: n_features,
                    found: r.len(),
                });
            }
            features.extend_from_slice(r);
        }
        Self::new(
            features,
            n_features,
            labels.iter().map(|l| l.as_ref().to_owned()).collect(),
        )
    }

    pub fn empty(n_features: usize) -> Result<Self> {
        Self::new(Vec::new(), n_features, Vec::new())
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.features.chunks_exact(self.n_features)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    /// Row indices carrying `label`, ascending.
    pub fn indices_of(&self, label: &str) -> Vec<usize> {
        (0..self.n_samples()).filter(|&i| self.labels[i] == label).collect()
    }

    /// Rows in the given order. Repeated indices are allowed.
    pub fn take_subset(&self, indices: &[usize]) -> Result<Dataset> {
        let n = self.n_samples();
        let mut features = Vec::with_capacity(indices.len() * self.n_features);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= n {
                return Err(Error::Index { index: i, len: n });
            }
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i].clone());
        }
        Ok(Dataset {
            features,
            n_features: self.n_features,
            labels,
        })
    }

    pub fn class_stats(&self) -> Result<ClassStats> {
        ClassStats::compute(self)
    }

    pub(crate) fn push_row(&mut self, row: &[f64], label: &str) {
        debug_assert_eq!(row.len(), self.n_features);
        self.features.extend_from_slice(row);
        self.labels.push(label.to_owned());
    }

    /// Bitwise equality: `-0.0 != 0.0` here, unlike `==`.
    pub fn bit_eq(&self, other: &Dataset) -> bool {
        self.n_features == other.n_features
            && self.labels == other.labels
            && self.features.len() == other.features.len()
            && self
                .features
                .iter()
                .zip(&other.features)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// Content hash used to tie a fitted sampler to the data it was fitted on.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.n_features.hash(&mut h);
        for v in &self.features {
            v.to_bits().hash(&mut h);
        }
        self.labels.hash(&mut h);
        h.finish()
    }
}

/// Which label is the minority and how many rows each class has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStats {
    pub minority_label: String,
    pub majority_label: String,
    pub n_minority: usize,
    pub n_majority: usize,
}

impl ClassStats {
    /// Minority is the strictly smaller class; on equal counts the smaller
    /// label (byte order) is the minority.
    pub fn compute(d: &Dataset) -> Result<Self> {
        Self::compute_with_hint(d, None)
    }

    /// Like [`ClassStats::compute`], but on equal counts keeps the roles of
    /// `hint` when it names the same two labels. Used when a balanced
    /// intermediate dataset should keep the roles of the original input.
    pub fn compute_with_hint(d: &Dataset, hint: Option<&ClassStats>) -> Result<Self> {
        let mut by_label: BTreeMap<&str, usize> = BTreeMap::new();
        for l in d.labels() {
            *by_label.entry(l.as_str()).or_default() += 1;
        }
        if by_label.len() != 2 {
            return Err(Error::ClassCount { found: by_label.len() });
        }
        let mut counts: Vec<(&str, usize)> = by_label.into_iter().collect();
        counts.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(b.0)));
        let (mut min, mut maj) = (counts[0], counts[1]);
        if min.1 == maj.1 {
            if let Some(h) = hint {
                if h.majority_label == min.0 && h.minority_label == maj.0 {
                    std::mem::swap(&mut min, &mut maj);
                }
            }
        }
        Ok(Self {
            minority_label: min.0.to_owned(),
            majority_label: maj.0.to_owned(),
            n_minority: min.1,
            n_majority: maj.1,
        })
    }

    pub fn balancing_ratio(&self) -> f64 {
        balancing_ratio(self)
    }

    pub fn is_minority(&self, label: &str) -> bool {
        label == self.minority_label
    }
}

/// Minority count over majority count.
pub fn balancing_ratio(s: &ClassStats) -> f64 {
    s.n_minority as f64 / s.n_majority as f64
}

/// Requested minority/majority ratio after resampling.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RatioSpec {
    /// Exact balance, equivalent to a ratio of 1.
    #[default]
    Auto,
    Ratio(f64),
}

impl RatioSpec {
    pub fn new(r: f64) -> Result<Self> {
        let spec = RatioSpec::Ratio(r);
        spec.value()?;
        Ok(spec)
    }

    pub fn value(self) -> Result<f64> {
        match self {
            RatioSpec::Auto => Ok(1.0),
            RatioSpec::Ratio(r) if r > 0.0 && r <= 1.0 => Ok(r),
            RatioSpec::Ratio(r) => Err(Error::Ratio(r)),
        }
    }
}

impl FromStr for RatioSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RatioSpec::Auto);
        }
        let r: f64 = s.trim().parse().map_err(|_| Error::Ratio(f64::NAN))?;
        RatioSpec::new(r)
    }
}

impl fmt::Display for RatioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioSpec::Auto => f.write_str("auto"),
            RatioSpec::Ratio(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Under,
    Over,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Targets {
    pub n_minority: usize,
    pub n_majority: usize,
}

// Snap values within a few ulps of an integer before ceil/floor so that e.g.
// 0.7 * 10 does not floor to 6.
fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x
    }
}

/// Class counts a sampler must reach. Under-sampling moves the majority down
/// to `ceil(n_min / r)`, over-sampling moves the minority up to
/// `floor(r * n_maj)`; neither ever moves past exact balance.
pub fn resolve_targets(s: &ClassStats, ratio: RatioSpec, direction: Direction) -> Result<Targets> {
    let r = ratio.value()?;
    Ok(match direction {
        Direction::Under => {
            let want = snap(s.n_minority as f64 / r).ceil() as usize;
            Targets {
                n_minority: s.n_minority,
                n_majority: want.min(s.n_majority).max(s.n_minority),
            }
        }
        Direction::Over => {
            let want = snap(r * s.n_majority as f64).floor() as usize;
            Targets {
                n_minority: want.max(s.n_minority).min(s.n_majority),
                n_majority: s.n_majority,
            }
        }
    })
}

/// Where a generated row came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticOrigin {
    /// `seed + gap * (neighbor - seed)` over rows of the stage input. `gap`
    /// is negative for extrapolation away from the neighbor and zero for a
    /// plain copy (`neighbor == seed`).
    Interpolated {
        seed_index: usize,
        neighbor_index: usize,
        gap: f64,
    },
    /// A k-means centroid; it has no interpolation coefficient.
    Centroid { cluster: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticRow {
    /// Pipeline stage that produced the row; 0 for a single sampler.
    pub stage: usize,
    pub origin: SyntheticOrigin,
}

impl SyntheticRow {
    /// Recomputes an interpolated row from the dataset its stage consumed.
    pub fn reconstruct(&self, stage_input: &Dataset) -> Option<Vec<f64>> {
        match self.origin {
            SyntheticOrigin::Interpolated {
                seed_index,
                neighbor_index,
                gap,
            } => Some(
                stage_input
                    .row(seed_index)
                    .iter()
                    .zip(stage_input.row(neighbor_index))
                    .map(|(s, n)| s + gap * (n - s))
                    .collect(),
            ),
            SyntheticOrigin::Centroid { .. } => None,
        }
    }
}

/// Resampled dataset plus provenance. Rows `0..kept_indices.len()` are
/// copies of the input rows named in `kept_indices` (non-decreasing); the
/// remaining rows are described, in order, by `synthetic`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResampleResult {
    pub dataset: Dataset,
    pub kept_indices: Vec<usize>,
    pub synthetic: Vec<SyntheticRow>,
}

impl ResampleResult {
    pub(crate) fn from_kept(input: &Dataset, kept: Vec<usize>) -> Result<Self> {
        Ok(Self {
            dataset: input.take_subset(&kept)?,
            kept_indices: kept,
            synthetic: Vec::new(),
        })
    }

    pub(crate) fn identity(input: &Dataset) -> Self {
        Self {
            dataset: input.clone(),
            kept_indices: (0..input.n_samples()).collect(),
            synthetic: Vec::new(),
        }
    }

    pub fn n_synthetic(&self) -> usize {
        self.synthetic.len()
    }

    /// Provenance of the composition "`self`, then `next` applied to
    /// `self.dataset`". Kept rows of `next` that were synthetic in `self`
    /// carry their original provenance; new synthetics are tagged with
    /// `stage`.
    pub(crate) fn then(self, next: ResampleResult, stage: usize) -> ResampleResult {
        let n_kept = self.kept_indices.len();
        let mut kept = Vec::new();
        let mut synthetic = Vec::new();
        for &j in &next.kept_indices {
            if j < n_kept {
                kept.push(self.kept_indices[j]);
            } else {
                synthetic.push(self.synthetic[j - n_kept]);
            }
        }
        synthetic.extend(next.synthetic.into_iter().map(|mut s| {
            s.stage += stage;
            s
        }));
        ResampleResult {
            dataset: next.dataset,
            kept_indices: kept,
            synthetic,
        }
    }

    pub fn bit_eq(&self, other: &ResampleResult) -> bool {
        self.dataset.bit_eq(&other.dataset)
            && self.kept_indices == other.kept_indices
            && self.synthetic.len() == other.synthetic.len()
            && self.synthetic.iter().zip(&other.synthetic).all(|(a, b)| {
                a.stage == b.stage
                    && match (a.origin, b.origin) {
                        (
                            SyntheticOrigin::Interpolated {
                                seed_index: s1,
                                neighbor_index: n1,
                                gap: g1,
                            },
                            SyntheticOrigin::Interpolated {
                                seed_index: s2,
                                neighbor_index: n2,
                                gap: g2,
                            },
                        ) => s1 == s2 && n1 == n2 && g1.to_bits() == g2.to_bits(),
                        (x, y) => x == y,
                    }
            })
    }
}
