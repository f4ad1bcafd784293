//! Robust frequency statistics: median, median absolute deviation, the
//! per-length pattern frequency table, and the surprise score.
//!
//! MAD is the outlier yardstick of choice here because pattern frequency
//! distributions are heavy-tailed: a handful of very frequent patterns drags
//! the mean and standard deviation far above the typical frequency, while the
//! median and MAD stay put. The scale factor `b = 1.4826` makes MAD a
//! consistent estimator of the standard deviation under normality.

use alloc::vec::Vec;

use crate::pattern_tree::PatternTree;
use crate::{Error, Result};

/// Summary row for one pattern length: how many distinct patterns of that
/// length survived tree pruning and how their frequencies distribute.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrequencyStats {
    pub pattern_len: usize,
    /// Count of distinct retained patterns of this length.
    pub n_patterns: usize,
    pub mean: f64,
    pub median: f64,
    pub mad: f64,
}

/// Scale and gate parameters for MAD-based outlier detection.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MadParams {
    /// Consistency constant applied to the raw median of deviations.
    pub b: f64,
    /// Gate multiplier: a pattern is an outlier candidate when its frequency
    /// is strictly below `k * MAD` of its length class.
    pub k: f64,
}

impl Default for MadParams {
    fn default() -> Self {
        MadParams { b: 1.4826, k: 1.0 }
    }
}

impl MadParams {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.b.is_finite() && self.b > 0.0) {
            return Err(Error::InvalidStats("MAD constant b must be positive"));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::InvalidStats("MAD multiplier k must be positive"));
        }
        Ok(())
    }
}

/// Median of a non-empty sample; the midpoint of the two central values when
/// the sample size is even.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidStats("median input must be finite"));
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    Ok(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    })
}

/// Median absolute deviation: `b * median(|x_i - median(x)|)`.
pub fn mad(values: &[f64], params: &MadParams) -> Result<f64> {
    params.validate()?;
    let center = median(values)?;
    let deviations: Vec<f64> = values
        .iter()
        .map(|&v| if v >= center { v - center } else { center - v })
        .collect();
    Ok(params.b * median(&deviations)?)
}

/// Surprise of a pattern with frequency `f` against the mean frequency `mu`
/// of its length class: `1 - f / mu`. Rare patterns score close to 1;
/// above-average patterns score negative. Callers filter on a threshold,
/// this function never clamps.
pub fn surprise(f: f64, mu: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidStats("mean frequency must be positive"));
    }
    if !(f.is_finite() && f >= 0.0) {
        return Err(Error::InvalidStats("frequency must be non-negative"));
    }
    Ok(1.0 - f / mu)
}

/// Builds the pattern frequency table of a pruned tree: one row per pattern
/// length present, ordered by length.
pub fn compute_pft(tree: &PatternTree, params: &MadParams) -> Result<Vec<FrequencyStats>> {
    pft_from_lengths(tree.entries().map(|e| (e.pattern.len(), e.support)), params)
}

/// Same as [`compute_pft`] but over raw `(pattern length, support)` pairs,
/// so reference implementations without a tree share the exact code path.
pub fn pft_from_lengths(
    pairs: impl IntoIterator<Item = (usize, usize)>,
    params: &MadParams,
) -> Result<Vec<FrequencyStats>> {
    params.validate()?;
    let mut by_len: Vec<(usize, Vec<f64>)> = Vec::new();
    for (len, support) in pairs {
        match by_len.binary_search_by_key(&len, |(l, _)| *l) {
            Ok(i) => by_len[i].1.push(support as f64),
            Err(i) => by_len.insert(i, (len, alloc::vec![support as f64])),
        }
    }
    let mut rows = Vec::with_capacity(by_len.len());
    for (len, freqs) in by_len {
        let mean = freqs.iter().sum::<f64>() / freqs.len() as f64;
        rows.push(FrequencyStats {
            pattern_len: len,
            n_patterns: freqs.len(),
            mean,
            median: median(&freqs)?,
            mad: mad(&freqs, params)?,
        });
    }
    Ok(rows)
}
