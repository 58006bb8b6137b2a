//! Aggregates per-node and per-word measurements into the 11-attribute
//! feature vector of a subtext, and measures cross-subtext variability with
//! the coefficient of variation.

use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::measures::{NodeMeasurements, WordIntermittency};
use crate::stats;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureError {
    /// A network below 2 nodes has no topology to summarize.
    TooFewNodes { nodes: usize },
    /// No word passed the minimum-frequency filter.
    NoIntermittentWords,
    /// Variability needs at least 2 values.
    TooFewValues { len: usize },
}

impl fmt::Display for FeatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewNodes { nodes } => {
                write!(f, "feature vector needs a network of >= 2 nodes, got {nodes}")
            }
            Self::NoIntermittentWords => {
                write!(f, "no word met the minimum frequency for intermittency")
            }
            Self::TooFewValues { len } => {
                write!(f, "coefficient of variation needs >= 2 values, got {len}")
            }
        }
    }
}

impl core::error::Error for FeatureError {}

/// Column names of the 11 attributes, in canonical order.
pub const ATTRIBUTE_NAMES: [&str; 11] = [
    "mean_alpha2",
    "mean_alpha3",
    "mean_kn",
    "mean_b",
    "mean_c",
    "mean_i",
    "std_i",
    "skew_i",
    "mean_l",
    "std_l",
    "skew_l",
];

/// The 11 attributes describing one subtext: means of the per-node
/// measurements (accessibility at h=2 and h=3, neighbor degree, betweenness,
/// clustering), and mean / standard deviation / skewness of the per-word
/// intermittency and per-node path-length distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub mean_alpha2: f64,
    pub mean_alpha3: f64,
    pub mean_neighbor_degree: f64,
    pub mean_betweenness: f64,
    pub mean_clustering: f64,
    pub mean_intermittency: f64,
    pub std_intermittency: f64,
    pub skew_intermittency: f64,
    pub mean_path_length: f64,
    pub std_path_length: f64,
    pub skew_path_length: f64,
}

impl FeatureVector {
    pub fn as_array(&self) -> [f64; 11] {
        [
            self.mean_alpha2,
            self.mean_alpha3,
            self.mean_neighbor_degree,
            self.mean_betweenness,
            self.mean_clustering,
            self.mean_intermittency,
            self.std_intermittency,
            self.skew_intermittency,
            self.mean_path_length,
            self.std_path_length,
            self.skew_path_length,
        ]
    }

    pub fn from_array(values: [f64; 11]) -> Self {
        Self {
            mean_alpha2: values[0],
            mean_alpha3: values[1],
            mean_neighbor_degree: values[2],
            mean_betweenness: values[3],
            mean_clustering: values[4],
            mean_intermittency: values[5],
            std_intermittency: values[6],
            skew_intermittency: values[7],
            mean_path_length: values[8],
            std_path_length: values[9],
            skew_path_length: values[10],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }
}

/// Builds the feature vector of one subtext from its per-node measurements
/// and its per-word intermittency set.
///
/// Means of alpha, k_n, B (zeros included), and C run over all nodes; the
/// path-length statistics run over nodes with a defined l; the intermittency
/// statistics run over the words that met `f_min`. Skewness of a degenerate
/// (all-equal) distribution is 0.
pub fn feature_vector(
    measurements: &NodeMeasurements,
    intermittencies: &[(alloc::string::String, WordIntermittency)],
) -> Result<FeatureVector, FeatureError> {
    let n = measurements.node_count();
    if n < 2 {
        return Err(FeatureError::TooFewNodes { nodes: n });
    }
    if intermittencies.is_empty() {
        return Err(FeatureError::NoIntermittentWords);
    }

    let lengths: Vec<f64> =
        measurements.avg_path_length.iter().filter_map(|l| *l).collect();
    if lengths.is_empty() {
        // Cannot happen for token-built networks (no isolated nodes), but an
        // explicit edge-list graph may be totally disconnected.
        return Err(FeatureError::TooFewNodes { nodes: 0 });
    }
    let intermittency_values: Vec<f64> =
        intermittencies.iter().map(|(_, wi)| wi.intermittency).collect();

    Ok(FeatureVector {
        mean_alpha2: stats::mean(&measurements.accessibility2),
        mean_alpha3: stats::mean(&measurements.accessibility3),
        mean_neighbor_degree: stats::mean(&measurements.avg_neighbor_degree),
        mean_betweenness: stats::mean(&measurements.betweenness),
        mean_clustering: stats::mean(&measurements.clustering),
        mean_intermittency: stats::mean(&intermittency_values),
        std_intermittency: stats::population_std(&intermittency_values),
        skew_intermittency: stats::skewness(&intermittency_values),
        mean_path_length: stats::mean(&lengths),
        std_path_length: stats::population_std(&lengths),
        skew_path_length: stats::skewness(&lengths),
    })
}

/// Coefficient of variation sqrt(<X^2>/<X>^2 - 1), the cross-subtext
/// stability measure. Equals population std over |mean|.
///
/// Returns `Ok(None)` (undefined, flagged) when the mean is zero with
/// non-constant values; all-equal values give exactly 0.
pub fn coefficient_of_variation(values: &[f64]) -> Result<Option<f64>, FeatureError> {
    if values.len() < 2 {
        return Err(FeatureError::TooFewValues { len: values.len() });
    }
    if values.iter().all(|v| *v == values[0]) {
        return Ok(Some(0.0));
    }
    let mean = stats::mean(values);
    if mean == 0.0 {
        log::warn!("coefficient of variation undefined: zero mean");
        return Ok(None);
    }
    let mean_sq = values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64;
    let ratio = mean_sq / (mean * mean) - 1.0;
    Ok(Some(math::sqrt(if ratio > 0.0 { ratio } else { 0.0 })))
}

/// Per-attribute coefficient of variation across the subtext feature
/// vectors of one book. `None` entries are the flagged undefined cells.
pub fn book_variability(
    vectors: &[FeatureVector],
) -> Result<[Option<f64>; 11], FeatureError> {
    if vectors.len() < 2 {
        return Err(FeatureError::TooFewValues { len: vectors.len() });
    }
    let mut out = [None; 11];
    for (attr, slot) in out.iter_mut().enumerate() {
        let column: Vec<f64> = vectors.iter().map(|v| v.as_array()[attr]).collect();
        *slot = coefficient_of_variation(&column)?;
    }
    Ok(out)
}
