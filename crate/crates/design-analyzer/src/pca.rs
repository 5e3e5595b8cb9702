//! Principal component analysis over the metric matrix, plus the two
//! decision rules built on top of it:
//!
//! - over classes-by-measures, the first component's largest-magnitude
//!   weight names the most significant coupling measure;
//! - over measures-by-classes, classes weighted strictly negative in all
//!   of the top components are recommended as integration points, falling
//!   back to the lowest-coupling classes when no class qualifies.
//!
//! Components are sorted by descending eigenvalue and sign-normalized so
//! the largest-magnitude weight of each component is positive, which makes
//! the output deterministic and comparable across runs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{covariance, eigen_symmetric, mean_center, CovarianceMatrix, LinalgError};
use crate::metrics::MetricsMatrix;
use crate::scalar::Scalar;

/// Eigenvalues below this fraction of the trace are treated as zero when
/// variance ratios are computed; the raw values stay visible in the
/// result.
const EIGENVALUE_CLAMP_REL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PcaError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("total variance is zero; principal components carry no information")]
    ZeroTrace,
    #[error("requested {k} components but only {available} are available")]
    KTooLarge { k: usize, available: usize },
}

/// Result of a principal component analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaResult<T> {
    /// Descending; raw values, including near-zero noise.
    pub eigenvalues: Vec<T>,
    /// Paired with `eigenvalues`; each vector is sign-normalized.
    pub eigenvectors: Vec<Vec<T>>,
    /// One label per vector component (the covariance column labels).
    pub labels: Vec<String>,
    /// Cumulative variance ratios per retained-dimension count; empty when
    /// the total variance is zero and ratios are undefined.
    pub variance_retained: Vec<T>,
}

/// Cumulative variance ratios for descending eigenvalues. Values smaller
/// in magnitude than 1e-9 of the trace are clamped to zero before the
/// sums, so the final entry is exactly one when any variance remains.
pub fn variance_retained<T: Scalar>(eigenvalues: &[T]) -> Result<Vec<T>, PcaError> {
    if eigenvalues.is_empty() {
        return Err(PcaError::ZeroTrace);
    }
    let trace = eigenvalues.iter().fold(T::zero(), |acc, &v| acc + v);
    if trace <= T::zero() {
        return Err(PcaError::ZeroTrace);
    }
    let clamp = T::from_f64(EIGENVALUE_CLAMP_REL) * trace;
    let clamped: Vec<T> = eigenvalues
        .iter()
        .map(|&v| if v.abs() < clamp { T::zero() } else { v })
        .collect();
    let total = clamped.iter().fold(T::zero(), |acc, &v| acc + v);
    if total <= T::zero() {
        return Err(PcaError::ZeroTrace);
    }
    let mut out = Vec::with_capacity(clamped.len());
    let mut cumulative = T::zero();
    for v in clamped {
        cumulative = cumulative + v;
        out.push(cumulative / total);
    }
    Ok(out)
}

/// Flip a vector so its largest-magnitude component is positive. Ties go
/// to the lowest index. Idempotent; the zero vector is left alone.
pub fn sign_normalize<T: Scalar>(vector: &mut [T]) {
    let mut best = 0usize;
    for (i, v) in vector.iter().enumerate() {
        if v.abs() > vector[best].abs() {
            best = i;
        }
    }
    if let Some(&pivot) = vector.get(best) {
        if pivot < T::zero() {
            for v in vector.iter_mut() {
                *v = -*v;
            }
        }
    }
}

/// Decompose a covariance matrix into sorted, sign-normalized principal
/// components. A zero-trace input still yields the eigenpairs, with an
/// empty variance table marking the ratios as undefined.
pub fn principal_components<T: Scalar>(
    r: &CovarianceMatrix<T>,
) -> Result<PcaResult<T>, PcaError> {
    let pairs = eigen_symmetric(&r.values)?;
    let mut order: Vec<usize> = (0..pairs.values.len()).collect();
    // Stable descending sort; exact ties keep the iteration order.
    order.sort_by(|&a, &b| {
        pairs.values[b]
            .partial_cmp(&pairs.values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<T> = order.iter().map(|&i| pairs.values[i]).collect();
    let eigenvectors: Vec<Vec<T>> = order
        .iter()
        .map(|&i| {
            let mut v = pairs.vectors[i].clone();
            sign_normalize(&mut v);
            v
        })
        .collect();
    let variance = match variance_retained(&eigenvalues) {
        Ok(v) => v,
        Err(PcaError::ZeroTrace) => Vec::new(),
        Err(e) => return Err(e),
    };
    Ok(PcaResult {
        eigenvalues,
        eigenvectors,
        labels: r.labels.clone(),
        variance_retained: variance,
    })
}

/// Center, take covariance, decompose: the full analysis for a metric
/// matrix in either orientation. Covariance labels come from the matrix's
/// column labels.
pub fn pca_from_matrix<T: Scalar>(matrix: &MetricsMatrix<T>) -> Result<PcaResult<T>, PcaError> {
    let centered = mean_center(&matrix.values)?;
    let r = covariance(&centered, matrix.col_labels.clone())?;
    principal_components(&r)
}

/// The measure singled out by the first principal component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSelection {
    pub measure: String,
    /// Labels whose first-component weight magnitude exactly ties the
    /// winner; non-empty ties deserve a warning upstream.
    pub tied_with: Vec<String>,
}

/// Pick the measure with the largest absolute weight in the first
/// component of a classes-by-measures analysis. Ties break toward the
/// lowest column index.
pub fn select_significant_measure<T: Scalar>(
    pca: &PcaResult<T>,
) -> Result<MeasureSelection, PcaError> {
    if pca.eigenvectors.is_empty() || pca.variance_retained.is_empty() {
        return Err(PcaError::ZeroTrace);
    }
    let first = &pca.eigenvectors[0];
    let mut best = 0usize;
    for (i, w) in first.iter().enumerate() {
        if w.abs() > first[best].abs() {
            best = i;
        }
    }
    let tied_with = first
        .iter()
        .enumerate()
        .filter(|(i, w)| *i != best && w.abs() == first[best].abs())
        .map(|(i, _)| pca.labels[i].clone())
        .collect();
    Ok(MeasureSelection {
        measure: pca.labels[best].clone(),
        tied_with,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecommendationRule {
    /// Strictly negative weight in every one of the top components.
    NegativeInAllComponents,
    /// No class qualified; the lowest-coupling classes are offered
    /// instead.
    FallbackLowCoupling,
}

impl std::fmt::Display for RecommendationRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RecommendationRule::NegativeInAllComponents => f.write_str("negative-in-all-components"),
            RecommendationRule::FallbackLowCoupling => f.write_str("fallback:low-coupling"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recommendation {
    pub rule: RecommendationRule,
    /// Recommended class labels, in label order.
    pub classes: Vec<String>,
    /// Number of components the negativity rule examined.
    pub components_used: usize,
}

/// Recommend integration classes from a measures-by-classes analysis:
/// classes strictly negative in all `k` top sign-normalized components.
/// When none qualifies, the classes with minimum coupling are returned
/// under the fallback rule.
pub fn recommend_integration_class<T: Scalar>(
    pca: &PcaResult<T>,
    k: usize,
    coupling_by_class: &BTreeMap<String, u64>,
) -> Result<Recommendation, PcaError> {
    let available = pca.eigenvectors.len();
    if k == 0 || k > available {
        return Err(PcaError::KTooLarge { k, available });
    }
    let negative: Vec<String> = pca
        .labels
        .iter()
        .enumerate()
        .filter(|(j, _)| {
            pca.eigenvectors[..k]
                .iter()
                .all(|component| component[*j] < T::zero())
        })
        .map(|(_, label)| label.clone())
        .collect();
    if !negative.is_empty() {
        return Ok(Recommendation {
            rule: RecommendationRule::NegativeInAllComponents,
            classes: negative,
            components_used: k,
        });
    }
    let min = pca
        .labels
        .iter()
        .filter_map(|label| coupling_by_class.get(label))
        .min()
        .copied();
    let classes = match min {
        Some(min) => pca
            .labels
            .iter()
            .filter(|label| coupling_by_class.get(*label) == Some(&min))
            .cloned()
            .collect(),
        None => Vec::new(),
    };
    Ok(Recommendation {
        rule: RecommendationRule::FallbackLowCoupling,
        classes,
        components_used: k,
    })
}
