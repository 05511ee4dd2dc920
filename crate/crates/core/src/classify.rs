//! Reconstruction-residual classification over a column dictionary.
//!
//! The dictionary stacks vectorized training images column by column,
//! grouped by class. A test sample's sparse code is scored per class by
//! reconstructing the sample from that class's columns alone and measuring
//! `r_i = ‖y − A·δ_i(x̂)‖₂`, where `δ_i` zeroes every coefficient outside
//! class `i`. The predicted class minimizes the residual.

use nalgebra::{DMatrix, DVector};
use std::ops::Range;

use crate::error::{Error, Result};

/// 1-based class identifier; the classes of an n-column dictionary are
/// exactly `1..=k`.
pub type ClassId = usize;

/// Column-stacked training matrix with per-column class labels.
///
/// Columns are unit ℓ2-normalized at construction; the original norms are
/// kept for traceability. Classes occupy contiguous, ascending column spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    matrix: DMatrix<f64>,
    labels: Vec<ClassId>,
    class_ranges: Vec<Range<usize>>,
    column_norms: Vec<f64>,
}

impl Dictionary {
    /// Builds a dictionary from a column matrix and per-column labels.
    ///
    /// Labels must be grouped contiguously in ascending order and cover
    /// `1..=k` with no empty class. Every column is normalized to unit ℓ2
    /// norm; zero columns are rejected.
    pub fn from_columns(mut matrix: DMatrix<f64>, labels: Vec<ClassId>) -> Result<Self> {
        let (m, n) = matrix.shape();
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "dictionary matrix must be nonempty".into(),
            ));
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                n
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "dictionary matrix contains non-finite entries".into(),
            ));
        }

        let mut class_ranges: Vec<Range<usize>> = Vec::new();
        for (col, &label) in labels.iter().enumerate() {
            let expected_next = class_ranges.len() + 1;
            if label == expected_next {
                class_ranges.push(col..col + 1);
            } else if label == class_ranges.len() && label >= 1 {
                class_ranges.last_mut().unwrap().end = col + 1;
            } else {
                return Err(Error::InvalidInput(format!(
                    "labels must be contiguous ascending class ids starting at 1; \
                     column {col} has label {label}"
                )));
            }
        }

        let mut column_norms = Vec::with_capacity(n);
        for j in 0..n {
            let norm = matrix.column(j).norm();
            if norm == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "dictionary column {j} has zero norm and cannot be normalized"
                )));
            }
            matrix.column_mut(j) /= norm;
            column_norms.push(norm);
        }

        Ok(Self {
            matrix,
            labels,
            class_ranges,
            column_norms,
        })
    }

    /// The normalized m×n column matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Signal dimension (rows).
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Number of columns (training samples).
    pub fn num_columns(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn num_classes(&self) -> usize {
        self.class_ranges.len()
    }

    pub fn labels(&self) -> &[ClassId] {
        &self.labels
    }

    /// Original ℓ2 norms of the columns before normalization.
    pub fn column_norms(&self) -> &[f64] {
        &self.column_norms
    }

    pub fn class_ranges(&self) -> &[Range<usize>] {
        &self.class_ranges
    }

    /// Column span of `class`, or an error for an unknown id.
    pub fn class_range(&self, class: ClassId) -> Result<Range<usize>> {
        if class == 0 || class > self.class_ranges.len() {
            return Err(Error::InvalidInput(format!(
                "unknown class id {class}; dictionary has classes 1..={}",
                self.class_ranges.len()
            )));
        }
        Ok(self.class_ranges[class - 1].clone())
    }

    /// Applies a linear projection to every column and renormalizes, so the
    /// unit-norm invariant holds in the projected space too.
    pub fn project(&self, op: &crate::project::ProjectionOp) -> Result<Dictionary> {
        if op.source_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "projection expects source dimension {}, dictionary has {}",
                op.source_dim(),
                self.dim()
            )));
        }
        let projected = op.matrix() * &self.matrix;
        Dictionary::from_columns(projected, self.labels.clone())
    }
}

/// Outcome of classifying one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    /// Argmin of `residuals`, ties broken by the smallest class id.
    pub predicted_class: ClassId,
    /// Per-class reconstruction residuals `r_i = ‖y − A·δ_i(x̂)‖₂`.
    pub residuals: Vec<f64>,
    /// The code that was scored.
    pub code: DVector<f64>,
}

/// Zeroes every entry of `x` outside the columns of `class`.
pub fn class_mask(x: &DVector<f64>, class: ClassId, dict: &Dictionary) -> Result<DVector<f64>> {
    if x.len() != dict.num_columns() {
        return Err(Error::DimensionMismatch(format!(
            "code length {} vs {} dictionary columns",
            x.len(),
            dict.num_columns()
        )));
    }
    let range = dict.class_range(class)?;
    let mut out = DVector::zeros(x.len());
    for j in range {
        out[j] = x[j];
    }
    Ok(out)
}

/// Scores `x_hat` against every class of the dictionary and picks the class
/// with the smallest reconstruction residual.
pub fn classify(
    y: &DVector<f64>,
    x_hat: &DVector<f64>,
    dict: &Dictionary,
) -> Result<ClassificationResult> {
    if y.len() != dict.dim() {
        return Err(Error::DimensionMismatch(format!(
            "sample length {} vs dictionary dimension {}",
            y.len(),
            dict.dim()
        )));
    }
    if x_hat.len() != dict.num_columns() {
        return Err(Error::DimensionMismatch(format!(
            "code length {} vs {} dictionary columns",
            x_hat.len(),
            dict.num_columns()
        )));
    }

    let mut residuals = Vec::with_capacity(dict.num_classes());
    for range in dict.class_ranges() {
        let cols = dict.matrix().columns(range.start, range.len());
        let coeffs = x_hat.rows(range.start, range.len());
        let recon = cols * coeffs;
        residuals.push((y - recon).norm());
    }

    let mut predicted_class = 1;
    for (i, r) in residuals.iter().enumerate() {
        if *r < residuals[predicted_class - 1] {
            predicted_class = i + 1;
        }
    }

    Ok(ClassificationResult {
        predicted_class,
        residuals,
        code: x_hat.clone(),
    })
}

/// Percentage of predictions matching the ground truth, in `[0, 100]`.
pub fn recognition_rate(predictions: &[ClassId], truth: &[ClassId]) -> Result<f64> {
    if predictions.is_empty() || truth.is_empty() {
        return Err(Error::InvalidInput(
            "recognition rate needs at least one sample".into(),
        ));
    }
    if predictions.len() != truth.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} predictions vs {} truth labels",
            predictions.len(),
            truth.len()
        )));
    }
    let matches = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    Ok(100.0 * matches as f64 / predictions.len() as f64)
}
