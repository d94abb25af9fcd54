//! Fuzzy pairwise comparison matrices, criterion weight derivation and the
//! consistency-ratio gate.
//!
//! Preferences between two criteria are expressed on a fuzzy scale in
//! `[0, 1]`: `r_ij` is the degree to which criterion `i` is preferred over
//! criterion `j`, with `r_ii = 0.5` and `r_ij + r_ji = 1`. Row sums of a
//! valid matrix, normalized to 1, give the criterion weights. A derived
//! weight vector is only trusted when the consistency ratio of the matrix
//! stays below 0.1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::stable_sum;
use crate::ABS_TOL;

/// Linguistic preference grades and their fuzzy scale values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaatyFuzzyGrade {
    EquallyImportant,
    SlightlyImportant,
    Important,
    StronglyImportant,
    VeryStronglyImportant,
    ExtremelyImportant,
}

impl SaatyFuzzyGrade {
    pub const ALL: [SaatyFuzzyGrade; 6] = [
        SaatyFuzzyGrade::EquallyImportant,
        SaatyFuzzyGrade::SlightlyImportant,
        SaatyFuzzyGrade::Important,
        SaatyFuzzyGrade::StronglyImportant,
        SaatyFuzzyGrade::VeryStronglyImportant,
        SaatyFuzzyGrade::ExtremelyImportant,
    ];

    /// Scale value of the grade. The reciprocal cell of a pairwise matrix
    /// receives `1 - value`.
    pub fn value(self) -> f64 {
        match self {
            SaatyFuzzyGrade::EquallyImportant => 0.5,
            SaatyFuzzyGrade::SlightlyImportant => 0.55,
            SaatyFuzzyGrade::Important => 0.65,
            SaatyFuzzyGrade::StronglyImportant => 0.75,
            SaatyFuzzyGrade::VeryStronglyImportant => 0.85,
            SaatyFuzzyGrade::ExtremelyImportant => 0.95,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FahpError {
    #[error("pairwise matrix must have at least one criterion")]
    Empty,
    #[error("pairwise matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("diagonal entry r[{i}][{i}] = {value} must be 0.5")]
    DiagonalViolation { i: usize, value: f64 },
    #[error("reciprocity violated at ({i},{j}): r_ij + r_ji = {sum}, expected 1")]
    ReciprocityViolation { i: usize, j: usize, sum: f64 },
    #[error("entry r[{i}][{j}] = {value} outside [0, 1]")]
    RangeViolation { i: usize, j: usize, value: f64 },
    #[error("weight vector has {got} entries, matrix expects {expected}")]
    WeightDimensionMismatch { got: usize, expected: usize },
    #[error("weight {i} is zero, consistency estimator is undefined")]
    ZeroWeight { i: usize },
    #[error("preference for pair ({i},{j}) given more than once")]
    DuplicatePreference { i: usize, j: usize },
    #[error("no preference given for pair ({i},{j})")]
    MissingPreference { i: usize, j: usize },
    #[error("preference index {index} out of bounds for {n} criteria")]
    PreferenceIndexOutOfBounds { index: usize, n: usize },
    #[error("weights must be nonnegative, got {value} at index {i}")]
    NegativeWeight { i: usize, value: f64 },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
}

/// A validated n-by-n fuzzy preference matrix: diagonal 0.5, `r_ij + r_ji = 1`,
/// every entry in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct FuzzyPairwiseMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FuzzyPairwiseMatrix {
    /// Validates a raw square matrix against the reciprocity constraints and
    /// returns it unchanged on success.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, FahpError> {
        let n = rows.len();
        if n == 0 {
            return Err(FahpError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(FahpError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(FahpError::RangeViolation { i, j, value: v });
                }
            }
        }
        for (i, r) in rows.iter().enumerate() {
            if (r[i] - 0.5).abs() > ABS_TOL {
                return Err(FahpError::DiagonalViolation { i, value: r[i] });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let sum = rows[i][j] + rows[j][i];
                if (sum - 1.0).abs() > ABS_TOL {
                    return Err(FahpError::ReciprocityViolation { i, j, sum });
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Self { n, entries })
    }

    /// The indifferent matrix: every entry 0.5.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform matrix needs at least one criterion");
        Self {
            n,
            entries: vec![0.5; n * n],
        }
    }

    /// Builds a matrix from one preference value per unordered pair.
    /// `(i, j, v)` sets `r_ij = v` and `r_ji = 1 - v`; the diagonal is fixed
    /// at 0.5. Every pair must appear exactly once.
    pub fn from_preferences(n: usize, preferences: &[(usize, usize, f64)]) -> Result<Self, FahpError> {
        if n == 0 {
            return Err(FahpError::Empty);
        }
        let mut rows = vec![vec![f64::NAN; n]; n];
        for i in 0..n {
            rows[i][i] = 0.5;
        }
        for &(i, j, v) in preferences {
            for index in [i, j] {
                if index >= n {
                    return Err(FahpError::PreferenceIndexOutOfBounds { index, n });
                }
            }
            if i == j || !rows[i][j].is_nan() {
                return Err(FahpError::DuplicatePreference { i, j });
            }
            rows[i][j] = v;
            rows[j][i] = 1.0 - v;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j].is_nan() {
                    return Err(FahpError::MissingPreference { i, j });
                }
            }
        }
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Derives criterion weights: each weight is the matrix row sum
    /// normalized by the total over all rows. Row sums are strictly positive
    /// (the diagonal alone contributes 0.5), so every weight is positive.
    pub fn derive_weights(&self) -> WeightVector {
        let row_sums: Vec<f64> = (0..self.n)
            .map(|i| stable_sum(self.row(i).iter().copied()))
            .collect();
        let total = stable_sum(row_sums.iter().copied());
        WeightVector {
            weights: row_sums.into_iter().map(|b| b / total).collect(),
        }
    }

    /// Consistency index and ratio of the matrix under the given weights.
    ///
    /// Entries are clamped to `[0.01, 0.99]` and mapped through the
    /// multiplicative transform `m_ij = r_ij / (1 - r_ij)`, which carries the
    /// fuzzy preferences onto a reciprocal ratio matrix where a consistent
    /// matrix has principal eigenvalue `n`. The eigenvalue estimate is
    /// `sum_i (M w)_i / (n w_i)`; CI = (estimate - n) / (n - 1) and
    /// CR = CI / RI. Matrices of size 2 or less are consistent by
    /// construction and report CR = 0.
    pub fn consistency(&self, weights: &WeightVector) -> Result<ConsistencyReport, FahpError> {
        let n = self.n;
        if weights.len() != n {
            return Err(FahpError::WeightDimensionMismatch {
                got: weights.len(),
                expected: n,
            });
        }
        if let Some(i) = weights.as_slice().iter().position(|&w| w == 0.0) {
            return Err(FahpError::ZeroWeight { i });
        }
        if n <= 2 {
            return Ok(ConsistencyReport {
                ci: 0.0,
                ri: 0.0,
                cr: 0.0,
                acceptable: true,
            });
        }

        let transformed = |i: usize, j: usize| {
            let r = self.entry(i, j).clamp(0.01, 0.99);
            r / (1.0 - r)
        };
        // The denominator n*w_i is accumulated with the same loop as the
        // numerator so that a consistent matrix cancels to exactly zero.
        let mut eigen_excess = 0.0;
        for i in 0..n {
            let mut numerator = 0.0;
            let mut denominator = 0.0;
            for j in 0..n {
                numerator += transformed(i, j) * weights.get(j);
                denominator += weights.get(i);
            }
            eigen_excess += numerator / denominator - 1.0;
        }
        let ci = eigen_excess / (n - 1) as f64;
        let ri = random_index(n);
        let cr = ci / ri;
        Ok(ConsistencyReport {
            ci,
            ri,
            cr,
            acceptable: cr < 0.1,
        })
    }
}

impl TryFrom<Vec<Vec<f64>>> for FuzzyPairwiseMatrix {
    type Error = FahpError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

impl From<FuzzyPairwiseMatrix> for Vec<Vec<f64>> {
    fn from(m: FuzzyPairwiseMatrix) -> Self {
        (0..m.n).map(|i| m.row(i).to_vec()).collect()
    }
}

/// Expected consistency index of a random reciprocal matrix, by size.
/// Defined from size 3 up; the table saturates at size 10.
fn random_index(n: usize) -> f64 {
    const TABLE: [f64; 8] = [0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];
    debug_assert!(n >= 3);
    TABLE[(n - 3).min(TABLE.len() - 1)]
}

/// Normalized criterion weights: nonnegative, summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, FahpError> {
        if let Some((i, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(FahpError::NegativeWeight { i, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > ABS_TOL {
            return Err(FahpError::WeightSum { sum });
        }
        Ok(Self { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = FahpError;

    fn try_from(weights: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(weights)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.weights
    }
}

/// Outcome of the consistency check for one pairwise matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// Consistency index of the matrix under the supplied weights.
    pub ci: f64,
    /// Random index for the matrix size (0 below size 3).
    pub ri: f64,
    /// Consistency ratio `ci / ri`.
    pub cr: f64,
    /// Whether `cr < 0.1`.
    pub acceptable: bool,
}
