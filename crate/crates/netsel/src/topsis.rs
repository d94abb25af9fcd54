//! Ranking of alternatives by similarity to an ideal solution.
//!
//! A decision matrix of raw ratings is normalized column-wise (Euclidean),
//! scaled by criterion weights, and each alternative is scored by its
//! relative closeness `S- / (S* + S-)` to the per-criterion ideal point `A*`
//! and anti-ideal point `A-`. Benefit criteria take their ideal at the
//! column maximum, cost criteria at the column minimum.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::stable_sum;
use crate::{ABS_TOL, TIE_EPS};

/// Whether larger values of a criterion are desirable or undesirable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Benefit,
    Cost,
}

/// One column of the decision matrix: a named criterion with a direction
/// and a weight. Weights across a criteria set sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub name: String,
    pub direction: Direction,
    pub weight: f64,
}

impl CriterionSpec {
    pub fn new(name: impl Into<String>, direction: Direction, weight: f64) -> Self {
        Self {
            name: name.into(),
            direction,
            weight,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopsisError {
    #[error("decision matrix needs at least one alternative and one criterion")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    RowDimensionMismatch {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix has {got} columns but {expected} criteria")]
    CriteriaDimensionMismatch { got: usize, expected: usize },
    #[error("entry [{row}][{col}] = {value} must be nonnegative and finite")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("criterion '{name}' has weight {weight} outside [0, 1]")]
    InvalidWeight { name: String, weight: f64 },
    #[error("criterion weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("vector of length {got} does not match {expected} criteria")]
    PointDimensionMismatch { got: usize, expected: usize },
}

/// Raw ratings of `m` alternatives against `n` weighted criteria. Entries
/// are nonnegative and kept in each criterion's native unit; cost criteria
/// are expressed through [`Direction::Cost`], never by negating values.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    entries: Vec<f64>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, TopsisError> {
        let m = alternatives.len();
        let n = criteria.len();
        if m == 0 || n == 0 {
            return Err(TopsisError::Empty);
        }
        if rows.len() != m {
            return Err(TopsisError::RowDimensionMismatch {
                row: rows.len().min(m),
                len: rows.len(),
                expected: m,
            });
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(TopsisError::RowDimensionMismatch {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &v) in r.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(TopsisError::InvalidEntry { row, col, value: v });
                }
            }
        }
        for spec in &criteria {
            if !spec.weight.is_finite() || !(0.0..=1.0).contains(&spec.weight) {
                return Err(TopsisError::InvalidWeight {
                    name: spec.name.clone(),
                    weight: spec.weight,
                });
            }
        }
        let sum: f64 = criteria.iter().map(|c| c.weight).sum();
        if (sum - 1.0).abs() > ABS_TOL {
            return Err(TopsisError::WeightSum { sum });
        }
        Ok(Self {
            alternatives,
            criteria,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives.len()
    }

    pub fn criterion_count(&self) -> usize {
        self.criteria.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.criteria.len() + col]
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.criteria.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Runs the full pipeline: normalize, weight, locate ideal points,
    /// measure separations and order alternatives by decreasing closeness.
    pub fn rank(&self) -> RankingResult {
        let normalized = normalize(self);
        let weighted =
            apply_weights(&normalized, &self.criteria).expect("matrix dimensions are validated");
        let (ideal, anti_ideal) = ideal_points(&weighted, &self.criteria);
        let separations = separations(&weighted, &ideal, &anti_ideal)
            .expect("ideal point dimensions match the matrix");
        let closeness: Vec<f64> = separations
            .iter()
            .map(|s| closeness(s.to_ideal, s.to_anti_ideal))
            .collect();
        let order = ranking_order(&closeness);
        RankingResult {
            closeness,
            ideal,
            anti_ideal,
            separations,
            order,
        }
    }
}

/// Scores and geometry produced by [`DecisionMatrix::rank`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingResult {
    /// Relative closeness per alternative, each in `[0, 1]`.
    pub closeness: Vec<f64>,
    /// Best weighted-normalized value per criterion.
    pub ideal: Vec<f64>,
    /// Worst weighted-normalized value per criterion.
    pub anti_ideal: Vec<f64>,
    /// Distances of each alternative to the ideal and anti-ideal points.
    pub separations: Vec<Separation>,
    /// Alternative indices sorted by decreasing closeness. Scores within
    /// [`TIE_EPS`] of each other count as tied and are ordered by index.
    pub order: Vec<usize>,
}

/// Euclidean distances of one alternative to the two reference points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    pub to_ideal: f64,
    pub to_anti_ideal: f64,
}

/// Column-wise Euclidean normalization of the raw ratings. A column that is
/// entirely zero carries no information and normalizes to zeros.
pub fn normalize(matrix: &DecisionMatrix) -> Vec<Vec<f64>> {
    let mut rows = matrix.rows();
    let m = matrix.alternative_count();
    for col in 0..matrix.criterion_count() {
        let norm = stable_sum((0..m).map(|row| {
            let v = matrix.entry(row, col);
            v * v
        }))
        .sqrt();
        if norm > 0.0 {
            for row in rows.iter_mut() {
                row[col] /= norm;
            }
        }
    }
    rows
}

/// Scales each normalized column by its criterion weight.
pub fn apply_weights(
    normalized: &[Vec<f64>],
    criteria: &[CriterionSpec],
) -> Result<Vec<Vec<f64>>, TopsisError> {
    let mut weighted = Vec::with_capacity(normalized.len());
    for row in normalized {
        if row.len() != criteria.len() {
            return Err(TopsisError::CriteriaDimensionMismatch {
                got: row.len(),
                expected: criteria.len(),
            });
        }
        weighted.push(
            row.iter()
                .zip(criteria)
                .map(|(v, spec)| v * spec.weight)
                .collect(),
        );
    }
    Ok(weighted)
}

/// Ideal and anti-ideal points of the weighted matrix. Benefit criteria take
/// their ideal at the column maximum, cost criteria at the column minimum.
pub fn ideal_points(weighted: &[Vec<f64>], criteria: &[CriterionSpec]) -> (Vec<f64>, Vec<f64>) {
    let mut ideal = Vec::with_capacity(criteria.len());
    let mut anti_ideal = Vec::with_capacity(criteria.len());
    for (col, spec) in criteria.iter().enumerate() {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for row in weighted {
            min = min.min(row[col]);
            max = max.max(row[col]);
        }
        let (best, worst) = match spec.direction {
            Direction::Benefit => (max, min),
            Direction::Cost => (min, max),
        };
        ideal.push(best);
        anti_ideal.push(worst);
    }
    (ideal, anti_ideal)
}

/// Euclidean distances of every row to the ideal and anti-ideal points.
pub fn separations(
    weighted: &[Vec<f64>],
    ideal: &[f64],
    anti_ideal: &[f64],
) -> Result<Vec<Separation>, TopsisError> {
    let n = ideal.len();
    if anti_ideal.len() != n {
        return Err(TopsisError::PointDimensionMismatch {
            got: anti_ideal.len(),
            expected: n,
        });
    }
    let mut result = Vec::with_capacity(weighted.len());
    for row in weighted {
        if row.len() != n {
            return Err(TopsisError::PointDimensionMismatch {
                got: row.len(),
                expected: n,
            });
        }
        let distance = |point: &[f64]| {
            row.iter()
                .zip(point)
                .map(|(v, p)| (v - p) * (v - p))
                .sum::<f64>()
                .sqrt()
        };
        result.push(Separation {
            to_ideal: distance(ideal),
            to_anti_ideal: distance(anti_ideal),
        });
    }
    Ok(result)
}

/// Relative closeness to the ideal solution. An alternative equidistant at
/// zero from both poles (all alternatives identical) scores 0.5.
pub fn closeness(to_ideal: f64, to_anti_ideal: f64) -> f64 {
    let total = to_ideal + to_anti_ideal;
    if total == 0.0 {
        0.5
    } else {
        to_anti_ideal / total
    }
}

/// Indices sorted by decreasing closeness; runs of scores whose neighbors
/// lie within [`TIE_EPS`] are treated as one tie group and ordered by index.
fn ranking_order(closeness: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..closeness.len()).collect();
    order.sort_by(|&a, &b| closeness[b].total_cmp(&closeness[a]).then(a.cmp(&b)));
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len()
            && closeness[order[end]] - closeness[order[end + 1]] <= TIE_EPS
        {
            end += 1;
        }
        order[start..=end].sort_unstable();
        start = end + 1;
    }
    order
}
