//! Analytic hierarchy process for a single level of criteria.
//!
//! Criterion weights come from the principal right eigenvector of a
//! pairwise judgment matrix, found by power iteration. Saaty's consistency
//! ratio checks the judgments. Raw criterion columns are min-max normalized
//! (costs inverted), alternatives are scored by weighted sum, and weight
//! perturbation sweeps show how stable the ranking is.

mod checklist;
mod data;
mod matrix;
mod rank;
mod report;

pub use checklist::{applicability_score, applicability_score_for, round_to, FeatureChecklist, ACADEMIC_FEATURES};
pub use data::{parse_checklists, parse_decision_table, parse_matrix_file, MatrixFile};
pub use matrix::{
    consistency_ratio, consistency_ratio_with, principal_eigen, priority_vector, Consistency, PairwiseMatrix,
    PrincipalEigen, RandomIndex, ReciprocityWarning, MAX_ITERATIONS, TOLERANCE,
};
pub use rank::{
    normalize_criterion, perturb_weights, rank_alternatives, sensitivity_sweep, DecisionTable, RankedAlternative,
    Ranking, Sensitivity,
};
pub use report::{default_deltas, run_analysis, AhpInputs, AhpReport, ApplicabilityEntry, CR_THRESHOLD};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AhpError {
    #[error("judgment matrix needs at least 2 criteria, got {0}")]
    TooSmall(usize),
    #[error("judgment matrix row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("judgment entry ({i}, {j}) = {value} must be positive and finite")]
    NonPositive { i: usize, j: usize, value: f64 },
    #[error("diagonal entry ({i}, {i}) = {value} must be 1")]
    Diagonal { i: usize, value: f64 },
    #[error("{0} labels for a {1}x{1} matrix")]
    LabelCount(usize, usize),
    #[error("consistency ratio is tabulated for n <= {max}, got n = {n}")]
    UnsupportedSize { n: usize, max: usize },
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("criterion `{0}` has identical values for every alternative")]
    DegenerateCriterion(String),
    #[error("value {value} for `{alternative}` / `{criterion}` is invalid: {reason}")]
    InvalidValue {
        alternative: String,
        criterion: String,
        value: f64,
        reason: &'static str,
    },
    #[error("checklist is missing feature `{0}`")]
    MissingFeature(String),
    #[error("checklist has unknown feature `{0}`")]
    UnknownFeature(String),
    #[error("feature `{feature}` scored {score}; scores must be 0, 0.5 or 1")]
    BadFeatureScore { feature: String, score: f64 },
    #[error("perturbed weight {value} for `{criterion}` is outside (0, 1)")]
    WeightOutOfRange { criterion: String, value: f64 },
    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("CSV: {0}")]
    Csv(String),
    #[error("JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Larger raw values are better.
    Benefit,
    /// Larger raw values are worse (e.g. price).
    Cost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    #[default]
    Quantitative,
    /// Expert- or checklist-derived score in `[0, 1]`.
    Qualitative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub name: String,
    pub direction: Direction,
    #[serde(default)]
    pub source: Source,
}

impl CriterionSpec {
    pub fn new(name: impl Into<String>, direction: Direction, source: Source) -> Self {
        CriterionSpec {
            name: name.into(),
            direction,
            source,
        }
    }
}
