use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::{AhpError, CriterionSpec, Direction, Source};
use crate::par::Execution;

/// Scores closer than this are treated as tied.
const TIE_EPS: f64 = 1e-12;

/// Raw criterion values, one row per alternative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionTable {
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    /// `values[alternative][criterion]`
    pub values: Vec<Vec<f64>>,
}

impl DecisionTable {
    pub fn new(alternatives: Vec<String>, criteria: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self, AhpError> {
        if values.len() != alternatives.len() {
            return Err(AhpError::DimensionMismatch(format!(
                "{} alternatives but {} value rows",
                alternatives.len(),
                values.len()
            )));
        }
        if alternatives.is_empty() {
            return Err(AhpError::DimensionMismatch("table has no alternatives".into()));
        }
        for (name, row) in alternatives.iter().zip(&values) {
            if row.len() != criteria.len() {
                return Err(AhpError::DimensionMismatch(format!(
                    "`{name}` has {} values for {} criteria",
                    row.len(),
                    criteria.len()
                )));
            }
            if let Some((c, &v)) = criteria.iter().zip(row).find(|(_, v)| !v.is_finite()) {
                return Err(AhpError::InvalidValue {
                    alternative: name.clone(),
                    criterion: c.clone(),
                    value: v,
                    reason: "not finite",
                });
            }
        }
        Ok(DecisionTable {
            alternatives,
            criteria,
            values,
        })
    }

    pub fn column(&self, criterion: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[criterion]).collect()
    }

    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c == name)
    }

    pub fn alternative_index(&self, name: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == name)
    }
}

/// Min-max normalization to `[0, 1]`; cost criteria are inverted so the
/// cheapest alternative gets 1.
pub fn normalize_criterion(values: &[f64], direction: Direction) -> Option<Vec<f64>> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    if !(range > 0.0) {
        return None;
    }
    Some(
        values
            .iter()
            .map(|v| match direction {
                Direction::Benefit => (v - min) / range,
                Direction::Cost => (max - v) / range,
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedAlternative {
    pub name: String,
    pub score: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
    /// Set when the score equals a neighbour's and the position was
    /// decided alphabetically.
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    /// Best first.
    pub entries: Vec<RankedAlternative>,
    /// Normalized table in the input's alternative order.
    #[serde(skip)]
    pub normalized: Vec<Vec<f64>>,
}

impl Ranking {
    pub fn rank_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.rank)
    }

    pub fn score_of(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.score)
    }

    pub fn order(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }
}

fn check_specs(table: &DecisionTable, specs: &[CriterionSpec], weights: &[f64]) -> Result<(), AhpError> {
    let n = table.criteria.len();
    if specs.len() != n || weights.len() != n {
        return Err(AhpError::DimensionMismatch(format!(
            "{n} table criteria, {} specs, {} weights",
            specs.len(),
            weights.len()
        )));
    }
    for (spec, name) in specs.iter().zip(&table.criteria) {
        if &spec.name != name {
            return Err(AhpError::DimensionMismatch(format!(
                "criterion spec `{}` does not match table column `{name}`",
                spec.name
            )));
        }
    }
    for (i, spec) in specs.iter().enumerate() {
        if spec.source != Source::Qualitative {
            continue;
        }
        for (alt, row) in table.alternatives.iter().zip(&table.values) {
            if !(0.0..=1.0).contains(&row[i]) {
                return Err(AhpError::InvalidValue {
                    alternative: alt.clone(),
                    criterion: spec.name.clone(),
                    value: row[i],
                    reason: "qualitative scores must lie in [0, 1]",
                });
            }
        }
    }
    Ok(())
}

/// Weighted sum of normalized criteria. `specs` and `weights` follow the
/// table's column order.
pub fn rank_alternatives(
    table: &DecisionTable,
    specs: &[CriterionSpec],
    weights: &[f64],
) -> Result<Ranking, AhpError> {
    check_specs(table, specs, weights)?;
    let columns = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            normalize_criterion(&table.column(i), spec.direction)
                .ok_or_else(|| AhpError::DegenerateCriterion(spec.name.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rank_normalized(table, &columns, weights))
}

fn rank_normalized(table: &DecisionTable, columns: &[Vec<f64>], weights: &[f64]) -> Ranking {
    let m = table.alternatives.len();
    let normalized: Vec<Vec<f64>> = (0..m).map(|a| columns.iter().map(|c| c[a]).collect()).collect();
    let mut entries: Vec<RankedAlternative> = table
        .alternatives
        .iter()
        .zip(&normalized)
        .map(|(name, row)| RankedAlternative {
            name: name.clone(),
            score: row.iter().zip(weights).map(|(v, w)| v * w).sum(),
            rank: 0,
            tied: false,
        })
        .collect();

    let close = |a: f64, b: f64| (a - b).abs() <= TIE_EPS * a.abs().max(b.abs()).max(1.0);
    entries.sort_by(|a, b| {
        if close(a.score, b.score) {
            a.name.cmp(&b.name)
        } else {
            b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal)
        }
    });
    for i in 0..entries.len() {
        entries[i].rank = i + 1;
        let prev = i > 0 && close(entries[i - 1].score, entries[i].score);
        let next = i + 1 < entries.len() && close(entries[i + 1].score, entries[i].score);
        entries[i].tied = prev || next;
    }
    Ranking { entries, normalized }
}

/// Moves criterion `index` by `delta` and rescales the others
/// proportionally so the weights still sum to their original total.
pub fn perturb_weights(weights: &[f64], index: usize, delta: f64, name: &str) -> Result<Vec<f64>, AhpError> {
    let old = weights[index];
    let new = old + delta;
    let total: f64 = weights.iter().sum();
    if !(new > 0.0 && new < total) {
        return Err(AhpError::WeightOutOfRange {
            criterion: name.to_owned(),
            value: new,
        });
    }
    let scale = (total - new) / (total - old);
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, &w)| if i == index { new } else { w * scale })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sensitivity {
    pub criterion: String,
    pub deltas: Vec<f64>,
    /// One ranking per delta.
    #[serde(skip)]
    pub rankings: Vec<Ranking>,
    /// Alternative name to its rank at each delta.
    pub trajectories: BTreeMap<String, Vec<usize>>,
}

impl Sensitivity {
    /// Smallest and largest rank an alternative reaches across the sweep.
    pub fn rank_span(&self, alternative: &str) -> Option<(usize, usize)> {
        let t = self.trajectories.get(alternative)?;
        Some((*t.iter().min()?, *t.iter().max()?))
    }
}

/// Re-ranks the table for each weight perturbation of `criterion`. The
/// deltas are independent, so they are evaluated with `exec`.
pub fn sensitivity_sweep(
    table: &DecisionTable,
    specs: &[CriterionSpec],
    weights: &[f64],
    criterion: &str,
    deltas: &[f64],
    exec: Execution,
) -> Result<Sensitivity, AhpError> {
    check_specs(table, specs, weights)?;
    let index = table
        .criterion_index(criterion)
        .ok_or_else(|| AhpError::UnknownCriterion(criterion.to_owned()))?;
    let columns = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            normalize_criterion(&table.column(i), spec.direction)
                .ok_or_else(|| AhpError::DegenerateCriterion(spec.name.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let rankings = exec.try_map(deltas, |&d| {
        let w = perturb_weights(weights, index, d, criterion)?;
        Ok(rank_normalized(table, &columns, &w))
    })?;

    let trajectories = table
        .alternatives
        .iter()
        .map(|a| {
            let ranks = rankings.iter().map(|r| r.rank_of(a).expect("every alternative ranked")).collect();
            (a.clone(), ranks)
        })
        .collect();
    Ok(Sensitivity {
        criterion: criterion.to_owned(),
        deltas: deltas.to_vec(),
        rankings,
        trajectories,
    })
}
