use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{
    applicability_score, consistency_ratio, principal_eigen, rank_alternatives, round_to, sensitivity_sweep,
    AhpError, CriterionSpec, DecisionTable, FeatureChecklist, MatrixFile, RankedAlternative, ReciprocityWarning,
    Sensitivity,
};
use crate::par::Execution;

/// Conventional upper bound for acceptably consistent judgments.
pub const CR_THRESHOLD: f64 = 0.1;

/// `-0.05, -0.04, …, 0.05`
pub fn default_deltas() -> Vec<f64> {
    (-5..=5).map(|k| k as f64 / 100.0).collect()
}

#[derive(Debug, Clone)]
pub struct AhpInputs {
    pub matrix: MatrixFile,
    pub table: DecisionTable,
    /// When present, replaces the table column named `applicability_criterion`
    /// with the computed (unrounded) checklist means.
    pub checklists: Option<BTreeMap<String, FeatureChecklist>>,
    pub applicability_criterion: String,
    pub deltas: Vec<f64>,
}

impl AhpInputs {
    pub fn new(matrix: MatrixFile, table: DecisionTable) -> Self {
        AhpInputs {
            matrix,
            table,
            checklists: None,
            applicability_criterion: "Applicability".into(),
            deltas: default_deltas(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicabilityEntry {
    pub computed: f64,
    pub rounded: f64,
    /// The value the table held before it was replaced.
    pub table: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AhpReport {
    pub criteria: Vec<CriterionSpec>,
    pub weights: BTreeMap<String, f64>,
    pub lambda_max: f64,
    #[serde(rename = "CI")]
    pub ci: f64,
    #[serde(rename = "CR")]
    pub cr: f64,
    pub consistent: bool,
    pub iterations: usize,
    pub reciprocity_warnings: Vec<ReciprocityWarning>,
    pub applicability: BTreeMap<String, ApplicabilityEntry>,
    pub scores: BTreeMap<String, f64>,
    pub ranking: Vec<RankedAlternative>,
    pub sensitivity: Vec<Sensitivity>,
}

/// Full pipeline: weights and consistency from the judgment matrix,
/// optional applicability from checklists, ranking, and a sensitivity
/// sweep over every criterion.
pub fn run_analysis(inputs: &AhpInputs, exec: Execution) -> Result<AhpReport, AhpError> {
    let matrix = inputs.matrix.matrix()?;
    let eigen = principal_eigen(&matrix)?;
    let consistency = consistency_ratio(&matrix)?;

    // reorder weights and specs from matrix order into table column order
    let table = &inputs.table;
    if table.criteria.len() != matrix.n() {
        return Err(AhpError::DimensionMismatch(format!(
            "matrix has {} criteria, table has {}",
            matrix.n(),
            table.criteria.len()
        )));
    }
    let mut specs = Vec::new();
    let mut weights = Vec::new();
    for name in &table.criteria {
        let k = matrix
            .labels()
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| AhpError::UnknownCriterion(name.clone()))?;
        specs.push(inputs.matrix.criteria[k].clone());
        weights.push(eigen.vector[k]);
    }

    let mut table = table.clone();
    let mut applicability = BTreeMap::new();
    if let Some(checklists) = &inputs.checklists {
        let col = table
            .criterion_index(&inputs.applicability_criterion)
            .ok_or_else(|| AhpError::UnknownCriterion(inputs.applicability_criterion.clone()))?;
        if let Some(stray) = checklists.keys().find(|k| table.alternative_index(k).is_none()) {
            return Err(AhpError::UnknownAlternative(stray.clone()));
        }
        for (a, alt) in table.alternatives.clone().iter().enumerate() {
            let checklist = checklists
                .get(alt)
                .ok_or_else(|| AhpError::DimensionMismatch(format!("no feature checklist for `{alt}`")))?;
            let computed = applicability_score(checklist)?;
            applicability.insert(
                alt.clone(),
                ApplicabilityEntry {
                    computed,
                    rounded: round_to(computed, 2),
                    table: table.values[a][col],
                },
            );
            table.values[a][col] = computed;
        }
    }

    let ranking = rank_alternatives(&table, &specs, &weights)?;
    let sensitivity = table
        .criteria
        .iter()
        .map(|c| sensitivity_sweep(&table, &specs, &weights, c, &inputs.deltas, exec))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(AhpReport {
        weights: table.criteria.iter().cloned().zip(weights.iter().copied()).collect(),
        criteria: specs,
        lambda_max: consistency.lambda_max,
        ci: consistency.ci,
        cr: consistency.cr,
        consistent: consistency.cr < CR_THRESHOLD,
        iterations: eigen.iterations,
        reciprocity_warnings: matrix.reciprocity_warnings(),
        applicability,
        scores: ranking.entries.iter().map(|e| (e.name.clone(), e.score)).collect(),
        ranking: ranking.entries,
        sensitivity,
    })
}

impl AhpReport {
    /// Plain-text summary with values rounded to three decimals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Criterion weights");
        for c in &self.criteria {
            let _ = writeln!(s, "  {:<28} {:>7.3}  ({:?})", c.name, self.weights[&c.name], c.direction);
        }
        let _ = writeln!(
            s,
            "lambda_max {:.3}   CI {:.3}   CR {:.3}{}",
            self.lambda_max,
            self.ci,
            self.cr,
            if self.consistent { "" } else { "   (inconsistent)" }
        );
        for w in &self.reciprocity_warnings {
            let _ = writeln!(
                s,
                "warning: {} / {} judgments multiply to {:.3}, not 1",
                self.criteria[w.i].name, self.criteria[w.j].name, w.product
            );
        }
        if !self.applicability.is_empty() {
            let _ = writeln!(s, "\nApplicability (computed / rounded / table)");
            for (alt, a) in &self.applicability {
                let _ = writeln!(s, "  {:<28} {:>7.3} {:>7.3} {:>7.3}", alt, a.computed, a.rounded, a.table);
            }
        }
        let _ = writeln!(s, "\nRanking");
        for e in &self.ranking {
            let _ = writeln!(
                s,
                "  {:>2}. {:<24} {:>7.3}{}",
                e.rank,
                e.name,
                e.score,
                if e.tied { "  (tie)" } else { "" }
            );
        }
        for sweep in &self.sensitivity {
            let _ = writeln!(s, "\nRank under {} weight change", sweep.criterion);
            let header: Vec<String> = sweep.deltas.iter().map(|d| format!("{d:+.2}")).collect();
            let _ = writeln!(s, "  {:<28} {}", "", header.join(" "));
            for e in &self.ranking {
                let ranks: Vec<String> = sweep.trajectories[&e.name].iter().map(|r| format!("{r:>5}")).collect();
                let _ = writeln!(s, "  {:<28} {}", e.name, ranks.join(" "));
            }
        }
        s
    }
}
