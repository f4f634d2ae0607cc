//! Loaders for the decision table (CSV), judgment matrix (JSON) and
//! feature checklists (JSON).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AhpError, CriterionSpec, DecisionTable, FeatureChecklist, PairwiseMatrix};

/// On-disk judgment matrix. Rows and columns follow `criteria`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub criteria: Vec<CriterionSpec>,
    pub entries: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn matrix(&self) -> Result<PairwiseMatrix, AhpError> {
        PairwiseMatrix::new(
            self.criteria.iter().map(|c| c.name.clone()).collect(),
            self.entries.clone(),
        )
    }
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, AhpError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| AhpError::Json(e.to_string()))?;
    file.matrix()?;
    Ok(file)
}

/// First column names the alternative, the header row names the criteria.
pub fn parse_decision_table(text: &str) -> Result<DecisionTable, AhpError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| AhpError::Csv(e.to_string()))?.clone();
    if headers.len() < 2 {
        return Err(AhpError::Csv("need an alternative column and at least one criterion".into()));
    }
    let criteria: Vec<String> = headers.iter().skip(1).map(str::to_owned).collect();

    let mut alternatives = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| AhpError::Csv(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let name = record.get(0).unwrap_or_default().to_owned();
        let row = record
            .iter()
            .skip(1)
            .zip(&criteria)
            .map(|(field, criterion)| {
                field
                    .parse::<f64>()
                    .map_err(|_| AhpError::Csv(format!("line {line}: `{field}` for `{criterion}` is not a number")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        alternatives.push(name);
        values.push(row);
    }
    DecisionTable::new(alternatives, criteria, values)
}

/// `{ "<alternative>": { "<feature>": score, ... }, ... }`
pub fn parse_checklists(text: &str) -> Result<BTreeMap<String, FeatureChecklist>, AhpError> {
    serde_json::from_str(text).map_err(|e| AhpError::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ahp::Direction;

    #[test]
    fn reads_csv() {
        let t = parse_decision_table("Tool, Price, Users\nA, 1.5, 2\nB, 3, 4\n").unwrap();
        assert_eq!(t.criteria, ["Price", "Users"]);
        assert_eq!(t.alternatives, ["A", "B"]);
        assert_eq!(t.values[1], [3.0, 4.0]);
    }

    #[test]
    fn csv_errors() {
        let e = parse_decision_table("Tool,Price\nA,cheap\n").unwrap_err();
        assert!(matches!(&e, AhpError::Csv(m) if m.contains("line 2")), "{e}");
        assert!(matches!(parse_decision_table("Tool\nA\n"), Err(AhpError::Csv(_))));
        assert!(matches!(parse_decision_table("Tool,P,Q\nA,1\n"), Err(AhpError::Csv(_))));
    }

    #[test]
    fn reads_matrix_json() {
        let f = parse_matrix_file(
            r#"{"criteria":[{"name":"Price","direction":"cost"},{"name":"Q","direction":"benefit","source":"qualitative"}],
                "entries":[[1,2],[0.5,1]]}"#,
        )
        .unwrap();
        assert_eq!(f.criteria[0].direction, Direction::Cost);
        assert_eq!(f.matrix().unwrap().n(), 2);
        assert!(matches!(
            parse_matrix_file(r#"{"criteria":[{"name":"a","direction":"up"}],"entries":[]}"#),
            Err(AhpError::Json(_))
        ));
        assert!(matches!(
            parse_matrix_file(r#"{"criteria":[{"name":"a","direction":"cost"}],"entries":[[1]]}"#),
            Err(AhpError::TooSmall(1))
        ));
    }
}
