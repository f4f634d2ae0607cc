use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AhpError;

/// The twelve features scored for academic suitability, in reporting order.
pub const ACADEMIC_FEATURES: [&str; 12] = [
    "Supporting Images",
    "Supporting Sounds",
    "Supporting Videos",
    "Formula and Latex",
    "Online Presentation",
    "Offline Presentation",
    "Nonlinear Presentation",
    "Linear Presentation",
    "Annotation",
    "Supporting Second Screen",
    "Charts",
    "Running on different OSs",
];

/// Feature name to score: 1 supported, 0.5 partially, 0 not supported.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureChecklist {
    pub scores: BTreeMap<String, f64>,
}

impl FeatureChecklist {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        FeatureChecklist {
            scores: entries.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Mean score over [`ACADEMIC_FEATURES`].
pub fn applicability_score(checklist: &FeatureChecklist) -> Result<f64, AhpError> {
    applicability_score_for(checklist, &ACADEMIC_FEATURES)
}

/// Mean score over `features`. Every listed feature must be present with a
/// score of 0, 0.5 or 1, and the checklist may not name anything else.
pub fn applicability_score_for(checklist: &FeatureChecklist, features: &[&str]) -> Result<f64, AhpError> {
    if let Some(extra) = checklist.scores.keys().find(|k| !features.contains(&k.as_str())) {
        return Err(AhpError::UnknownFeature(extra.clone()));
    }
    let mut sum = 0.0;
    for &feature in features {
        let score = *checklist
            .scores
            .get(feature)
            .ok_or_else(|| AhpError::MissingFeature(feature.to_owned()))?;
        if ![0.0, 0.5, 1.0].contains(&score) {
            return Err(AhpError::BadFeatureScore {
                feature: feature.to_owned(),
                score,
            });
        }
        sum += score;
    }
    Ok(sum / features.len() as f64)
}

/// Half-away-from-zero rounding to `digits` decimals.
pub fn round_to(x: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checklist(scores: [f64; 12]) -> FeatureChecklist {
        FeatureChecklist::new(ACADEMIC_FEATURES.iter().copied().zip(scores))
    }

    #[test]
    fn mean_of_twelve() {
        let c = checklist([1.0, 1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.5]);
        assert_eq!(applicability_score(&c).unwrap(), 0.75);
        let c = checklist([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(applicability_score(&c).unwrap(), 0.25);
    }

    #[test]
    fn checklist_errors() {
        let mut c = checklist([1.0; 12]);
        c.scores.remove("Charts");
        assert_eq!(applicability_score(&c), Err(AhpError::MissingFeature("Charts".into())));

        let mut c = checklist([1.0; 12]);
        c.scores.insert("Charts".into(), 0.7);
        assert!(matches!(applicability_score(&c), Err(AhpError::BadFeatureScore { .. })));

        let mut c = checklist([1.0; 12]);
        c.scores.insert("Telepathy".into(), 1.0);
        assert_eq!(applicability_score(&c), Err(AhpError::UnknownFeature("Telepathy".into())));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_to(0.875, 2), 0.88);
        assert_eq!(round_to(7.0 / 12.0, 2), 0.58);
        assert_eq!(round_to(0.125, 2), 0.13);
    }
}
