use serde::{Deserialize, Serialize};

use super::AhpError;

/// Power iteration stops once no component moves by more than this
/// relative amount between iterations.
pub const TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 10_000;

/// Square matrix of positive pairwise judgments with unit diagonal.
/// Entry `(i, j)` says how much more important criterion `i` is than `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

/// A pair whose judgments are not reciprocal within the accepted slack.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReciprocityWarning {
    pub i: usize,
    pub j: usize,
    /// `a_ij · a_ji`, which would be 1 for perfectly reciprocal judgments.
    pub product: f64,
}

impl PairwiseMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self, AhpError> {
        let n = entries.len();
        if n < 2 {
            return Err(AhpError::TooSmall(n));
        }
        if labels.len() != n {
            return Err(AhpError::LabelCount(labels.len(), n));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(AhpError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(AhpError::NonPositive { i, j, value });
                }
            }
            if row[i] != 1.0 {
                return Err(AhpError::Diagonal { i, value: row[i] });
            }
        }
        Ok(PairwiseMatrix { labels, entries })
    }

    /// The perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn consistent(labels: Vec<String>, weights: &[f64]) -> Result<Self, AhpError> {
        let entries = weights
            .iter()
            .map(|wi| weights.iter().map(|wj| wi / wj).collect())
            .collect();
        PairwiseMatrix::new(labels, entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// Upper-triangle pairs with `|a_ij · a_ji − 1| > 0.1`.
    pub fn reciprocity_warnings(&self) -> Vec<ReciprocityWarning> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let product = self.entries[i][j] * self.entries[j][i];
                if (product - 1.0).abs() > 0.1 {
                    out.push(ReciprocityWarning { i, j, product });
                }
            }
        }
        out
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalEigen {
    /// Positive, summing to 1.
    pub vector: Vec<f64>,
    pub lambda: f64,
    pub iterations: usize,
}

/// Power iteration from the uniform vector. For a positive matrix the
/// dominant eigenvalue is simple and real, so this converges; the iteration
/// cap still guards against pathological input.
pub fn principal_eigen(m: &PairwiseMatrix) -> Result<PrincipalEigen, AhpError> {
    let n = m.n();
    let mut x = vec![1.0 / n as f64; n];
    for iteration in 1..=MAX_ITERATIONS {
        let y = m.apply(&x);
        // x sums to 1, so the sum of A·x is the Rayleigh-style eigenvalue estimate
        let lambda: f64 = y.iter().sum();
        let next: Vec<f64> = y.iter().map(|v| v / lambda).collect();
        let change = next
            .iter()
            .zip(&x)
            .map(|(a, b)| ((a - b) / a).abs())
            .fold(0.0, f64::max);
        x = next;
        if change < TOLERANCE {
            return Ok(PrincipalEigen {
                vector: x,
                lambda,
                iterations: iteration,
            });
        }
    }
    Err(AhpError::NoConvergence(MAX_ITERATIONS))
}

/// Criterion weights: the normalized principal right eigenvector.
pub fn priority_vector(m: &PairwiseMatrix) -> Result<Vec<f64>, AhpError> {
    principal_eigen(m).map(|e| e.vector)
}

/// Random consistency index by matrix order. Defaults to Saaty's table;
/// swap in another table with [`RandomIndex::new`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomIndex {
    /// `values[k]` is RI for n = k + 1.
    values: Vec<f64>,
}

impl Default for RandomIndex {
    fn default() -> Self {
        RandomIndex::saaty()
    }
}

impl RandomIndex {
    pub fn saaty() -> Self {
        RandomIndex {
            values: vec![0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49],
        }
    }

    pub fn new(values: Vec<f64>) -> Self {
        RandomIndex { values }
    }

    pub fn max_order(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|k| self.values.get(k)).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Consistency {
    pub lambda_max: f64,
    pub ci: f64,
    pub cr: f64,
}

pub fn consistency_ratio(m: &PairwiseMatrix) -> Result<Consistency, AhpError> {
    consistency_ratio_with(m, &RandomIndex::saaty())
}

/// `CI = (λmax − n)/(n − 1)` and `CR = CI / RI(n)`, with CR = 0 where RI is 0.
/// A non-reciprocal matrix can have λmax < n, giving negative CI and CR;
/// these are reported as computed.
pub fn consistency_ratio_with(m: &PairwiseMatrix, ri: &RandomIndex) -> Result<Consistency, AhpError> {
    let n = m.n();
    let index = ri.get(n).ok_or(AhpError::UnsupportedSize {
        n,
        max: ri.max_order(),
    })?;
    let lambda_max = principal_eigen(m)?.lambda;
    let ci = (lambda_max - n as f64) / (n as f64 - 1.0);
    let cr = if index == 0.0 { 0.0 } else { ci / index };
    Ok(Consistency { lambda_max, ci, cr })
}
