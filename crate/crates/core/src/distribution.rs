//! Probability vectors over a label space and Shannon entropy.

use crate::error::{Error, Result};
use crate::labels::LabelSpace;

/// Tolerance on the simplex constraint.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Probability vector indexed by a [`LabelSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDistribution {
    space: LabelSpace,
    probs: Vec<f64>,
}

impl ClassDistribution {
    pub fn new(space: LabelSpace, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != space.len() {
            return Err(Error::NotADistribution(format!(
                "{} probabilities for {} labels",
                probs.len(),
                space.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::NotADistribution(format!("entry {p} outside [0, 1]")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::NotADistribution(format!("entries sum to {total}")));
        }
        Ok(ClassDistribution { space, probs })
    }

    /// Normalises non-negative counts.
    pub fn from_counts(space: LabelSpace, counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::NotADistribution("all counts are zero".into()));
        }
        let probs = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Self::new(space, probs)
    }

    pub fn uniform(space: LabelSpace) -> Self {
        let c = space.len() as f64;
        let probs = vec![1.0 / c; space.len()];
        ClassDistribution { space, probs }
    }

    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of `label`, zero when the label is not in this space.
    pub fn prob(&self, label: &str) -> f64 {
        self.space.index_of(label).map_or(0.0, |i| self.probs[i])
    }

    /// Most probable class; ties go to the earliest label.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probs)
    }
}

/// −Σ p log2 p with 0·log 0 = 0.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // -0.0 for degenerate inputs
    h.max(0.0)
}
