//! Confusion matrix and one-vs-rest contingency cells.

use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};
use crate::labels::{ClassificationSet, LabelSpace};

/// C×C count grid. Rows index the predicted class, columns the true class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    space: LabelSpace,
    // row-major: counts[pred * c + gold]
    counts: Vec<u64>,
    n: u64,
}

/// One-vs-rest contingency table for a single class of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyCells {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

impl ContingencyCells {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// tp / (tp + fn); `None` when the class has no gold samples.
    pub fn recall(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// tp / (tp + fp); `None` when the class is never predicted.
    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    /// fp / (fp + tn); `None` when every sample belongs to the class.
    pub fn fallout(&self) -> Option<f64> {
        ratio(self.fp, self.fp + self.tn)
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl ConfusionMatrix {
    /// Tallies a classification set.
    pub fn from_set(set: &ClassificationSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let c = set.space().len();
        let mut counts = vec![0u64; c * c];
        for &(gold, pred) in set.index_pairs() {
            counts[pred * c + gold] += 1;
        }
        Ok(ConfusionMatrix {
            space: set.space().clone(),
            counts,
            n: set.len() as u64,
        })
    }

    /// Builds a matrix from explicit rows (`rows[pred][gold]`).
    ///
    /// An all-zero matrix is accepted; metric functions reject it.
    pub fn from_rows(space: LabelSpace, rows: &[Vec<u64>]) -> Result<Self> {
        let c = space.len();
        if rows.len() != c || rows.iter().any(|r| r.len() != c) {
            return Err(Error::MalformedMatrix(format!(
                "expected {c}x{c} counts for {c} labels"
            )));
        }
        let counts: Vec<u64> = rows.iter().flatten().copied().collect();
        let n = counts.iter().sum();
        Ok(ConfusionMatrix { space, counts, n })
    }

    /// Convenience constructor with labels "0", "1", ... .
    pub fn from_unlabeled_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let space = LabelSpace::new((0..rows.len()).map(|i| i.to_string()))?;
        Self::from_rows(space, rows)
    }

    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn num_classes(&self) -> usize {
        self.space.len()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn cell(&self, pred: usize, gold: usize) -> u64 {
        self.counts[pred * self.num_classes() + gold]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.counts
            .chunks(self.num_classes())
            .map(<[u64]>::to_vec)
            .collect()
    }

    /// Number of samples predicted as `class`.
    pub fn row_sum(&self, class: usize) -> u64 {
        let c = self.num_classes();
        self.counts[class * c..(class + 1) * c].iter().sum()
    }

    /// Number of samples whose true class is `class`.
    pub fn col_sum(&self, class: usize) -> u64 {
        (0..self.num_classes()).map(|p| self.cell(p, class)).sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.num_classes()).map(|i| self.cell(i, i)).sum()
    }

    /// Per-class predicted counts.
    pub fn predicted_counts(&self) -> Vec<u64> {
        (0..self.num_classes()).map(|i| self.row_sum(i)).collect()
    }

    /// Per-class gold counts.
    pub fn gold_counts(&self) -> Vec<u64> {
        (0..self.num_classes()).map(|i| self.col_sum(i)).collect()
    }

    /// Indices of classes with at least one gold sample.
    pub fn gold_populated(&self) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&i| self.col_sum(i) > 0)
            .collect()
    }

    /// Count of classes with at least one gold sample.
    pub fn effective_classes(&self) -> usize {
        self.gold_populated().len()
    }

    pub fn contingency(&self, class: usize) -> ContingencyCells {
        let tp = self.cell(class, class);
        let fp = self.row_sum(class) - tp;
        let fn_ = self.col_sum(class) - tp;
        ContingencyCells {
            tp,
            fp,
            fn_,
            tn: self.n - tp - fp - fn_,
        }
    }

    pub fn contingency_of(&self, label: &str) -> Result<ContingencyCells> {
        Ok(self.contingency(self.space.require(label)?))
    }

    /// Empirical distribution of true classes.
    pub fn prevalence(&self) -> Result<ClassDistribution> {
        self.require_nonempty()?;
        ClassDistribution::from_counts(self.space.clone(), &self.gold_counts())
    }

    /// Empirical distribution of predicted classes.
    pub fn bias(&self) -> Result<ClassDistribution> {
        self.require_nonempty()?;
        ClassDistribution::from_counts(self.space.clone(), &self.predicted_counts())
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.n == 0 {
            Err(Error::EmptyMatrix)
        } else {
            Ok(())
        }
    }

    /// Relabels classes: class `i` of `self` becomes class `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let c = self.num_classes();
        let mut seen = vec![false; c];
        if perm.len() != c
            || perm
                .iter()
                .any(|&p| p >= c || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::MalformedMatrix("not a permutation".into()));
        }
        let mut labels = vec![String::new(); c];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.space.label(i).to_string();
        }
        let mut rows = vec![vec![0u64; c]; c];
        for pred in 0..c {
            for gold in 0..c {
                rows[perm[pred]][perm[gold]] = self.cell(pred, gold);
            }
        }
        Self::from_rows(LabelSpace::new(labels)?, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_f1_set() -> ClassificationSet {
        let mut pairs = Vec::new();
        pairs.extend(std::iter::repeat_n(("a", "a"), 60));
        pairs.extend(std::iter::repeat_n(("a", "b"), 20));
        pairs.extend(std::iter::repeat_n(("b", "a"), 10));
        pairs.extend(std::iter::repeat_n(("b", "b"), 10));
        ClassificationSet::from_pairs(&pairs).unwrap()
    }

    #[test]
    fn counts_small_set() {
        let set = ClassificationSet::from_pairs(&[("a", "a"), ("a", "a"), ("b", "b")]).unwrap();
        let cm = ConfusionMatrix::from_set(&set).unwrap();
        assert_eq!(cm.rows(), vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(cm.n(), 3);
    }

    #[test]
    fn counts_fixture_f1_against_tally_loop() {
        let set = fixture_f1_set();
        let cm = ConfusionMatrix::from_set(&set).unwrap();
        assert_eq!(cm.rows(), vec![vec![60, 10], vec![20, 10]]);
        assert_eq!(cm.n(), 100);
        // naive tally
        for pred in ["a", "b"] {
            for gold in ["a", "b"] {
                let count = set.pairs().filter(|&(g, p)| g == gold && p == pred).count() as u64;
                let (pi, gi) = (
                    set.space().require(pred).unwrap(),
                    set.space().require(gold).unwrap(),
                );
                assert_eq!(cm.cell(pi, gi), count);
            }
        }
    }

    #[test]
    fn empty_set_rejected() {
        let space = LabelSpace::new(["a"]).unwrap();
        let set = ClassificationSet::new::<&str>(space, &[]).unwrap();
        assert_eq!(
            ConfusionMatrix::from_set(&set).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn contingency_cells() {
        let cm = ConfusionMatrix::from_set(&fixture_f1_set()).unwrap();
        assert_eq!(
            cm.contingency_of("a").unwrap(),
            ContingencyCells {
                tp: 60,
                fp: 10,
                fn_: 20,
                tn: 10
            }
        );
        let diag = ConfusionMatrix::from_unlabeled_rows(&[vec![5, 0], vec![0, 5]]).unwrap();
        assert_eq!(
            diag.contingency(0),
            ContingencyCells {
                tp: 5,
                fp: 0,
                fn_: 0,
                tn: 5
            }
        );
        let absent = ConfusionMatrix::from_unlabeled_rows(&[vec![3, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            absent.contingency(1),
            ContingencyCells {
                tp: 0,
                fp: 0,
                fn_: 0,
                tn: 3
            }
        );
        assert_eq!(
            cm.contingency_of("z").unwrap_err(),
            Error::UnknownLabel("z".into())
        );
    }

    #[test]
    fn prevalence_and_bias() {
        let cm = ConfusionMatrix::from_set(&fixture_f1_set()).unwrap();
        assert_eq!(cm.prevalence().unwrap().probs(), &[0.8, 0.2]);
        assert_eq!(cm.bias().unwrap().probs(), &[0.7, 0.3]);

        let diag = ConfusionMatrix::from_unlabeled_rows(&[vec![5, 0], vec![0, 5]]).unwrap();
        assert_eq!(diag.prevalence().unwrap().probs(), &[0.5, 0.5]);
        assert_eq!(diag.bias().unwrap().probs(), &[0.5, 0.5]);

        let single = ConfusionMatrix::from_unlabeled_rows(&[vec![7]]).unwrap();
        assert_eq!(single.prevalence().unwrap().probs(), &[1.0]);

        let empty = ConfusionMatrix::from_unlabeled_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(empty.prevalence().unwrap_err(), Error::EmptyMatrix);
        assert_eq!(empty.bias().unwrap_err(), Error::EmptyMatrix);
    }

    #[test]
    fn permutation_moves_cells() {
        let cm =
            ConfusionMatrix::from_unlabeled_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])
                .unwrap();
        let p = cm.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.cell(2, 0), cm.cell(0, 1));
        assert_eq!(p.space().label(2), "0");
        assert!(cm.permuted(&[0, 0, 1]).is_err());
    }
}
