//! Input-ignoring reference predictors.

use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};
use crate::labels::{ClassificationSet, LabelSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMode {
    /// Always predicts the most probable training class.
    MostCommon,
    /// Draws every prediction independently from the training distribution.
    PrevalenceSample,
}

impl FromStr for BaselineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "most-common" => Ok(BaselineMode::MostCommon),
            "prevalence-sample" => Ok(BaselineMode::PrevalenceSample),
            other => Err(Error::InvalidConfig(format!(
                "unknown baseline mode '{other}'"
            ))),
        }
    }
}

/// Pairs each gold label with a baseline prediction.
///
/// The resulting space lists the gold labels first (first-seen order)
/// followed by training labels not seen in gold. `seed` is required for
/// [`BaselineMode::PrevalenceSample`] and ignored otherwise.
pub fn baseline<S: AsRef<str>>(
    mode: BaselineMode,
    train: &ClassDistribution,
    gold: &[S],
    seed: Option<u64>,
) -> Result<ClassificationSet> {
    if gold.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut space = LabelSpace::from_observed(gold.iter().map(AsRef::as_ref))?;
    let train_index: Vec<usize> = train.space().iter().map(|l| space.insert(l)).collect();
    let gold_index = gold
        .iter()
        .map(|g| space.require(g.as_ref()))
        .collect::<Result<Vec<_>>>()?;

    let preds: Vec<usize> = match mode {
        BaselineMode::MostCommon => vec![train_index[train.argmax()]; gold.len()],
        BaselineMode::PrevalenceSample => {
            let seed = seed.ok_or_else(|| {
                Error::InvalidConfig("prevalence-sample baseline requires a seed".into())
            })?;
            let dist = WeightedIndex::new(train.probs())
                .map_err(|e| Error::NotADistribution(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..gold.len())
                .map(|_| train_index[dist.sample(&mut rng)])
                .collect()
        }
    };
    ClassificationSet::from_indices(space, gold_index.into_iter().zip(preds).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confusion::ConfusionMatrix;

    fn train(labels: &[&str], probs: &[f64]) -> ClassDistribution {
        ClassDistribution::new(
            LabelSpace::new(labels.iter().copied()).unwrap(),
            probs.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn most_common_is_constant() {
        let t = train(&["yes", "no"], &[0.6, 0.4]);
        let set = baseline(BaselineMode::MostCommon, &t, &["yes", "no", "yes"], None).unwrap();
        let preds: Vec<_> = set.pairs().map(|(_, p)| p).collect();
        assert_eq!(preds, vec!["yes", "yes", "yes"]);
    }

    #[test]
    fn most_common_tie_uses_label_order() {
        let t = train(&["b", "a"], &[0.5, 0.5]);
        let set = baseline(BaselineMode::MostCommon, &t, &["a", "b"], None).unwrap();
        assert!(set.pairs().all(|(_, p)| p == "b"));
    }

    #[test]
    fn degenerate_sampling() {
        let t = train(&["a", "b"], &[1.0, 0.0]);
        let set = baseline(
            BaselineMode::PrevalenceSample,
            &t,
            &["a", "b", "b", "a"],
            Some(3),
        )
        .unwrap();
        assert!(set.pairs().all(|(_, p)| p == "a"));
    }

    #[test]
    fn sampling_needs_seed_and_is_reproducible() {
        let t = train(&["a", "b"], &[0.5, 0.5]);
        let gold = ["a"; 50];
        assert!(baseline(BaselineMode::PrevalenceSample, &t, &gold, None).is_err());
        let x = baseline(BaselineMode::PrevalenceSample, &t, &gold, Some(9)).unwrap();
        let y = baseline(BaselineMode::PrevalenceSample, &t, &gold, Some(9)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn sampling_matches_train_distribution() {
        let t = train(&["a", "b"], &[0.5, 0.5]);
        let gold: Vec<&str> = (0..100_000)
            .map(|i| if i % 2 == 0 { "a" } else { "b" })
            .collect();
        let set = baseline(BaselineMode::PrevalenceSample, &t, &gold, Some(2024)).unwrap();
        let bias = ConfusionMatrix::from_set(&set).unwrap().bias().unwrap();
        assert!((bias.prob("a") - 0.5).abs() <= 0.01);
        assert!((bias.prob("b") - 0.5).abs() <= 0.01);
    }

    #[test]
    fn train_only_labels_extend_space() {
        let t = train(&["x", "a"], &[0.9, 0.1]);
        let set = baseline(BaselineMode::MostCommon, &t, &["a", "a"], None).unwrap();
        assert_eq!(set.space().labels(), &["a", "x"]);
    }
}
