//! Scalar classification metrics over a [`ConfusionMatrix`](crate::ConfusionMatrix).
//!
//! Every metric here is a pure function of the matrix. Degenerate cases
//! that have a widely used convention (an empty one-vs-rest F1, Kappa with
//! chance agreement of one, MCC with a constant side) evaluate to zero and
//! carry a [`Warning`]; anything else is an error.

mod agreement;
mod basic;
mod information;
mod informedness;
mod report;

use serde::{Deserialize, Serialize};

use crate::confusion::ConfusionMatrix;
use crate::distribution::ClassDistribution;

pub use agreement::{cohen_kappa, mcc, Kappa, Mcc};
pub use basic::{accuracy, balanced_accuracy, f_measures, FMeasures};
pub use information::{nit, Nit};
pub use informedness::{informedness, Informedness};
pub use report::{delta_report, metric_suite, task_mean, MetricReport};

pub const ACCURACY: &str = "accuracy";
pub const BALANCED_ACCURACY: &str = "balanced_accuracy";
pub const F1_MACRO: &str = "f1_macro";
pub const F1_MICRO: &str = "f1_micro";
pub const KAPPA: &str = "kappa";
pub const INFORMEDNESS: &str = "informedness";
pub const MCC: &str = "mcc";
pub const MCC_MACRO: &str = "mcc_macro";
pub const NIT: &str = "nit";

/// Scalar metrics in report order.
pub const METRIC_NAMES: [&str; 9] = [
    ACCURACY,
    BALANCED_ACCURACY,
    F1_MACRO,
    F1_MICRO,
    KAPPA,
    INFORMEDNESS,
    MCC,
    MCC_MACRO,
    NIT,
];

/// Per-class breakdowns in report order.
pub const PER_CLASS_NAMES: [&str; 5] = ["precision", "recall", "f1", INFORMEDNESS, MCC];

/// Which classes enter macro averages and the uniform reference entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassScope {
    /// Only classes with at least one gold sample.
    #[default]
    Observed,
    /// Every class of the label space, as explicitly requested by the caller.
    All,
}

impl ClassScope {
    pub(crate) fn classes(self, cm: &ConfusionMatrix) -> Vec<usize> {
        match self {
            ClassScope::Observed => cm.gold_populated(),
            ClassScope::All => (0..cm.num_classes()).collect(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct MetricOptions {
    pub scope: ClassScope,
    /// Class distribution used for informedness payoffs instead of the
    /// test-set prevalence, e.g. the training distribution.
    pub priors: Option<ClassDistribution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningCode {
    /// Classes without gold samples were left out of macro averages.
    ClassExcluded,
    /// A class has no true positives, false positives or false negatives.
    F1Undefined,
    /// Chance agreement equals one.
    DegenerateChanceAgreement,
    /// An MCC denominator is zero.
    MccUndefined,
    /// Informedness uses caller-supplied priors; the usual bounds do not hold.
    NonDefaultPriors,
    /// Labels that occur only among predictions.
    PredictionOnlyLabels,
    /// A continuous score was outside the discretisation range.
    ValueClamped,
    /// A group could not be evaluated.
    GroupSkipped,
}

/// Machine-readable degeneracy notice attached to a result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
}

impl Warning {
    pub fn new(code: WarningCode, message: impl Into<String>) -> Self {
        Warning {
            code,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let code = serde_json::to_value(self.code).unwrap_or_default();
        write!(
            f,
            "{}: {}",
            code.as_str().unwrap_or("warning"),
            self.message
        )
    }
}

fn label_list(cm: &ConfusionMatrix, classes: &[usize]) -> String {
    classes
        .iter()
        .map(|&c| format!("'{}'", cm.space().label(c)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, count) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, k), v| (s + v, k + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}
