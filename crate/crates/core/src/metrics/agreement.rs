//! Chance-agreement and correlation metrics: Cohen's Kappa and MCC.
//!
//! Both share the numerator `n·trace − Σ_k pred_k·gold_k`, evaluated here
//! in exact integer arithmetic so that independent matrices score exactly 0.

use super::{label_list, mean, ClassScope, Warning, WarningCode};
use crate::confusion::ConfusionMatrix;
use crate::error::Result;

struct Marginals {
    n: i128,
    trace: i128,
    pred: Vec<i128>,
    gold: Vec<i128>,
}

impl Marginals {
    fn of(cm: &ConfusionMatrix) -> Self {
        Marginals {
            n: cm.n() as i128,
            trace: cm.trace() as i128,
            pred: cm.predicted_counts().into_iter().map(i128::from).collect(),
            gold: cm.gold_counts().into_iter().map(i128::from).collect(),
        }
    }

    fn cross(&self) -> i128 {
        self.pred.iter().zip(&self.gold).map(|(p, g)| p * g).sum()
    }

    fn sum_sq(v: &[i128]) -> i128 {
        v.iter().map(|x| x * x).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Kappa {
    pub value: f64,
    /// Σ_c prevalence_c · bias_c
    pub chance_agreement: f64,
    pub warning: Option<Warning>,
}

/// Cohen's Kappa with the predictor and the gold labels as the two annotators.
pub fn cohen_kappa(cm: &ConfusionMatrix) -> Result<Kappa> {
    cm.require_nonempty()?;
    let m = Marginals::of(cm);
    let n2 = m.n * m.n;
    let cross = m.cross();
    let chance_agreement = cross as f64 / n2 as f64;
    if cross == n2 {
        return Ok(Kappa {
            value: 0.0,
            chance_agreement,
            warning: Some(Warning::new(
                WarningCode::DegenerateChanceAgreement,
                "degenerate chance agreement: kappa set to 0",
            )),
        });
    }
    Ok(Kappa {
        value: (m.n * m.trace - cross) as f64 / (n2 - cross) as f64,
        chance_agreement,
        warning: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mcc {
    /// R_K statistic over the full matrix.
    pub multiclass: f64,
    /// Unweighted mean of the one-vs-rest values over the scoped classes.
    pub macro_: f64,
    /// One-vs-rest binary MCC for every class of the label space.
    pub per_class: Vec<f64>,
    pub warnings: Vec<Warning>,
}

/// Matthews correlation: multiclass R_K, per-class one-vs-rest and macro mean.
pub fn mcc(cm: &ConfusionMatrix, scope: ClassScope) -> Result<Mcc> {
    cm.require_nonempty()?;
    let mut warnings = Vec::new();

    let m = Marginals::of(cm);
    let n2 = m.n * m.n;
    let cov = m.n * m.trace - m.cross();
    let var_pred = n2 - Marginals::sum_sq(&m.pred);
    let var_gold = n2 - Marginals::sum_sq(&m.gold);
    let multiclass = if var_pred == 0 || var_gold == 0 {
        warnings.push(Warning::new(
            WarningCode::MccUndefined,
            "constant predictions or gold labels: multiclass MCC set to 0",
        ));
        0.0
    } else {
        cov as f64 / ((var_pred as f64).sqrt() * (var_gold as f64).sqrt())
    };

    let classes = scope.classes(cm);
    let mut undefined = Vec::new();
    let per_class: Vec<f64> = (0..cm.num_classes())
        .map(|c| {
            let cells = cm.contingency(c);
            let (tp, fp, fn_, tn) = (
                cells.tp as i128,
                cells.fp as i128,
                cells.fn_ as i128,
                cells.tn as i128,
            );
            let num = tp * tn - fp * fn_;
            let factors = [tp + fp, tp + fn_, tn + fp, tn + fn_];
            if factors.contains(&0) {
                if classes.contains(&c) {
                    undefined.push(c);
                }
                0.0
            } else {
                let den: f64 = factors.iter().map(|&f| (f as f64).sqrt()).product();
                num as f64 / den
            }
        })
        .collect();
    if !undefined.is_empty() {
        warnings.push(Warning::new(
            WarningCode::MccUndefined,
            format!(
                "zero denominator: per-class MCC set to 0 for {}",
                label_list(cm, &undefined)
            ),
        ));
    }

    Ok(Mcc {
        multiclass,
        macro_: mean(classes.iter().map(|&c| per_class[c])),
        per_class,
        warnings,
    })
}
