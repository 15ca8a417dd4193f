//! Bookmaker informedness.
//!
//! Each prediction is treated as a bet at odds set by the class
//! distribution `q`: a correct prediction of class `c` pays `(1 − q_c)/q_c`
//! and any wrong prediction costs 1. The total payoff is normalised by
//! `n · (C_eff − 1)`, where `C_eff` counts classes with gold samples.
//!
//! With `q` equal to the test prevalence this reduces to
//! `(Σ_c recall_c − 1)/(C_eff − 1)`, which is Youden's J in the binary
//! case. A predictor that is informed a fraction `x` of the time and
//! otherwise guesses from the prevalence scores `x` in expectation.

use super::{Warning, WarningCode};
use crate::confusion::ConfusionMatrix;
use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Informedness {
    pub overall: f64,
    /// `recall_c − fallout_c` per class; 0 for classes without gold samples.
    pub per_class: Vec<f64>,
    pub effective_classes: usize,
    pub warnings: Vec<Warning>,
}

/// Informedness of `cm`, using `priors` for the payoff odds when given and
/// the test prevalence otherwise.
///
/// Priors are looked up by label; labels missing from `priors` count as
/// probability zero, which is an error for any class with gold samples.
pub fn informedness(
    cm: &ConfusionMatrix,
    priors: Option<&ClassDistribution>,
) -> Result<Informedness> {
    cm.require_nonempty()?;
    let populated = cm.gold_populated();
    let effective_classes = populated.len();
    if effective_classes < 2 {
        return Err(Error::SingleClass);
    }

    let n = cm.n() as f64;
    let mut warnings = Vec::new();
    let odds: Vec<f64> = match priors {
        None => populated
            .iter()
            .map(|&c| {
                let gold = cm.col_sum(c) as f64;
                (n - gold) / gold
            })
            .collect(),
        Some(priors) => {
            warnings.push(Warning::new(
                WarningCode::NonDefaultPriors,
                "informedness computed with supplied priors; the [-1/(C_eff-1), 1] bound does not apply",
            ));
            populated
                .iter()
                .map(|&c| {
                    let label = cm.space().label(c);
                    let q = priors.prob(label);
                    if q > 0.0 {
                        Ok((1.0 - q) / q)
                    } else {
                        Err(Error::InvalidPrior(format!(
                            "class '{label}' has gold samples but prior {q}"
                        )))
                    }
                })
                .collect::<Result<_>>()?
        }
    };

    let gain: f64 = populated
        .iter()
        .zip(&odds)
        .map(|(&c, &o)| cm.cell(c, c) as f64 * o)
        .sum();
    let losses = (cm.n() - cm.trace()) as f64;
    let overall = (gain - losses) / (n * (effective_classes - 1) as f64);

    let per_class = (0..cm.num_classes())
        .map(|c| {
            let cells = cm.contingency(c);
            match (cells.recall(), cells.fallout()) {
                (Some(r), Some(f)) => r - f,
                _ => 0.0,
            }
        })
        .collect();

    Ok(Informedness {
        overall,
        per_class,
        effective_classes,
        warnings,
    })
}
