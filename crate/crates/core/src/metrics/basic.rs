use super::{label_list, mean, ClassScope, Warning, WarningCode};
use crate::confusion::ConfusionMatrix;
use crate::error::Result;

/// Fraction of samples on the diagonal.
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    cm.require_nonempty()?;
    Ok(cm.trace() as f64 / cm.n() as f64)
}

/// Mean recall over classes that have at least one gold sample.
pub fn balanced_accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    cm.require_nonempty()?;
    Ok(mean(
        (0..cm.num_classes()).filter_map(|c| cm.contingency(c).recall()),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FMeasures {
    /// One value per class of the label space.
    pub per_class: Vec<f64>,
    pub macro_: f64,
    pub micro: f64,
    pub warnings: Vec<Warning>,
}

/// Per-class F1 with macro and micro averages.
///
/// Per-class F1 is `tp / (tp + (fp + fn) / 2)`, zero when the class never
/// occurs on either side. The macro average runs over the classes selected
/// by `scope`.
pub fn f_measures(cm: &ConfusionMatrix, scope: ClassScope) -> Result<FMeasures> {
    cm.require_nonempty()?;
    let mut warnings = Vec::new();
    let mut undefined = Vec::new();
    let per_class: Vec<f64> = (0..cm.num_classes())
        .map(|c| {
            let cells = cm.contingency(c);
            let den = 2 * cells.tp + cells.fp + cells.fn_;
            if den == 0 {
                undefined.push(c);
                0.0
            } else {
                (2 * cells.tp) as f64 / den as f64
            }
        })
        .collect();

    let classes = scope.classes(cm);
    let undefined: Vec<usize> = undefined
        .into_iter()
        .filter(|c| classes.contains(c))
        .collect();
    if !undefined.is_empty() {
        warnings.push(Warning::new(
            WarningCode::F1Undefined,
            format!(
                "F1 set to 0 for absent classes {}",
                label_list(cm, &undefined)
            ),
        ));
    }
    if scope == ClassScope::Observed && classes.len() < cm.num_classes() {
        let excluded: Vec<usize> = (0..cm.num_classes())
            .filter(|c| !classes.contains(c))
            .collect();
        warnings.push(Warning::new(
            WarningCode::ClassExcluded,
            format!(
                "classes without gold samples excluded from macro averages: {}",
                label_list(cm, &excluded)
            ),
        ));
    }

    // Summed fp and fn both equal n - trace.
    let tp = cm.trace();
    let micro = (2 * tp) as f64 / (2 * tp + 2 * (cm.n() - tp)) as f64;

    Ok(FMeasures {
        macro_: mean(classes.iter().map(|&c| per_class[c])),
        per_class,
        micro,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn fixture_f1() -> ConfusionMatrix {
        ConfusionMatrix::from_unlabeled_rows(&[vec![60, 10], vec![20, 10]]).unwrap()
    }

    #[test]
    fn accuracy_examples() {
        let diag = ConfusionMatrix::from_unlabeled_rows(&[vec![5, 0], vec![0, 5]]).unwrap();
        assert_eq!(accuracy(&diag).unwrap(), 1.0);
        assert_eq!(accuracy(&fixture_f1()).unwrap(), 0.7);
        let off = ConfusionMatrix::from_unlabeled_rows(&[vec![0, 5], vec![5, 0]]).unwrap();
        assert_eq!(accuracy(&off).unwrap(), 0.0);
        let empty = ConfusionMatrix::from_unlabeled_rows(&[vec![0]]).unwrap();
        assert_eq!(accuracy(&empty).unwrap_err(), Error::EmptyMatrix);
    }

    #[test]
    fn balanced_accuracy_examples() {
        assert_eq!(balanced_accuracy(&fixture_f1()).unwrap(), 0.625);
        let diag = ConfusionMatrix::from_unlabeled_rows(&[vec![5, 0], vec![0, 5]]).unwrap();
        assert_eq!(balanced_accuracy(&diag).unwrap(), 1.0);
    }

    #[test]
    fn f_measures_fixture() {
        let f = f_measures(&fixture_f1(), ClassScope::Observed).unwrap();
        assert!((f.per_class[0] - 0.8).abs() < 1e-15);
        assert!((f.per_class[1] - 0.4).abs() < 1e-15);
        assert!((f.macro_ - 0.6).abs() < 1e-15);
        assert_eq!(f.micro, 0.7);
        assert!(f.warnings.is_empty());
    }

    #[test]
    fn absent_class_excluded_by_default() {
        // class 2 never occurs in gold but is predicted once
        let cm =
            ConfusionMatrix::from_unlabeled_rows(&[vec![4, 0, 0], vec![0, 3, 0], vec![1, 0, 0]])
                .unwrap();
        let f = f_measures(&cm, ClassScope::Observed).unwrap();
        assert_eq!(f.per_class[2], 0.0);
        assert!((f.macro_ - (8.0 / 9.0 + 1.0) / 2.0).abs() < 1e-15);
        assert_eq!(f.warnings[0].code, WarningCode::ClassExcluded);

        let f = f_measures(&cm, ClassScope::All).unwrap();
        assert!((f.macro_ - (8.0 / 9.0 + 1.0) / 3.0).abs() < 1e-15);
        assert!(f.warnings.is_empty());
    }

    #[test]
    fn empty_class_in_explicit_scope_warns() {
        let cm = ConfusionMatrix::from_unlabeled_rows(&[vec![3, 0], vec![0, 0]]).unwrap();
        let f = f_measures(&cm, ClassScope::All).unwrap();
        assert_eq!(f.per_class, vec![1.0, 0.0]);
        assert_eq!(f.macro_, 0.5);
        assert_eq!(f.warnings[0].code, WarningCode::F1Undefined);
    }
}
