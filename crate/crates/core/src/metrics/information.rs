use super::ClassScope;
use crate::confusion::ConfusionMatrix;
use crate::error::Result;

/// Normalised information transfer and its ingredients (all in bits).
#[derive(Debug, Clone, PartialEq)]
pub struct Nit {
    pub nit: f64,
    pub mutual_information: f64,
    /// log2 of the number of scoped classes.
    pub reference_entropy: f64,
}

/// `2^(MI(pred; gold) − log2 C)` with the plug-in mutual information of the
/// empirical joint distribution.
pub fn nit(cm: &ConfusionMatrix, scope: ClassScope) -> Result<Nit> {
    cm.require_nonempty()?;
    let n = cm.n() as f64;
    let pred = cm.predicted_counts();
    let gold = cm.gold_counts();

    let mut mi = 0.0;
    for (p, &row) in pred.iter().enumerate() {
        for (g, &col) in gold.iter().enumerate() {
            let joint = cm.cell(p, g);
            if joint > 0 {
                let pj = joint as f64 / n;
                mi += pj * ((joint as f64 * n) / (row as f64 * col as f64)).log2();
            }
        }
    }
    let mutual_information = mi.max(0.0);
    let classes = scope.classes(cm).len().max(1);
    let reference_entropy = (classes as f64).log2();
    let nit = 2f64.powf(mutual_information - reference_entropy).min(1.0);
    Ok(Nit {
        nit,
        mutual_information,
        reference_entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_uniform() {
        for c in 2..6 {
            let rows: Vec<Vec<u64>> = (0..c)
                .map(|i| (0..c).map(|j| if i == j { 7 } else { 0 }).collect())
                .collect();
            let cm = ConfusionMatrix::from_unlabeled_rows(&rows).unwrap();
            let r = nit(&cm, ClassScope::Observed).unwrap();
            assert!((r.mutual_information - (c as f64).log2()).abs() < 1e-12);
            assert!((r.nit - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_binary() {
        let cm = ConfusionMatrix::from_unlabeled_rows(&[vec![25, 25], vec![25, 25]]).unwrap();
        let r = nit(&cm, ClassScope::Observed).unwrap();
        assert_eq!(r.mutual_information, 0.0);
        assert_eq!(r.nit, 0.5);
    }

    #[test]
    fn fixture_f1() {
        let cm = ConfusionMatrix::from_unlabeled_rows(&[vec![60, 10], vec![20, 10]]).unwrap();
        let r = nit(&cm, ClassScope::Observed).unwrap();
        assert!((r.mutual_information - 0.0323).abs() < 1e-4);
        assert!((r.nit - 0.511).abs() < 1e-3);
    }
}
