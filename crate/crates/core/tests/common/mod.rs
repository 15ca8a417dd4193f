//! Sample-level reference implementations.
//!
//! Everything here works on the raw (gold, pred) index pairs, one sample at
//! a time, without going through a confusion matrix. The library computes
//! the same quantities from aggregated counts, so agreement between the two
//! is a meaningful check.

#![allow(dead_code)]

use informed::metrics::{
    ACCURACY, BALANCED_ACCURACY, F1_MACRO, F1_MICRO, INFORMEDNESS, KAPPA, MCC, MCC_MACRO, NIT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Oracle {
    pub classes: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Oracle {
    pub fn new(classes: usize, pairs: Vec<(usize, usize)>) -> Self {
        Oracle { classes, pairs }
    }

    fn n(&self) -> f64 {
        self.pairs.len() as f64
    }

    fn count(&self, f: impl Fn(usize, usize) -> bool) -> f64 {
        self.pairs.iter().filter(|&&(g, p)| f(g, p)).count() as f64
    }

    pub fn gold_populated(&self) -> Vec<usize> {
        (0..self.classes)
            .filter(|&c| self.pairs.iter().any(|&(g, _)| g == c))
            .collect()
    }

    pub fn accuracy(&self) -> f64 {
        self.count(|g, p| g == p) / self.n()
    }

    fn recall(&self, c: usize) -> f64 {
        self.count(|g, p| g == c && p == c) / self.count(|g, _| g == c)
    }

    pub fn balanced_accuracy(&self) -> f64 {
        let classes = self.gold_populated();
        classes.iter().map(|&c| self.recall(c)).sum::<f64>() / classes.len() as f64
    }

    /// Sum of per-sample bookmaker payoffs with odds from the gold prevalence.
    pub fn informedness(&self) -> f64 {
        let n = self.n();
        let ceff = self.gold_populated().len() as f64;
        let total: f64 = self
            .pairs
            .iter()
            .map(|&(g, p)| {
                if g == p {
                    let q = self.count(|gg, _| gg == p) / n;
                    (1.0 - q) / q
                } else {
                    -1.0
                }
            })
            .sum();
        total / (n * (ceff - 1.0))
    }

    pub fn informedness_closed_form(&self) -> f64 {
        let classes = self.gold_populated();
        let sum: f64 = classes.iter().map(|&c| self.recall(c)).sum();
        (sum - 1.0) / (classes.len() as f64 - 1.0)
    }

    pub fn per_class_f1(&self, c: usize) -> f64 {
        let tp = self.count(|g, p| g == c && p == c);
        let fp = self.count(|g, p| g != c && p == c);
        let fn_ = self.count(|g, p| g == c && p != c);
        if tp + fp + fn_ == 0.0 {
            0.0
        } else {
            2.0 * tp / (2.0 * tp + fp + fn_)
        }
    }

    pub fn f1_macro(&self) -> f64 {
        let classes = self.gold_populated();
        classes.iter().map(|&c| self.per_class_f1(c)).sum::<f64>() / classes.len() as f64
    }

    /// Micro F1 from pooled per-class tp, fp and fn.
    pub fn f1_micro(&self) -> f64 {
        let (mut tp, mut fp, mut fn_) = (0.0, 0.0, 0.0);
        for c in 0..self.classes {
            tp += self.count(|g, p| g == c && p == c);
            fp += self.count(|g, p| g != c && p == c);
            fn_ += self.count(|g, p| g == c && p != c);
        }
        2.0 * tp / (2.0 * tp + fp + fn_)
    }

    pub fn kappa(&self) -> f64 {
        let n = self.n();
        let po = self.accuracy();
        let pe: f64 = (0..self.classes)
            .map(|c| (self.count(|_, p| p == c) / n) * (self.count(|g, _| g == c) / n))
            .sum();
        if (1.0 - pe).abs() < 1e-15 {
            0.0
        } else {
            (po - pe) / (1.0 - pe)
        }
    }

    /// Pearson correlation of two real sequences; 0 if either is constant.
    pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        for (a, b) in x.iter().zip(y) {
            sxy += (a - mx) * (b - my);
            sxx += (a - mx) * (a - mx);
            syy += (b - my) * (b - my);
        }
        if sxx == 0.0 || syy == 0.0 {
            0.0
        } else {
            sxy / (sxx * syy).sqrt()
        }
    }

    pub fn per_class_mcc(&self, c: usize) -> f64 {
        let x: Vec<f64> = self
            .pairs
            .iter()
            .map(|&(_, p)| (p == c) as u8 as f64)
            .collect();
        let y: Vec<f64> = self
            .pairs
            .iter()
            .map(|&(g, _)| (g == c) as u8 as f64)
            .collect();
        Self::pearson(&x, &y)
    }

    /// Multiclass MCC as the correlation of one-hot encoded predictions and
    /// gold labels, summing covariances over the class dimensions.
    pub fn mcc(&self) -> f64 {
        let n = self.n();
        let mut cov_xy = 0.0;
        let mut cov_xx = 0.0;
        let mut cov_yy = 0.0;
        for k in 0..self.classes {
            let x: Vec<f64> = self
                .pairs
                .iter()
                .map(|&(_, p)| (p == k) as u8 as f64)
                .collect();
            let y: Vec<f64> = self
                .pairs
                .iter()
                .map(|&(g, _)| (g == k) as u8 as f64)
                .collect();
            let mx = x.iter().sum::<f64>() / n;
            let my = y.iter().sum::<f64>() / n;
            for (a, b) in x.iter().zip(&y) {
                cov_xy += (a - mx) * (b - my);
                cov_xx += (a - mx) * (a - mx);
                cov_yy += (b - my) * (b - my);
            }
        }
        if cov_xx == 0.0 || cov_yy == 0.0 {
            0.0
        } else {
            cov_xy / (cov_xx * cov_yy).sqrt()
        }
    }

    pub fn mcc_macro(&self) -> f64 {
        let classes = self.gold_populated();
        classes.iter().map(|&c| self.per_class_mcc(c)).sum::<f64>() / classes.len() as f64
    }

    /// Plug-in mutual information in bits, as H(gold) + H(pred) − H(gold, pred).
    pub fn mutual_information(&self) -> f64 {
        let n = self.n();
        let h = |counts: Vec<f64>| -> f64 {
            counts
                .into_iter()
                .filter(|&c| c > 0.0)
                .map(|c| -(c / n) * (c / n).log2())
                .sum()
        };
        let k = self.classes;
        let hg = h((0..k).map(|c| self.count(|g, _| g == c)).collect());
        let hp = h((0..k).map(|c| self.count(|_, p| p == c)).collect());
        let hj = h((0..k * k)
            .map(|i| self.count(|g, p| g == i / k && p == i % k))
            .collect());
        (hg + hp - hj).max(0.0)
    }

    pub fn nit(&self) -> f64 {
        let classes = self.gold_populated().len() as f64;
        2f64.powf(self.mutual_information() - classes.log2())
            .min(1.0)
    }

    /// Every aggregate metric, keyed like the library report.
    pub fn all(&self) -> Vec<(&'static str, f64)> {
        vec![
            (ACCURACY, self.accuracy()),
            (BALANCED_ACCURACY, self.balanced_accuracy()),
            (F1_MACRO, self.f1_macro()),
            (F1_MICRO, self.f1_micro()),
            (KAPPA, self.kappa()),
            (INFORMEDNESS, self.informedness()),
            (MCC, self.mcc()),
            (MCC_MACRO, self.mcc_macro()),
            (NIT, self.nit()),
        ]
    }
}

/// Random sample of `n` pairs over `classes` classes with at least two gold
/// classes present. Predictions mix copies of gold with skewed noise so
/// both strong and weak classifiers show up.
pub fn random_pairs(rng: &mut ChaCha8Rng, classes: usize, n: usize) -> Vec<(usize, usize)> {
    let skill: f64 = rng.random();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let g = (rng.random::<f64>().powi(2) * classes as f64) as usize;
            let p = if rng.random::<f64>() < skill {
                g
            } else {
                rng.random_range(0..classes)
            };
            (g, p)
        })
        .collect();
    if pairs.iter().all(|&(g, _)| g == pairs[0].0) {
        let other = (pairs[0].0 + 1) % classes;
        pairs[0].0 = other;
    }
    pairs
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
