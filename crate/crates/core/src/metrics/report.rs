use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::*;
use crate::confusion::ConfusionMatrix;
use crate::error::{Error, Result};

/// Every metric of this module for one confusion matrix.
///
/// `values` and `per_class` hold [0, 1]-scale scalars in a fixed order
/// (see [`METRIC_NAMES`] and [`PER_CLASS_NAMES`]). Entropies and mutual
/// information are in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub labels: Vec<String>,
    pub n: u64,
    pub c_eff: usize,
    pub entropy_gold: f64,
    pub mutual_information: f64,
    pub values: IndexMap<String, f64>,
    pub per_class: IndexMap<String, Vec<f64>>,
    pub warnings: Vec<Warning>,
}

impl MetricReport {
    pub fn get(&self, metric: &str) -> Option<f64> {
        self.values.get(metric).copied()
    }

    /// Looks up a metric, failing with `MissingMetric`.
    pub fn value(&self, metric: &str) -> Result<f64> {
        self.get(metric)
            .ok_or_else(|| Error::MissingMetric(metric.to_string()))
    }
}

/// Computes the full metric suite.
pub fn metric_suite(cm: &ConfusionMatrix, options: &MetricOptions) -> Result<MetricReport> {
    cm.require_nonempty()?;
    let scope = options.scope;
    let f = f_measures(cm, scope)?;
    let kappa = cohen_kappa(cm)?;
    let inf = informedness(cm, options.priors.as_ref())?;
    let m = mcc(cm, scope)?;
    let info = nit(cm, scope)?;

    let mut warnings = f.warnings.clone();
    warnings.extend(kappa.warning.clone());
    warnings.extend(inf.warnings.iter().cloned());
    warnings.extend(m.warnings.iter().cloned());

    let values: IndexMap<String, f64> = [
        (ACCURACY, accuracy(cm)?),
        (BALANCED_ACCURACY, balanced_accuracy(cm)?),
        (F1_MACRO, f.macro_),
        (F1_MICRO, f.micro),
        (KAPPA, kappa.value),
        (INFORMEDNESS, inf.overall),
        (MCC, m.multiclass),
        (MCC_MACRO, m.macro_),
        (NIT, info.nit),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();

    let cells: Vec<_> = (0..cm.num_classes()).map(|c| cm.contingency(c)).collect();
    let per_class: IndexMap<String, Vec<f64>> = [
        (
            "precision",
            cells.iter().map(|x| x.precision().unwrap_or(0.0)).collect(),
        ),
        (
            "recall",
            cells.iter().map(|x| x.recall().unwrap_or(0.0)).collect(),
        ),
        ("f1", f.per_class),
        (INFORMEDNESS, inf.per_class),
        (MCC, m.per_class),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();

    Ok(MetricReport {
        labels: cm.space().labels().to_vec(),
        n: cm.n(),
        c_eff: cm.effective_classes(),
        entropy_gold: cm.prevalence()?.entropy(),
        mutual_information: info.mutual_information,
        values,
        per_class,
        warnings,
    })
}

/// Metric-by-metric difference `system − baseline`.
///
/// Per-class deltas are aligned by label, so the two label spaces may list
/// the same classes in different orders. Count fields are taken from
/// `system`.
pub fn delta_report(system: &MetricReport, baseline: &MetricReport) -> Result<MetricReport> {
    if !same_keys(&system.values, &baseline.values) {
        return Err(Error::IncomparableReports("metric sets differ".into()));
    }
    if !same_keys(&system.per_class, &baseline.per_class) {
        return Err(Error::IncomparableReports(
            "per-class metric sets differ".into(),
        ));
    }
    let align: Vec<usize> = system
        .labels
        .iter()
        .map(|l| baseline.labels.iter().position(|b| b == l))
        .collect::<Option<_>>()
        .filter(|_| system.labels.len() == baseline.labels.len())
        .ok_or_else(|| Error::IncomparableReports("label spaces differ".into()))?;

    let values = system
        .values
        .iter()
        .map(|(k, v)| (k.clone(), v - baseline.values[k]))
        .collect();
    let per_class = system
        .per_class
        .iter()
        .map(|(k, v)| {
            let base = &baseline.per_class[k];
            let d = v.iter().zip(&align).map(|(s, &j)| s - base[j]).collect();
            (k.clone(), d)
        })
        .collect();

    Ok(MetricReport {
        labels: system.labels.clone(),
        n: system.n,
        c_eff: system.c_eff,
        entropy_gold: system.entropy_gold,
        mutual_information: system.mutual_information - baseline.mutual_information,
        values,
        per_class,
        warnings: system
            .warnings
            .iter()
            .chain(&baseline.warnings)
            .cloned()
            .collect(),
    })
}

fn same_keys<V>(a: &IndexMap<String, V>, b: &IndexMap<String, V>) -> bool {
    a.len() == b.len() && a.keys().all(|k| b.contains_key(k))
}

/// Uniformly weighted mean of one metric across reports.
pub fn task_mean(reports: &[MetricReport], metric: &str) -> Result<f64> {
    if reports.is_empty() {
        return Err(Error::NoReports);
    }
    let sum = reports
        .iter()
        .map(|r| r.value(metric))
        .sum::<Result<f64>>()?;
    Ok(sum / reports.len() as f64)
}
