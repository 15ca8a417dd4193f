use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use super::{class_space, simulate_stream, stream_id, validate_power, validate_runs};
use crate::confusion::ConfusionMatrix;
use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};
use crate::metrics::{metric_suite, MetricOptions, METRIC_NAMES};
use crate::render::Scale;

/// A point on the prevalence axis of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum PrevalenceSpec {
    /// Binary prevalence `(p, 1 − p)`.
    Skew(f64),
    /// Uniform over this many classes.
    Uniform(usize),
    /// Explicit prevalence vector.
    Vector(Vec<f64>),
}

impl PrevalenceSpec {
    pub fn probs(&self) -> Vec<f64> {
        match self {
            PrevalenceSpec::Skew(p) => vec![*p, 1.0 - p],
            PrevalenceSpec::Uniform(c) => vec![1.0 / *c as f64; *c],
            PrevalenceSpec::Vector(v) => v.clone(),
        }
    }

    pub fn distribution(&self) -> Result<ClassDistribution> {
        let probs = self.probs();
        let space = class_space(probs.len())?;
        let dist = ClassDistribution::new(space, probs)
            .map_err(|e| Error::InvalidConfig(format!("prevalence {self}: {e}")))?;
        if dist.probs().iter().filter(|&&p| p > 0.0).count() < 2 {
            return Err(Error::InvalidConfig(format!(
                "prevalence {self} needs at least two classes with positive probability"
            )));
        }
        Ok(dist)
    }
}

impl std::fmt::Display for PrevalenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.probs().iter().map(|&p| short_float(p)).collect();
        f.write_str(&parts.join(";"))
    }
}

/// At most 12 decimals, trailing zeros dropped.
fn short_float(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

impl FromStr for PrevalenceSpec {
    type Err = Error;

    /// `0.9` (binary skew), `uniform:5`, or `0.6,0.2,0.2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidConfig(format!("invalid prevalence '{s}'"));
        if let Some(c) = s.strip_prefix("uniform:") {
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            return if c >= 2 {
                Ok(PrevalenceSpec::Uniform(c))
            } else {
                Err(bad())
            };
        }
        let values = s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match values.as_slice() {
            [p] if (0.0..=1.0).contains(p) => Ok(PrevalenceSpec::Skew(*p)),
            [_] => Err(bad()),
            _ => Ok(PrevalenceSpec::Vector(values)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub prevalences: Vec<PrevalenceSpec>,
    pub powers: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    pub runs: usize,
    /// Evaluate grid points on the rayon pool. Results do not depend on it.
    pub parallel: bool,
}

/// Mean and spread of one metric at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub prevalence: String,
    pub power: f64,
    pub metric: String,
    pub mean: f64,
    /// Population standard deviation across runs.
    pub std: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub n: usize,
    pub seed: u64,
}

impl SweepResult {
    pub fn row(&self, prevalence: &str, power: f64, metric: &str) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.prevalence == prevalence && r.power == power && r.metric == metric)
    }

    /// CSV with columns `prevalence_spec,power,metric,mean,std,runs,n,seed`.
    pub fn to_csv(&self, scale: Scale) -> String {
        let mut out = String::from("prevalence_spec,power,metric,mean,std,runs,n,seed\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.prevalence,
                r.power,
                r.metric,
                scale.apply(r.mean),
                scale.apply(r.std),
                r.runs,
                self.n,
                self.seed
            );
        }
        out
    }
}

/// Simulates every (prevalence, power) pair `runs` times and summarises
/// each metric by mean and standard deviation.
///
/// Rows are ordered by prevalence, then power, then metric.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    if config.prevalences.is_empty() || config.powers.is_empty() {
        return Err(Error::InvalidConfig("sweep grids must not be empty".into()));
    }
    if config.n == 0 {
        return Err(Error::InvalidConfig(
            "sample count must be at least 1".into(),
        ));
    }
    validate_runs(config.runs)?;
    for &p in &config.powers {
        validate_power(p)?;
    }
    let distributions = config
        .prevalences
        .iter()
        .map(PrevalenceSpec::distribution)
        .collect::<Result<Vec<_>>>()?;

    let points: Vec<(usize, usize)> = (0..distributions.len())
        .flat_map(|d| (0..config.powers.len()).map(move |p| (d, p)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|point| (0..config.runs).map(move |run| (point, run)))
        .collect();

    let run_job = |&(point, run): &(usize, usize)| -> Result<Vec<f64>> {
        let (d, p) = points[point];
        let set = simulate_stream(
            &distributions[d],
            config.powers[p],
            config.n,
            config.seed,
            stream_id(point, run),
        )?;
        let report = metric_suite(&ConfusionMatrix::from_set(&set)?, &MetricOptions::default())?;
        METRIC_NAMES.iter().map(|m| report.value(m)).collect()
    };
    let values: Vec<Vec<f64>> = if config.parallel {
        jobs.par_iter().map(run_job).collect::<Result<_>>()?
    } else {
        jobs.iter().map(run_job).collect::<Result<_>>()?
    };

    let mut rows = Vec::with_capacity(points.len() * METRIC_NAMES.len());
    for (point, &(d, p)) in points.iter().enumerate() {
        let runs = &values[point * config.runs..(point + 1) * config.runs];
        for (k, metric) in METRIC_NAMES.iter().enumerate() {
            let samples: Vec<f64> = runs.iter().map(|v| v[k]).collect();
            let (mean, std) = mean_std(&samples);
            rows.push(SweepRow {
                prevalence: config.prevalences[d].to_string(),
                power: config.powers[p],
                metric: metric.to_string(),
                mean,
                std,
                runs: config.runs,
            });
        }
    }
    Ok(SweepResult {
        rows,
        n: config.n,
        seed: config.seed,
    })
}

fn mean_std(samples: &[f64]) -> (f64, f64) {
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / k;
    (mean, var.sqrt())
}
