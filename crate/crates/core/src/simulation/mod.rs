//! Synthetic classifier with a fixed probability of an informed decision.
//!
//! For each sample the gold class is drawn from the prevalence. With
//! probability `power` the classifier answers correctly; otherwise it
//! guesses by drawing a fresh class from the same prevalence, which may
//! happen to be the right one.
//!
//! Random streams are ChaCha8 keyed on the user seed, with the stream id
//! derived from the (grid point, run) pair, so every simulation in a sweep
//! is reproducible on its own and independent of scheduling.

mod sweep;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};
use crate::labels::{ClassificationSet, LabelSpace};

pub use sweep::{sweep, PrevalenceSpec, SweepConfig, SweepResult, SweepRow};

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub prevalence: ClassDistribution,
    /// Probability of an informed (always correct) decision.
    pub power: f64,
    pub n: usize,
    pub seed: u64,
    pub runs: usize,
}

impl SimulationConfig {
    pub fn new(prevalence: ClassDistribution, power: f64, n: usize, seed: u64) -> Self {
        SimulationConfig {
            prevalence,
            power,
            n,
            seed,
            runs: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_power(self.power)?;
        if self.n == 0 {
            return Err(Error::InvalidConfig(
                "sample count must be at least 1".into(),
            ));
        }
        validate_runs(self.runs)
    }
}

pub(crate) fn validate_power(power: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&power) {
        return Err(Error::InvalidConfig(format!(
            "power {power} outside [0, 1]"
        )));
    }
    Ok(())
}

pub(crate) fn validate_runs(runs: usize) -> Result<()> {
    if runs == 0 || runs as u64 > u32::MAX as u64 {
        return Err(Error::InvalidConfig(format!(
            "run count {runs} out of range"
        )));
    }
    Ok(())
}

/// Labels `c0`, `c1`, ... for a simulated class space.
pub fn class_space(classes: usize) -> Result<LabelSpace> {
    LabelSpace::new((0..classes).map(|i| format!("c{i}")))
}

/// Runs the synthetic classifier once (the first run of `config`).
pub fn simulate(config: &SimulationConfig) -> Result<ClassificationSet> {
    config.validate()?;
    simulate_stream(&config.prevalence, config.power, config.n, config.seed, 0)
}

/// Stream id for run `run` of grid point `point`.
pub(crate) fn stream_id(point: usize, run: usize) -> u64 {
    ((point as u64) << 32) | run as u64
}

pub(crate) fn simulate_stream(
    prevalence: &ClassDistribution,
    power: f64,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<ClassificationSet> {
    let dist = WeightedIndex::new(prevalence.probs())
        .map_err(|e| Error::NotADistribution(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    let pairs = (0..n)
        .map(|_| {
            let gold = dist.sample(&mut rng);
            let informed = rng.random::<f64>() < power;
            let pred = if informed {
                gold
            } else {
                dist.sample(&mut rng)
            };
            (gold, pred)
        })
        .collect();
    ClassificationSet::from_indices(prevalence.space().clone(), pairs)
}
