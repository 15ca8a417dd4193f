//! Classification evaluation with chance-corrected metrics.
//!
//! The crate is organised around a [`ConfusionMatrix`] built from
//! (gold, predicted) label pairs. On top of it sit:
//!
//! - [`metrics`]: accuracy, balanced accuracy, F1 (per class, macro, micro),
//!   Cohen's Kappa, bookmaker informedness, MCC (R_K and macro) and
//!   normalised information transfer, collected into a [`MetricReport`].
//! - [`ingestion`]: prediction files (CSV, TSV, JSONL), score
//!   discretisation, class-distribution files and baseline predictors.
//! - [`simulation`]: a synthetic classifier with a fixed probability of an
//!   informed decision, and seeded parameter sweeps over it.
//! - [`render`] and [`cli`]: table, CSV and JSON output and the `informed`
//!   command-line tool.
//!
//! ```
//! use informed::{ClassificationSet, ConfusionMatrix, metrics};
//!
//! let set = ClassificationSet::from_sequences(
//!     &["yes", "yes", "no", "no"],
//!     &["yes", "no", "no", "no"],
//! ).unwrap();
//! let cm = ConfusionMatrix::from_set(&set).unwrap();
//! let inf = metrics::informedness(&cm, None).unwrap();
//! assert!((inf.overall - 0.5).abs() < 1e-12);
//! ```

pub mod cli;
pub mod confusion;
pub mod distribution;
pub mod error;
pub mod ingestion;
pub mod labels;
pub mod metrics;
pub mod render;
pub mod simulation;

pub use confusion::{ConfusionMatrix, ContingencyCells};
pub use distribution::{entropy_bits, ClassDistribution};
pub use error::{Error, Result};
pub use labels::{ClassificationSet, LabelSpace};
pub use metrics::{MetricOptions, MetricReport, Warning, WarningCode};
