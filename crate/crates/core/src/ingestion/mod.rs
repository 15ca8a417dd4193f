//! Reading prediction and distribution files, discretising continuous
//! scores, and generating baseline predictions.

mod baseline;
mod discretize;
mod distribution_file;
mod parse;

pub use baseline::{baseline, BaselineMode};
pub use discretize::{discretize_scores, Discretized};
pub use distribution_file::load_distribution;
pub use parse::{
    parse_gold, parse_predictions, Format, GoldRecord, GroupedDataset, LabelPolicy,
    PredictionRecord, Schema, UNGROUPED,
};
