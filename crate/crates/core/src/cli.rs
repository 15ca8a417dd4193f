//! The `informed` command-line tool.
//!
//! Exit codes: 0 on success (possibly with warnings on stderr), 1 when the
//! data cannot be evaluated, 2 on usage errors (bad flags, unreadable
//! files).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::confusion::ConfusionMatrix;
use crate::error::{Error, Result};
use crate::ingestion::{
    baseline, discretize_scores, load_distribution, parse_gold, parse_predictions, BaselineMode,
    Format, GroupedDataset, LabelPolicy, Schema,
};
use crate::labels::LabelSpace;
use crate::metrics::{delta_report, metric_suite, ClassScope, MetricOptions, Warning, WarningCode};
use crate::render::{render, OutputFormat, Scale, Section};
use crate::simulation::{sweep, PrevalenceSpec, SweepConfig};

#[derive(Debug, Parser)]
#[command(
    name = "informed",
    version,
    about = "Chance-corrected evaluation of classifier predictions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a predictions file
    Evaluate(EvaluateArgs),
    /// Score a system against a baseline and report the differences
    Compare(CompareArgs),
    /// Simulate one synthetic classifier configuration
    Simulate(SimulateArgs),
    /// Sweep the synthetic classifier over prevalences and powers
    Sweep(SweepArgs),
    /// Write input-ignoring baseline predictions for a gold file
    Baseline(BaselineArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Csv,
    Tsv,
    Jsonl,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Csv => Format::Csv,
            InputFormat::Tsv => Format::Tsv,
            InputFormat::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    MostCommon,
    PrevalenceSample,
}

#[derive(Debug, Clone, Args)]
pub struct ReadOptions {
    /// Input format; guessed from the file extension when omitted
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
    /// Class distribution (e.g. from training data) for informedness odds
    #[arg(long)]
    pub priors: Option<PathBuf>,
    /// Closed label space; any other label is an error
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<String>>,
    /// Round numeric labels to the integers in LO,HI
    #[arg(long, value_name = "LO,HI")]
    pub discretize: Option<String>,
    #[arg(long, default_value = "gold")]
    pub gold_column: String,
    #[arg(long, default_value = "pred")]
    pub pred_column: String,
    #[arg(long, default_value = "group")]
    pub group_column: String,
}

#[derive(Debug, Clone, Args)]
pub struct WriteOptions {
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
    /// Scale metric values by 100
    #[arg(long)]
    pub percent: bool,
}

impl WriteOptions {
    fn scale(&self) -> Scale {
        if self.percent {
            Scale::Percent
        } else {
            Scale::Unit
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub pred: PathBuf,
    /// Also report every group separately
    #[arg(long)]
    pub group: bool,
    /// Evaluate groups over the label space of the whole file
    #[arg(long)]
    pub shared_space: bool,
    #[command(flatten)]
    pub read: ReadOptions,
    #[command(flatten)]
    pub write: WriteOptions,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub baseline: PathBuf,
    #[command(flatten)]
    pub read: ReadOptions,
    #[command(flatten)]
    pub write: WriteOptions,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Class prevalence: `p` for binary (p, 1-p), `uniform:C`, or `p1,p2,...`
    #[arg(long, default_value = "0.5")]
    pub prevalence: String,
    /// Probability of an informed decision
    #[arg(long)]
    pub power: f64,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    #[arg(long)]
    pub percent: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    pub powers: Vec<f64>,
    /// Prevalence specs separated by `;` (see `simulate --prevalence`)
    #[arg(
        long,
        value_delimiter = ';',
        default_value = "0.5;0.9;uniform:5;0.6,0.2,0.1,0.05,0.05"
    )]
    pub prevalences: Vec<String>,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    #[arg(long)]
    pub percent: bool,
    /// Evaluate grid points on one thread
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Training class distribution (JSON object or label,count CSV)
    #[arg(long)]
    pub train: PathBuf,
    /// File with a gold column
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
    #[arg(long, default_value = "gold")]
    pub gold_column: String,
    #[arg(long, default_value = "group")]
    pub group_column: String,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Evaluate(args) => cmd_evaluate(&args, out, err),
        Command::Compare(args) => cmd_compare(&args, out, err),
        Command::Simulate(args) => cmd_simulate(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Baseline(args) => cmd_baseline(&args, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("cannot open {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn warn(err: &mut dyn Write, scope: &str, warnings: &[Warning]) {
    for w in warnings {
        let _ = writeln!(err, "warning [{scope}]: {w}");
    }
}

impl ReadOptions {
    fn schema(&self) -> Schema {
        Schema {
            gold: self.gold_column.clone(),
            pred: self.pred_column.clone(),
            group: self.group_column.clone(),
        }
    }

    fn policy(&self) -> Result<LabelPolicy> {
        match &self.labels {
            None => Ok(LabelPolicy::Union),
            Some(labels) => LabelSpace::new(labels.iter().map(|l| l.trim().to_string()))
                .map(LabelPolicy::Strict)
                .map_err(|e| Error::InvalidConfig(format!("--labels: {e}"))),
        }
    }

    fn metric_options(&self) -> Result<MetricOptions> {
        let priors = match &self.priors {
            Some(path) => Some(load_distribution(open(path)?)?),
            None => None,
        };
        Ok(MetricOptions {
            scope: if self.labels.is_some() {
                ClassScope::All
            } else {
                ClassScope::Observed
            },
            priors,
        })
    }

    fn discretize_range(&self) -> Result<Option<(f64, f64)>> {
        let Some(spec) = &self.discretize else {
            return Ok(None);
        };
        let bad = || Error::InvalidConfig(format!("--discretize expects LO,HI, got '{spec}'"));
        let (lo, hi) = spec.split_once(',').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        Ok(Some((lo, hi)))
    }

    /// Reads a predictions file under `policy`.
    fn load(
        &self,
        path: &Path,
        policy: &LabelPolicy,
        err: &mut dyn Write,
    ) -> Result<GroupedDataset> {
        let format = self
            .input_format
            .map(Format::from)
            .unwrap_or_else(|| Format::from_path(path));
        let schema = self.schema();
        let Some((lo, hi)) = self.discretize_range()? else {
            return parse_predictions(open(path)?, format, policy, &schema);
        };

        let raw = parse_predictions(open(path)?, format, &LabelPolicy::Union, &schema)?;
        let mut records = raw.records().to_vec();
        let mut scores = Vec::with_capacity(records.len() * 2);
        for r in &records {
            for label in [&r.gold, &r.pred] {
                let v: f64 = label.parse().map_err(|_| Error::Parse {
                    line: r.line,
                    message: format!("'{label}' is not numeric"),
                })?;
                scores.push(v);
            }
        }
        let discretized = discretize_scores(&scores, lo, hi)?;
        warn(err, &path.display().to_string(), &discretized.warnings);
        for (r, pair) in records.iter_mut().zip(discretized.labels.chunks(2)) {
            r.gold = pair[0].clone();
            r.pred = pair[1].clone();
        }
        GroupedDataset::from_records(records, policy)
    }
}

fn evaluate_dataset(
    name: &str,
    dataset: &GroupedDataset,
    options: &MetricOptions,
) -> Result<Section> {
    let cm = ConfusionMatrix::from_set(&dataset.overall())?;
    let mut report = metric_suite(&cm, options)?;
    let mut warnings = dataset.warnings().to_vec();
    warnings.append(&mut report.warnings);
    report.warnings = warnings;
    Ok(Section::new(name, report))
}

pub fn cmd_evaluate(args: &EvaluateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let policy = args.read.policy()?;
    let options = args.read.metric_options()?;
    let dataset = args.read.load(&args.pred, &policy, err)?;

    let mut sections = vec![evaluate_dataset("overall", &dataset, &options)?];
    if args.group {
        let groups = if args.shared_space {
            dataset.shared_groups()
        } else {
            dataset.groups().clone()
        };
        for (key, set) in &groups {
            let result = ConfusionMatrix::from_set(set).and_then(|cm| metric_suite(&cm, &options));
            match result {
                Ok(report) => sections.push(Section::new(key.clone(), report)),
                Err(e) => warn(
                    err,
                    key,
                    &[Warning::new(
                        WarningCode::GroupSkipped,
                        format!("group '{key}' ({} samples) not evaluated: {e}", set.len()),
                    )],
                ),
            }
        }
    }
    for s in &sections {
        warn(err, &s.name, &s.report.warnings);
    }
    let rendered = render(&sections, args.write.format, args.write.scale())?;
    emit(out, &rendered.payload)
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let policy = args.read.policy()?;
    let options = args.read.metric_options()?;
    let (system, baseline) = match &policy {
        LabelPolicy::Strict(_) => {
            let system = args.read.load(&args.system, &policy, err)?;
            let baseline = args.read.load(&args.baseline, &policy, err)?;
            let gold = |d: &GroupedDataset| {
                let mut labels: Vec<String> = d.records().iter().map(|r| r.gold.clone()).collect();
                labels.sort();
                labels.dedup();
                labels
            };
            if gold(&system) != gold(&baseline) {
                return Err(Error::IncomparableReports(
                    "system and baseline gold labels differ".into(),
                ));
            }
            (system, baseline)
        }
        LabelPolicy::Union => {
            // Both sides are scored over the union of their label spaces.
            let system = args.read.load(&args.system, &policy, err)?;
            let baseline = args.read.load(&args.baseline, &policy, err)?;
            let union =
                LabelSpace::from_observed(system.space().iter().chain(baseline.space().iter()))?;
            let shared = LabelPolicy::Strict(union);
            let rebuilt =
                |d: &GroupedDataset| GroupedDataset::from_records(d.records().to_vec(), &shared);
            let (s, b) = (rebuilt(&system)?, rebuilt(&baseline)?);
            warn(err, "system", system.warnings());
            warn(err, "baseline", baseline.warnings());
            (s, b)
        }
    };

    let system = evaluate_dataset("system", &system, &options)?;
    let baseline = evaluate_dataset("baseline", &baseline, &options)?;
    let mut delta = Section::new("delta", delta_report(&system.report, &baseline.report)?);
    delta.report.warnings.clear();
    for s in [&system, &baseline] {
        warn(err, &s.name, &s.report.warnings);
    }
    let rendered = render(
        &[system, baseline, delta],
        args.write.format,
        args.write.scale(),
    )?;
    emit(out, &rendered.payload)
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let config = SweepConfig {
        prevalences: vec![args.prevalence.parse::<PrevalenceSpec>()?],
        powers: vec![args.power],
        n: args.n,
        seed: args.seed,
        runs: args.runs,
        parallel: true,
    };
    let scale = if args.percent {
        Scale::Percent
    } else {
        Scale::Unit
    };
    emit(out, sweep(&config)?.to_csv(scale).as_bytes())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let config = SweepConfig {
        prevalences: args
            .prevalences
            .iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.parse::<PrevalenceSpec>())
            .collect::<Result<_>>()?,
        powers: args.powers.clone(),
        n: args.n,
        seed: args.seed,
        runs: args.runs,
        parallel: !args.serial,
    };
    let scale = if args.percent {
        Scale::Percent
    } else {
        Scale::Unit
    };
    emit(out, sweep(&config)?.to_csv(scale).as_bytes())
}

pub fn cmd_baseline(args: &BaselineArgs, out: &mut dyn Write) -> Result<()> {
    let train = load_distribution(open(&args.train)?)?;
    let format = args
        .input_format
        .map(Format::from)
        .unwrap_or_else(|| Format::from_path(&args.gold));
    let schema = Schema {
        gold: args.gold_column.clone(),
        group: args.group_column.clone(),
        ..Schema::default()
    };
    let gold = parse_gold(open(&args.gold)?, format, &schema)?;
    let mode = match args.mode {
        ModeArg::MostCommon => BaselineMode::MostCommon,
        ModeArg::PrevalenceSample => BaselineMode::PrevalenceSample,
    };
    if mode == BaselineMode::PrevalenceSample && args.seed.is_none() {
        return Err(Error::InvalidConfig(
            "--seed is required for prevalence-sample".into(),
        ));
    }
    let labels: Vec<&str> = gold.iter().map(|g| g.gold.as_str()).collect();
    let set = baseline(mode, &train, &labels, args.seed)?;

    let has_groups = gold.iter().any(|g| g.group.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    if has_groups {
        w.write_record(["gold", "pred", "group"]).map_err(csv_err)?;
    } else {
        w.write_record(["gold", "pred"]).map_err(csv_err)?;
    }
    for ((g, p), rec) in set.pairs().zip(&gold) {
        if has_groups {
            w.write_record([g, p, rec.group.as_deref().unwrap_or("")])
                .map_err(csv_err)?;
        } else {
            w.write_record([g, p]).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    match &args.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => emit(out, &bytes),
    }
}
