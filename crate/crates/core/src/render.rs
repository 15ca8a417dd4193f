//! Table, CSV and JSON renderings of metric reports.
//!
//! A rendering is a list of named [`Section`]s (an overall report plus one
//! per group, or system / baseline / delta). Metric scalars are multiplied
//! by 100 under [`Scale::Percent`]; entropies and mutual information stay
//! in bits.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{MetricReport, Warning};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Unit,
    Percent,
}

impl Scale {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Scale::Unit => x,
            Scale::Percent => x * 100.0,
        }
    }

    pub fn invert(self, x: f64) -> f64 {
        match self {
            Scale::Unit => x,
            Scale::Percent => x / 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

/// A named report to render.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub report: MetricReport,
}

impl Section {
    pub fn new(name: impl Into<String>, report: MetricReport) -> Self {
        Section {
            name: name.into(),
            report,
        }
    }

    /// `name (count) [entropy]`
    pub fn annotation(&self) -> String {
        annotate(&self.name, self.report.n, self.report.entropy_gold)
    }
}

pub fn annotate(name: &str, count: u64, entropy: f64) -> String {
    format!("{name} ({count}) [{entropy:.2}]")
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedReport {
    pub format: OutputFormat,
    pub scale: Scale,
    pub payload: Vec<u8>,
}

impl RenderedReport {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.payload).unwrap_or_default()
    }
}

pub fn render(sections: &[Section], format: OutputFormat, scale: Scale) -> Result<RenderedReport> {
    let payload = match format {
        OutputFormat::Table => render_table(sections, scale).into_bytes(),
        OutputFormat::Csv => render_csv(sections, scale)?,
        OutputFormat::Json => render_json(sections, scale)?,
    };
    Ok(RenderedReport {
        format,
        scale,
        payload,
    })
}

fn render_table(sections: &[Section], scale: Scale) -> String {
    let Some(first) = sections.first() else {
        return String::new();
    };
    let metrics: Vec<&String> = first.report.values.keys().collect();
    let names: Vec<String> = sections.iter().map(Section::annotation).collect();
    let name_width = names.iter().map(String::len).max().unwrap_or(0).max(5);
    let cell = |v: Option<f64>| match (v, scale) {
        (None, _) => "-".to_string(),
        (Some(v), Scale::Unit) => format!("{:.4}", v),
        (Some(v), Scale::Percent) => format!("{:.1}", scale.apply(v)),
    };
    let widths: Vec<usize> = metrics
        .iter()
        .map(|m| {
            sections
                .iter()
                .map(|s| cell(s.report.get(m)).len())
                .chain([m.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = String::new();
    let _ = write!(out, "{:<name_width$}", "scope");
    for (m, w) in metrics.iter().zip(&widths) {
        let _ = write!(out, "  {:>w$}", m, w = *w);
    }
    out.push('\n');
    for (section, name) in sections.iter().zip(&names) {
        let _ = write!(out, "{:<name_width$}", name);
        for (m, w) in metrics.iter().zip(&widths) {
            let _ = write!(out, "  {:>w$}", cell(section.report.get(m)), w = *w);
        }
        out.push('\n');
    }
    out
}

fn render_csv(sections: &[Section], scale: Scale) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["scope", "count", "entropy", "metric", "class", "value"])
        .map_err(csv_err)?;
    for s in sections {
        let r = &s.report;
        let (count, entropy) = (r.n.to_string(), r.entropy_gold.to_string());
        for (metric, v) in &r.values {
            let value = scale.apply(*v).to_string();
            w.write_record([&s.name, &count, &entropy, metric, "", &value])
                .map_err(csv_err)?;
        }
        for (metric, values) in &r.per_class {
            for (label, v) in r.labels.iter().zip(values) {
                let value = scale.apply(*v).to_string();
                w.write_record([&s.name, &count, &entropy, metric, label, &value])
                    .map_err(csv_err)?;
            }
        }
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

/// Serialized form of one [`MetricReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub version: u32,
    pub scale: Scale,
    pub labels: Vec<String>,
    pub n: u64,
    pub c_eff: usize,
    pub entropy_gold: f64,
    pub mutual_information: f64,
    pub metrics: IndexMap<String, f64>,
    pub per_class: IndexMap<String, Vec<f64>>,
    pub warnings: Vec<Warning>,
}

impl JsonReport {
    pub fn from_report(report: &MetricReport, scale: Scale) -> Self {
        JsonReport {
            version: SCHEMA_VERSION,
            scale,
            labels: report.labels.clone(),
            n: report.n,
            c_eff: report.c_eff,
            entropy_gold: report.entropy_gold,
            mutual_information: report.mutual_information,
            metrics: report
                .values
                .iter()
                .map(|(k, v)| (k.clone(), scale.apply(*v)))
                .collect(),
            per_class: report
                .per_class
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|x| scale.apply(*x)).collect()))
                .collect(),
            warnings: report.warnings.clone(),
        }
    }

    /// Back to [0, 1] scale.
    pub fn to_report(&self) -> MetricReport {
        let s = self.scale;
        MetricReport {
            labels: self.labels.clone(),
            n: self.n,
            c_eff: self.c_eff,
            entropy_gold: self.entropy_gold,
            mutual_information: self.mutual_information,
            values: self
                .metrics
                .iter()
                .map(|(k, v)| (k.clone(), s.invert(*v)))
                .collect(),
            per_class: self
                .per_class
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|x| s.invert(*x)).collect()))
                .collect(),
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonSection {
    pub name: String,
    pub report: JsonReport,
}

/// Multi-section JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonDocument {
    pub version: u32,
    pub sections: Vec<JsonSection>,
}

/// Either shape of JSON output: a bare report for a single section, or a
/// document with named sections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonOutput {
    Report(JsonReport),
    Document(JsonDocument),
}

impl JsonOutput {
    pub fn from_sections(sections: &[Section], scale: Scale) -> Self {
        match sections {
            [single] => JsonOutput::Report(JsonReport::from_report(&single.report, scale)),
            _ => JsonOutput::Document(JsonDocument {
                version: SCHEMA_VERSION,
                sections: sections
                    .iter()
                    .map(|s| JsonSection {
                        name: s.name.clone(),
                        report: JsonReport::from_report(&s.report, scale),
                    })
                    .collect(),
            }),
        }
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let out: JsonOutput =
            serde_json::from_slice(bytes).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let version = match &out {
            JsonOutput::Report(r) => r.version,
            JsonOutput::Document(d) => d.version,
        };
        if version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported report version {version}"
            )));
        }
        Ok(out)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Sections at [0, 1] scale; a bare report is named `overall`.
    pub fn sections(&self) -> Vec<Section> {
        match self {
            JsonOutput::Report(r) => vec![Section::new("overall", r.to_report())],
            JsonOutput::Document(d) => d
                .sections
                .iter()
                .map(|s| Section::new(s.name.clone(), s.report.to_report()))
                .collect(),
        }
    }
}

fn render_json(sections: &[Section], scale: Scale) -> Result<Vec<u8>> {
    JsonOutput::from_sections(sections, scale).to_bytes()
}
