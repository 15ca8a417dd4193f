use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::labels::{ClassificationSet, LabelSpace};
use crate::metrics::{Warning, WarningCode};

/// Group key of records that carry no group.
pub const UNGROUPED: &str = "";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
    Jsonl,
}

impl Format {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Format {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("tsv") | Some("tab") => Format::Tsv,
            Some("jsonl") | Some("ndjson") => Format::Jsonl,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::InvalidConfig(format!(
                "unknown input format '{other}'"
            ))),
        }
    }
}

/// How the label space of a prediction file is determined.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum LabelPolicy {
    /// Union of gold and predicted labels in first-seen order.
    #[default]
    Union,
    /// A closed, caller-supplied space; any other label is an error.
    Strict(LabelSpace),
}

/// Column (or JSON key) names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub gold: String,
    pub pred: String,
    pub group: String,
}

impl Default for Schema {
    fn default() -> Self {
        Schema {
            gold: "gold".into(),
            pred: "pred".into(),
            group: "group".into(),
        }
    }
}

/// One labelled sample as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionRecord {
    pub gold: String,
    pub pred: String,
    pub group: Option<String>,
    /// 1-based line in the source.
    pub line: usize,
}

/// Parsed prediction file, split by group.
#[derive(Debug, Clone)]
pub struct GroupedDataset {
    records: Vec<PredictionRecord>,
    space: LabelSpace,
    strict: bool,
    groups: IndexMap<String, ClassificationSet>,
    warnings: Vec<Warning>,
}

impl GroupedDataset {
    /// Assembles a dataset from already validated records.
    pub fn from_records(records: Vec<PredictionRecord>, policy: &LabelPolicy) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptySet);
        }
        let (space, strict) = match policy {
            LabelPolicy::Strict(space) => {
                for r in &records {
                    for label in [&r.gold, &r.pred] {
                        if !space.contains(label) {
                            return Err(Error::UnknownLabelAt {
                                label: label.clone(),
                                line: r.line,
                            });
                        }
                    }
                }
                (space.clone(), true)
            }
            LabelPolicy::Union => (
                LabelSpace::from_observed(records.iter().flat_map(|r| [&r.gold, &r.pred]))?,
                false,
            ),
        };

        let mut warnings = Vec::new();
        if !strict {
            let gold: std::collections::HashSet<&str> =
                records.iter().map(|r| r.gold.as_str()).collect();
            let extra: Vec<String> = space
                .iter()
                .filter(|l| !gold.contains(l))
                .map(|l| format!("'{l}'"))
                .collect();
            if !extra.is_empty() {
                warnings.push(Warning::new(
                    WarningCode::PredictionOnlyLabels,
                    format!("labels present only in predictions: {}", extra.join(", ")),
                ));
            }
        }

        let mut dataset = GroupedDataset {
            records,
            space,
            strict,
            groups: IndexMap::new(),
            warnings,
        };
        dataset.groups = dataset.split(strict)?;
        Ok(dataset)
    }

    fn split(&self, shared: bool) -> Result<IndexMap<String, ClassificationSet>> {
        let mut by_key: IndexMap<&str, Vec<(&str, &str)>> = IndexMap::new();
        for r in &self.records {
            by_key
                .entry(r.group.as_deref().unwrap_or(UNGROUPED))
                .or_default()
                .push((&r.gold, &r.pred));
        }
        by_key
            .into_iter()
            .map(|(key, pairs)| {
                let set = if shared {
                    ClassificationSet::new(self.space.clone(), &pairs)?
                } else {
                    ClassificationSet::from_pairs(&pairs)?
                };
                Ok((key.to_string(), set))
            })
            .collect()
    }

    pub fn records(&self) -> &[PredictionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Label space of the whole file.
    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// All records over the file-level space.
    pub fn overall(&self) -> ClassificationSet {
        let pairs: Vec<(&str, &str)> = self
            .records
            .iter()
            .map(|r| (r.gold.as_str(), r.pred.as_str()))
            .collect();
        ClassificationSet::new(self.space.clone(), &pairs)
            .expect("records were validated against the space")
    }

    /// Groups in first-seen order, each over its own label space (or over the
    /// strict space when one was supplied).
    pub fn groups(&self) -> &IndexMap<String, ClassificationSet> {
        &self.groups
    }

    /// Groups over the file-level space.
    pub fn shared_groups(&self) -> IndexMap<String, ClassificationSet> {
        self.split(true)
            .expect("records were validated against the space")
    }

    /// True when every record has no group.
    pub fn is_ungrouped(&self) -> bool {
        self.groups.len() == 1 && self.groups.contains_key(UNGROUPED)
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }
}

/// Reads a prediction file.
pub fn parse_predictions<R: Read>(
    source: R,
    format: Format,
    policy: &LabelPolicy,
    schema: &Schema,
) -> Result<GroupedDataset> {
    let rows = read_rows(source, format, schema, true)?;
    let records = rows
        .into_iter()
        .map(|row| PredictionRecord {
            gold: row.gold,
            pred: row.pred.expect("pred column required"),
            group: row.group,
            line: row.line,
        })
        .collect();
    GroupedDataset::from_records(records, policy)
}

/// A gold label with its optional group, as read from a gold-only file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldRecord {
    pub gold: String,
    pub group: Option<String>,
    pub line: usize,
}

/// Reads the gold column (and group, when present) of a file; a prediction
/// column is not required.
pub fn parse_gold<R: Read>(source: R, format: Format, schema: &Schema) -> Result<Vec<GoldRecord>> {
    let rows = read_rows(source, format, schema, false)?;
    if rows.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(rows
        .into_iter()
        .map(|r| GoldRecord {
            gold: r.gold,
            group: r.group,
            line: r.line,
        })
        .collect())
}

struct Row {
    gold: String,
    pred: Option<String>,
    group: Option<String>,
    line: usize,
}

fn label_field(raw: Option<&str>, name: &str, line: usize) -> Result<String> {
    let value = raw.map(str::trim).unwrap_or("");
    if value.is_empty() {
        return Err(Error::parse(line, format!("empty '{name}' label")));
    }
    Ok(value.to_string())
}

fn group_field(raw: Option<&str>) -> Option<String> {
    raw.map(str::trim)
        .filter(|g| !g.is_empty())
        .map(str::to_string)
}

fn read_rows<R: Read>(
    source: R,
    format: Format,
    schema: &Schema,
    need_pred: bool,
) -> Result<Vec<Row>> {
    match format {
        Format::Csv => read_delimited(source, b',', schema, need_pred),
        Format::Tsv => read_delimited(source, b'\t', schema, need_pred),
        Format::Jsonl => read_jsonl(source, schema, need_pred),
    }
}

fn read_delimited<R: Read>(
    source: R,
    delimiter: u8,
    schema: &Schema,
    need_pred: bool,
) -> Result<Vec<Row>> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(source);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        Error::parse(line, e.to_string())
    };
    let headers = reader.headers().map_err(csv_err)?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let missing = |name: &str| Error::Schema(format!("missing column '{name}'"));

    let gold_col = column(&schema.gold).ok_or_else(|| missing(&schema.gold))?;
    let pred_col = column(&schema.pred);
    if need_pred && pred_col.is_none() {
        return Err(missing(&schema.pred));
    }
    let group_col = column(&schema.group);

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        rows.push(Row {
            gold: label_field(record.get(gold_col), &schema.gold, line)?,
            pred: match pred_col {
                Some(c) if need_pred => Some(label_field(record.get(c), &schema.pred, line)?),
                _ => None,
            },
            group: group_col.and_then(|c| group_field(record.get(c))),
            line,
        });
    }
    Ok(rows)
}

fn json_label(
    value: Option<&serde_json::Value>,
    name: &str,
    line: usize,
) -> Result<Option<String>> {
    use serde_json::Value;
    match value {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(Value::Number(n)) => Ok(Some(n.to_string())),
        Some(Value::Bool(b)) => Ok(Some(b.to_string())),
        Some(_) => Err(Error::parse(
            line,
            format!("'{name}' must be a string or number"),
        )),
    }
}

fn read_jsonl<R: Read>(source: R, schema: &Schema, need_pred: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line_no = i + 1;
        let text = line.map_err(|e| Error::parse(line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let object: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(&text).map_err(|e| Error::parse(line_no, e.to_string()))?;
        let field =
            |name: &str| -> Result<Option<String>> { json_label(object.get(name), name, line_no) };
        let require = |name: &str| -> Result<String> {
            match field(name)? {
                Some(v) => label_field(Some(&v), name, line_no),
                None => Err(Error::Schema(format!(
                    "missing key '{name}' at line {line_no}"
                ))),
            }
        };
        rows.push(Row {
            gold: require(&schema.gold)?,
            pred: if need_pred {
                Some(require(&schema.pred)?)
            } else {
                None
            },
            group: group_field(field(&schema.group)?.as_deref()),
            line: line_no,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, format: Format, policy: &LabelPolicy) -> Result<GroupedDataset> {
        parse_predictions(text.as_bytes(), format, policy, &Schema::default())
    }

    #[test]
    fn csv_single_group() {
        let ds = parse(
            "gold,pred\nyes,yes\nyes,no\n",
            Format::Csv,
            &LabelPolicy::Union,
        )
        .unwrap();
        assert_eq!(ds.groups().len(), 1);
        assert!(ds.is_ungrouped());
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.space().labels(), &["yes", "no"]);
        assert_eq!(ds.warnings()[0].code, WarningCode::PredictionOnlyLabels);
    }

    #[test]
    fn tsv_trims_whitespace_but_keeps_interior() {
        let ds = parse(
            "pred\tgold\n  new york \tnew york\n",
            Format::Tsv,
            &LabelPolicy::Union,
        )
        .unwrap();
        assert_eq!(ds.records()[0].gold, "new york");
        assert_eq!(ds.records()[0].pred, "new york");
    }

    #[test]
    fn jsonl_groups() {
        let text = r#"{"gold":"yes","pred":"yes","group":"exist"}
{"gold":"left","pred":"right","group":"dir"}

{"gold":"no","pred":"yes","group":"exist"}
"#;
        let ds = parse(text, Format::Jsonl, &LabelPolicy::Union).unwrap();
        let keys: Vec<_> = ds.groups().keys().cloned().collect();
        assert_eq!(keys, vec!["exist", "dir"]);
        assert_eq!(ds.groups()["exist"].len(), 2);
        assert_eq!(ds.groups()["exist"].space().labels(), &["yes", "no"]);
        assert_eq!(ds.groups()["dir"].space().labels(), &["left", "right"]);
        assert_eq!(ds.records()[2].line, 4);
        let shared = ds.shared_groups();
        assert_eq!(shared["dir"].space(), ds.space());
    }

    #[test]
    fn jsonl_numeric_labels() {
        let ds = parse(
            "{\"gold\":3,\"pred\":2}\n",
            Format::Jsonl,
            &LabelPolicy::Union,
        )
        .unwrap();
        assert_eq!(ds.records()[0].gold, "3");
    }

    #[test]
    fn strict_policy_reports_line() {
        let space = LabelSpace::new(["yes", "no"]).unwrap();
        let err = parse(
            "gold,pred\nyes,no\nno,maybe\n",
            Format::Csv,
            &LabelPolicy::Strict(space),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLabelAt {
                label: "maybe".into(),
                line: 3
            }
        );
        assert_eq!(err.to_string(), "unknown label 'maybe' at line 3");
    }

    #[test]
    fn strict_groups_share_space() {
        let space = LabelSpace::new(["no", "yes"]).unwrap();
        let ds = parse(
            "gold,pred,group\nyes,yes,a\nno,no,b\n",
            Format::Csv,
            &LabelPolicy::Strict(space.clone()),
        )
        .unwrap();
        assert!(ds.groups().values().all(|g| g.space() == &space));
        assert!(ds.warnings().is_empty());
    }

    #[test]
    fn schema_and_row_errors() {
        assert_eq!(
            parse("gold,prediction\na,a\n", Format::Csv, &LabelPolicy::Union).unwrap_err(),
            Error::Schema("missing column 'pred'".into())
        );
        let err = parse("gold,pred\na,a\nb\n", Format::Csv, &LabelPolicy::Union).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse("gold,pred\na, \n", Format::Csv, &LabelPolicy::Union).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse(
            "{\"gold\":\"a\",\"pred\":\"a\"}\n{oops\n",
            Format::Jsonl,
            &LabelPolicy::Union,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse("{\"gold\":\"a\"}\n", Format::Jsonl, &LabelPolicy::Union).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
        assert_eq!(
            parse("gold,pred\n", Format::Csv, &LabelPolicy::Union).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn gold_only_files() {
        let gold = parse_gold(
            "gold,group\na,x\nb,\n".as_bytes(),
            Format::Csv,
            &Schema::default(),
        )
        .unwrap();
        assert_eq!(gold.len(), 2);
        assert_eq!(gold[0].group.as_deref(), Some("x"));
        assert_eq!(gold[1].group, None);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("x.JSONL")), Format::Jsonl);
        assert_eq!(Format::from_path(Path::new("x.tsv")), Format::Tsv);
        assert_eq!(Format::from_path(Path::new("x")), Format::Csv);
    }
}
