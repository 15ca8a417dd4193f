use std::io::Read;

use crate::distribution::ClassDistribution;
use crate::error::{Error, Result};
use crate::labels::LabelSpace;

const PROBABILITY_TOLERANCE: f64 = 1e-6;

/// Reads a class distribution from a JSON object (`{"label": number}`) or a
/// two-column CSV (`label,count` or `label,probability`; header optional).
///
/// Values are read as counts and normalised when the CSV header says
/// `count`, or, without such a header, when every value is a whole number.
/// Otherwise they are probabilities and must already sum to one.
pub fn load_distribution<R: Read>(mut source: R) -> Result<ClassDistribution> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let (entries, kind) = if text.trim_start().starts_with('{') {
        (read_json(&text)?, Kind::Infer)
    } else {
        read_csv(&text)?
    };
    if entries.is_empty() {
        return Err(Error::NotADistribution("no entries".into()));
    }
    if let Some((label, v)) = entries.iter().find(|(_, v)| !v.is_finite() || *v < 0.0) {
        return Err(Error::NotADistribution(format!(
            "negative or non-finite entry {v} for '{label}'"
        )));
    }

    let is_counts = match kind {
        Kind::Counts => true,
        Kind::Probabilities => false,
        Kind::Infer => entries.iter().all(|(_, v)| v.fract() == 0.0),
    };
    let space = LabelSpace::new(entries.iter().map(|(l, _)| l.clone()))?;
    let total: f64 = entries.iter().map(|(_, v)| v).sum();
    if is_counts {
        if total <= 0.0 {
            return Err(Error::NotADistribution("all counts are zero".into()));
        }
        return ClassDistribution::new(space, entries.iter().map(|(_, v)| v / total).collect());
    }
    if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::NotADistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    // renormalise within tolerance so the stricter simplex check holds
    ClassDistribution::new(space, entries.iter().map(|(_, v)| v / total).collect())
}

enum Kind {
    Counts,
    Probabilities,
    Infer,
}

fn read_json(text: &str) -> Result<Vec<(String, f64)>> {
    let object: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    object
        .into_iter()
        .map(|(label, v)| {
            let value = v.as_f64().ok_or_else(|| {
                Error::NotADistribution(format!("value for '{label}' is not a number"))
            })?;
            Ok((label.trim().to_string(), value))
        })
        .collect()
}

fn read_csv(text: &str) -> Result<(Vec<(String, f64)>, Kind)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut entries = Vec::new();
    let mut kind = Kind::Infer;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(Error::parse(line, "expected 'label,value'"));
        }
        let (label, value) = (&record[0], &record[1]);
        match value.parse::<f64>() {
            Ok(v) => entries.push((label.to_string(), v)),
            Err(_) if i == 0 => {
                kind = match value.to_ascii_lowercase().as_str() {
                    "count" | "counts" => Kind::Counts,
                    "prob" | "probability" | "probabilities" | "p" => Kind::Probabilities,
                    _ => Kind::Infer,
                };
            }
            Err(_) => return Err(Error::parse(line, format!("'{value}' is not a number"))),
        }
    }
    Ok((entries, kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<ClassDistribution> {
        load_distribution(text.as_bytes())
    }

    #[test]
    fn counts_are_normalised() {
        assert_eq!(load("{\"a\":80,\"b\":20}").unwrap().probs(), &[0.8, 0.2]);
        assert_eq!(
            load("label,count\na,80\nb,20\n").unwrap().probs(),
            &[0.8, 0.2]
        );
        assert_eq!(load("a,8\nb,2\n").unwrap().probs(), &[0.8, 0.2]);
    }

    #[test]
    fn probabilities_pass_through() {
        let d = load("{\"a\":0.7,\"b\":0.3}").unwrap();
        assert!((d.probs()[0] - 0.7).abs() < 1e-15);
        assert!((d.probs()[1] - 0.3).abs() < 1e-15);
        let d = load("label,probability\na,1\nb,0\n").unwrap();
        assert_eq!(d.probs(), &[1.0, 0.0]);
    }

    #[test]
    fn invalid_distributions() {
        let err = load("{\"a\":0.7,\"b\":0.7}").unwrap_err();
        assert!(err.to_string().starts_with("not a distribution"), "{err}");
        assert!(load("{\"a\":-1,\"b\":2}").is_err());
        assert!(load("{\"a\":0,\"b\":0}").is_err());
        assert!(load("{}").is_err());
        assert!(load("a,1\nb,x\n").is_err());
        assert!(load("{\"a\":\"x\"}").is_err());
        assert!(load("label,probability\na,2\nb,3\n").is_err());
    }
}
