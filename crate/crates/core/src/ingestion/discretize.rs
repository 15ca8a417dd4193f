use crate::error::{Error, Result};
use crate::metrics::{Warning, WarningCode};

#[derive(Debug, Clone, PartialEq)]
pub struct Discretized {
    pub labels: Vec<String>,
    pub warnings: Vec<Warning>,
}

/// Maps continuous scores onto the integer classes in `[lo, hi]`.
///
/// Values are rounded to the nearest integer with halves going away from
/// zero, then clamped into range. Values further than 0.5 outside the range
/// are clamped with a warning; NaN is an error.
pub fn discretize_scores(values: &[f64], lo: f64, hi: f64) -> Result<Discretized> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidConfig(format!(
            "discretisation range [{lo}, {hi}] is empty"
        )));
    }
    let (min, max) = (lo.ceil(), hi.floor());
    if min > max {
        return Err(Error::InvalidConfig(format!(
            "no integer lies in [{lo}, {hi}]"
        )));
    }

    let mut clamped = 0usize;
    let labels = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v.is_nan() {
                return Err(Error::InvalidValue(format!("score #{i} is NaN")));
            }
            if v < lo - 0.5 || v > hi + 0.5 {
                clamped += 1;
            }
            let class = v.round().clamp(min, max) as i64;
            Ok(class.to_string())
        })
        .collect::<Result<Vec<_>>>()?;

    let warnings = if clamped > 0 {
        vec![Warning::new(
            WarningCode::ValueClamped,
            format!("{clamped} score(s) outside [{lo}, {hi}] clamped"),
        )]
    } else {
        Vec::new()
    };
    Ok(Discretized { labels, warnings })
}
