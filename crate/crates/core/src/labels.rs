//! Class identifiers and labelled (gold, predicted) pairs.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered, duplicate-free set of class identifiers.
///
/// Identifiers are opaque strings compared byte for byte. Position in the
/// space is the class index used by every matrix and distribution built
/// over it.
#[derive(Clone, PartialEq, Eq)]
pub struct LabelSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelSpace {
    /// Builds a space in the given order. Duplicates are rejected.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut space = LabelSpace {
            labels: Vec::new(),
            index: HashMap::new(),
        };
        for label in labels {
            let label = label.into();
            if space.index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            space.push(label);
        }
        if space.labels.is_empty() {
            return Err(Error::EmptyLabelSpace);
        }
        Ok(space)
    }

    /// Builds a space in first-seen order, silently skipping repeats.
    pub fn from_observed<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut space = LabelSpace {
            labels: Vec::new(),
            index: HashMap::new(),
        };
        for label in labels {
            space.insert(label.as_ref());
        }
        if space.labels.is_empty() {
            return Err(Error::EmptyLabelSpace);
        }
        Ok(space)
    }

    /// Inserts a label at the end if it is not already present and returns its index.
    pub(crate) fn insert(&mut self, label: &str) -> usize {
        match self.index.get(label) {
            Some(&i) => i,
            None => self.push(label.to_string()),
        }
    }

    fn push(&mut self, label: String) -> usize {
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        i
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Like [`index_of`](Self::index_of) but fails with `UnknownLabel`.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    /// Same labels, possibly in a different order.
    pub fn same_members(&self, other: &LabelSpace) -> bool {
        self.len() == other.len() && self.iter().all(|l| other.contains(l))
    }
}

impl fmt::Debug for LabelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LabelSpace").field(&self.labels).finish()
    }
}

/// Ordered sequence of (gold, predicted) pairs over a label space.
///
/// Pairs are stored as class indices into `space`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationSet {
    space: LabelSpace,
    pairs: Vec<(usize, usize)>,
}

impl ClassificationSet {
    /// Validates string pairs against an existing space.
    pub fn new<S: AsRef<str>>(space: LabelSpace, pairs: &[(S, S)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(g, p)| Ok((space.require(g.as_ref())?, space.require(p.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassificationSet { space, pairs })
    }

    /// Infers the space from the pairs in first-seen order (gold before pred
    /// within each pair).
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySet);
        }
        let space =
            LabelSpace::from_observed(pairs.iter().flat_map(|(g, p)| [g.as_ref(), p.as_ref()]))?;
        Self::new(space, pairs)
    }

    /// Builds a set from gold and predicted sequences of equal length.
    pub fn from_sequences<S: AsRef<str>>(gold: &[S], pred: &[S]) -> Result<Self> {
        if gold.len() != pred.len() {
            return Err(Error::InvalidValue(format!(
                "gold and predicted sequences differ in length ({} vs {})",
                gold.len(),
                pred.len()
            )));
        }
        let pairs: Vec<(&str, &str)> = gold
            .iter()
            .zip(pred)
            .map(|(g, p)| (g.as_ref(), p.as_ref()))
            .collect();
        Self::from_pairs(&pairs)
    }

    /// Index pairs must already be valid for `space`.
    pub fn from_indices(space: LabelSpace, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let c = space.len();
        if let Some(&(g, p)) = pairs.iter().find(|&&(g, p)| g >= c || p >= c) {
            return Err(Error::UnknownLabel(format!("#{}", g.max(p))));
        }
        Ok(ClassificationSet { space, pairs })
    }

    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// (gold, pred) index pairs in input order.
    pub fn index_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// (gold, pred) label pairs in input order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs
            .iter()
            .map(|&(g, p)| (self.space.label(g), self.space.label(p)))
    }
}
