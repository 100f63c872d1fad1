//! Ranking data model: labels, permutations, and bucket rankings.
//!
//! A [`Ranking`] is an ordered list of buckets over a subset of a label
//! universe `{1..m}`; labels inside a bucket are tied. A [`Permutation`] is
//! the special case of a complete ranking with all-singleton buckets and is
//! the solution representation used by every solver.

use std::fmt;

use thiserror::Error;

/// Sentinel for "label not ranked" in the bucket table.
pub(crate) const UNRANKED: u32 = u32::MAX;

/// A 1-based label identifier in `1..=m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

impl Label {
    /// Creates a label from its 1-based value. Panics on zero.
    pub fn new(value: u32) -> Self {
        assert!(value >= 1, "labels are 1-based");
        Label(value)
    }

    /// The 1-based value.
    pub fn value(self) -> u32 {
        self.0
    }

    /// Zero-based index for table lookups.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        Label(index as u32 + 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}", self.0)
    }
}

/// Errors from building or parsing rankings.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankingError {
    #[error("empty ranking text")]
    Empty,
    #[error("empty bucket")]
    EmptyBucket,
    #[error("invalid label token {token:?}")]
    InvalidToken { token: String },
    #[error("label {label} outside universe 1..={m}")]
    LabelOutOfRange { label: u32, m: usize },
    #[error("duplicate label {label}")]
    DuplicateLabel { label: u32 },
    #[error("fewer than 2 ranked labels")]
    TooFewRanked,
    #[error("order of length {len} is not a permutation of 1..={m}")]
    NotAPermutation { len: usize, m: usize },
}

/// A complete strict ranking of `m` labels, most-preferred first.
///
/// Keeps the inverse position table in sync with the order so rank lookups
/// are O(1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<Label>,
    position: Vec<u32>,
}

impl Permutation {
    /// The identity permutation `(1|2|...|m)`.
    pub fn identity(m: usize) -> Self {
        let order = (0..m).map(Label::from_index).collect();
        let position = (0..m as u32).collect();
        Permutation { order, position }
    }

    /// Builds a permutation from an explicit order, validating bijectivity.
    pub fn from_order(order: Vec<Label>) -> Result<Self, RankingError> {
        let m = order.len();
        let mut position = vec![UNRANKED; m];
        for (pos, &label) in order.iter().enumerate() {
            if label.index() >= m {
                return Err(RankingError::NotAPermutation { len: m, m });
            }
            if position[label.index()] != UNRANKED {
                return Err(RankingError::DuplicateLabel {
                    label: label.value(),
                });
            }
            position[label.index()] = pos as u32;
        }
        Ok(Permutation { order, position })
    }

    /// Uniformly random permutation drawn with Fisher-Yates.
    pub fn random<R: rand::Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut order: Vec<Label> = (0..m).map(Label::from_index).collect();
        for i in (1..m).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }
        Self::from_order(order).expect("shuffled identity is a permutation")
    }

    /// Universe size `m`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Labels from most to least preferred.
    pub fn order(&self) -> &[Label] {
        &self.order
    }

    /// Zero-based position of a label.
    pub fn position(&self, label: Label) -> usize {
        self.position[label.index()] as usize
    }

    /// One-based rank of a label (the paper's `π(λ)`).
    pub fn rank(&self, label: Label) -> usize {
        self.position(label) + 1
    }

    /// Exchanges the positions of two labels in place.
    pub fn swap_labels(&mut self, a: Label, b: Label) {
        let pa = self.position[a.index()];
        let pb = self.position[b.index()];
        self.order.swap(pa as usize, pb as usize);
        self.position[a.index()] = pb;
        self.position[b.index()] = pa;
    }

    /// Views the permutation as a ranking of singleton buckets.
    pub fn to_ranking(&self) -> Ranking {
        let buckets = self.order.iter().map(|&l| vec![l]).collect();
        Ranking::new(self.len(), buckets).expect("permutation is a valid ranking")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// An ordered sequence of tie buckets over a subset of `{1..m}`.
///
/// Buckets run from most to least preferred; labels within a bucket are
/// stored in ascending numeric order so equality and formatting are
/// canonical. At least two labels must be ranked.
#[derive(Clone, PartialEq, Eq)]
pub struct Ranking {
    m: usize,
    buckets: Vec<Vec<Label>>,
    bucket_of: Vec<u32>,
    ranked: usize,
    /// Flattened bucket labels when every bucket is a singleton; this is the
    /// rank table the incremental evaluation fast path walks.
    strict_order: Option<Vec<Label>>,
}

impl Ranking {
    /// Builds a ranking from buckets, validating the type invariants.
    pub fn new(m: usize, mut buckets: Vec<Vec<Label>>) -> Result<Self, RankingError> {
        let mut bucket_of = vec![UNRANKED; m];
        let mut ranked = 0usize;
        for (bi, bucket) in buckets.iter_mut().enumerate() {
            if bucket.is_empty() {
                return Err(RankingError::EmptyBucket);
            }
            bucket.sort_unstable();
            for &label in bucket.iter() {
                if label.index() >= m {
                    return Err(RankingError::LabelOutOfRange {
                        label: label.value(),
                        m,
                    });
                }
                if bucket_of[label.index()] != UNRANKED {
                    return Err(RankingError::DuplicateLabel {
                        label: label.value(),
                    });
                }
                bucket_of[label.index()] = bi as u32;
                ranked += 1;
            }
        }
        if ranked < 2 {
            return Err(RankingError::TooFewRanked);
        }
        let strict_order = if buckets.iter().all(|b| b.len() == 1) {
            Some(buckets.iter().map(|b| b[0]).collect())
        } else {
            None
        };
        Ok(Ranking {
            m,
            buckets,
            bucket_of,
            ranked,
            strict_order,
        })
    }

    /// Parses the bar/comma syntax, e.g. `"1|3,4|2"`.
    ///
    /// Buckets split on `|`, labels within a bucket on `,`; surrounding
    /// whitespace is trimmed, interior whitespace is rejected.
    pub fn parse(text: &str, m: usize) -> Result<Self, RankingError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(RankingError::Empty);
        }
        let mut buckets = Vec::new();
        for chunk in text.split('|') {
            if chunk.is_empty() {
                return Err(RankingError::EmptyBucket);
            }
            let mut bucket = Vec::new();
            for token in chunk.split(',') {
                let value: u32 = token.parse().map_err(|_| RankingError::InvalidToken {
                    token: token.to_string(),
                })?;
                if value < 1 || value as usize > m {
                    return Err(RankingError::LabelOutOfRange { label: value, m });
                }
                bucket.push(Label::new(value));
            }
            buckets.push(bucket);
        }
        Self::new(m, buckets)
    }

    /// Universe size `m`.
    pub fn universe_size(&self) -> usize {
        self.m
    }

    /// Number of ranked labels `m'`.
    pub fn ranked_count(&self) -> usize {
        self.ranked
    }

    /// Buckets from most to least preferred.
    pub fn buckets(&self) -> &[Vec<Label>] {
        &self.buckets
    }

    /// Bucket index of a label, or `None` if the label is unranked.
    pub fn bucket_of(&self, label: Label) -> Option<usize> {
        match self.bucket_of[label.index()] {
            UNRANKED => None,
            b => Some(b as usize),
        }
    }

    #[inline]
    pub(crate) fn bucket_raw(&self, label: Label) -> u32 {
        self.bucket_of[label.index()]
    }

    #[inline]
    pub(crate) fn bucket_table(&self) -> &[u32] {
        &self.bucket_of
    }

    /// True when no bucket holds more than one label.
    pub fn is_strict(&self) -> bool {
        self.strict_order.is_some()
    }

    /// True when every label of the universe is ranked.
    pub fn is_complete(&self) -> bool {
        self.ranked == self.m
    }

    /// True when the ranking is a complete strict ranking.
    pub fn is_permutation(&self) -> bool {
        self.is_strict() && self.is_complete()
    }

    /// Ranked labels in preference order when the ranking is strict.
    pub(crate) fn strict_order(&self) -> Option<&[Label]> {
        self.strict_order.as_deref()
    }

    /// Converts to a permutation when the ranking is complete and strict.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_permutation() {
            return None;
        }
        let order = self.strict_order.clone().unwrap();
        Some(Permutation::from_order(order).expect("complete strict ranking"))
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, bucket) in self.buckets.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (li, label) in bucket.iter().enumerate() {
                if li > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{label}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}
