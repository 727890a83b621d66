//! JSON documents and conversions to and from core types.
//!
//! Documents store rows bottom first and sites 1-indexed, like the core crate.
//! Rationals travel as `"p/q"` strings.

use std::io::Read;

use mlq_core::{BigInt, BigRational, BosonicWord, FermionicWord, Kind, Mlq, Row, Statistic, Word};
use num_traits::{One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum QueueKind {
    Fermionic,
    Bosonic,
}

impl From<Kind> for QueueKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Fermionic => QueueKind::Fermionic,
            Kind::Bosonic => QueueKind::Bosonic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueueDocument {
    pub kind: QueueKind,
    pub n: usize,
    /// `rows[0]` is the bottom row; sites ascending, repeated for bosonic rows.
    pub rows: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WordDocument {
    FermionicWord { n: usize, letters: Vec<u32> },
    BosonicWord { n: usize, sites: Vec<Vec<u32>> },
}

/// A distribution entry's state: a word for particle models, a queue for
/// the multiline-queue chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateDocument {
    Word(WordDocument),
    Queue(QueueDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionEntry {
    pub state: StateDocument,
    pub prob: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionDocument {
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub lambda: Vec<u32>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    pub entries: Vec<DistributionEntry>,
}

/// A queue of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyQueue {
    Fermionic(Mlq<mlq_core::Fermionic>),
    Bosonic(Mlq<mlq_core::Bosonic>),
}

/// A word of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyWord {
    Fermionic(FermionicWord),
    Bosonic(BosonicWord),
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or an integer `"p"`.
pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let s = s.trim();
    let bad = || CliError::input(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Comma-separated unsigned integers; the empty string is the empty list.
pub fn parse_u32_list(s: &str) -> CliResult<Vec<u32>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| CliError::input(format!("not a nonnegative integer: {p:?}"))))
        .collect()
}

/// Comma-separated positive rationals.
pub fn parse_rational_list(s: &str) -> CliResult<Vec<BigRational>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let xs = s.split(',').map(parse_rational).collect::<CliResult<Vec<_>>>()?;
    if xs.iter().any(|x| !x.is_positive()) {
        return Err(CliError::input("site parameters must be positive"));
    }
    Ok(xs)
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("schema: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}

impl QueueDocument {
    pub fn from_mlq<S: Statistic>(q: &Mlq<S>) -> Self {
        QueueDocument { kind: S::KIND.into(), n: q.n(), rows: q.rows().iter().map(|r| r.sites()).collect() }
    }

    pub fn from_any(q: &AnyQueue) -> Self {
        match q {
            AnyQueue::Fermionic(q) => Self::from_mlq(q),
            AnyQueue::Bosonic(q) => Self::from_mlq(q),
        }
    }

    fn check_schema(&self) -> CliResult<()> {
        if self.n == 0 {
            return Err(CliError::input("n must be positive"));
        }
        if self.rows.is_empty() {
            return Err(CliError::input("a queue needs at least one row"));
        }
        for (j, row) in self.rows.iter().enumerate() {
            if let Some(&s) = row.iter().find(|&&s| s == 0 || s > self.n) {
                return Err(CliError::input(format!("row {}: site {s} outside 1..={}", j + 1, self.n)));
            }
            let ordered = match self.kind {
                QueueKind::Fermionic => row.windows(2).all(|w| w[0] < w[1]),
                QueueKind::Bosonic => row.windows(2).all(|w| w[0] <= w[1]),
            };
            if !ordered {
                let what = match self.kind {
                    QueueKind::Fermionic => "strictly increasing",
                    QueueKind::Bosonic => "sorted ascending",
                };
                return Err(CliError::input(format!("row {}: sites must be {what}", j + 1)));
            }
        }
        Ok(())
    }

    pub fn to_mlq<S: Statistic>(&self) -> CliResult<Mlq<S>> {
        if self.kind != QueueKind::from(S::KIND) {
            return Err(CliError::input(format!("expected a {} queue", S::KIND)));
        }
        self.check_schema()?;
        Ok(Mlq::from_sites(self.n, &self.rows)?)
    }

    pub fn to_any(&self) -> CliResult<AnyQueue> {
        Ok(match self.kind {
            QueueKind::Fermionic => AnyQueue::Fermionic(self.to_mlq()?),
            QueueKind::Bosonic => AnyQueue::Bosonic(self.to_mlq()?),
        })
    }
}

/// Words that have a document form.
pub trait DocWord: Word {
    fn to_document(&self) -> WordDocument;
    fn from_document(doc: &WordDocument) -> CliResult<Self>;
}

impl DocWord for FermionicWord {
    fn to_document(&self) -> WordDocument {
        WordDocument::FermionicWord { n: self.n(), letters: self.letters().to_vec() }
    }

    fn from_document(doc: &WordDocument) -> CliResult<Self> {
        match doc {
            WordDocument::FermionicWord { n, letters } => {
                if *n == 0 || letters.len() != *n {
                    return Err(CliError::input(format!("letters must have length n = {n} > 0")));
                }
                Ok(FermionicWord::new(letters.clone())?)
            }
            _ => Err(CliError::input("expected a fermionic_word")),
        }
    }
}

impl DocWord for BosonicWord {
    fn to_document(&self) -> WordDocument {
        WordDocument::BosonicWord { n: self.n(), sites: self.sites().to_vec() }
    }

    fn from_document(doc: &WordDocument) -> CliResult<Self> {
        match doc {
            WordDocument::BosonicWord { n, sites } => {
                if *n == 0 || sites.len() != *n {
                    return Err(CliError::input(format!("sites must have length n = {n} > 0")));
                }
                if sites.iter().any(|s| s.windows(2).any(|w| w[0] > w[1])) {
                    return Err(CliError::input("each site must be sorted ascending"));
                }
                Ok(BosonicWord::new(sites.clone())?)
            }
            _ => Err(CliError::input("expected a bosonic_word")),
        }
    }
}

impl WordDocument {
    pub fn to_any(&self) -> CliResult<AnyWord> {
        Ok(match self {
            WordDocument::FermionicWord { .. } => AnyWord::Fermionic(FermionicWord::from_document(self)?),
            WordDocument::BosonicWord { .. } => AnyWord::Bosonic(BosonicWord::from_document(self)?),
        })
    }
}

impl DistributionDocument {
    /// Parses every probability and checks they sum to exactly 1.
    pub fn probabilities(&self) -> CliResult<Vec<BigRational>> {
        let probs = self.entries.iter().map(|e| parse_rational(&e.prob)).collect::<CliResult<Vec<_>>>()?;
        if probs.iter().any(|p| p.is_negative()) {
            return Err(CliError::input("negative probability"));
        }
        let total = probs.iter().fold(BigRational::zero(), |a, b| a + b);
        if !total.is_one() {
            return Err(CliError::input(format!("probabilities sum to {}", format_rational(&total))));
        }
        Ok(probs)
    }
}

/// A parsed input document of any kind, dispatched on its `kind` field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyDocument {
    Queue(QueueDocument),
    Word(WordDocument),
}

pub fn parse_any_document(text: &str) -> CliResult<AnyDocument> {
    let value: serde_json::Value = parse_json(text)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("fermionic" | "bosonic") => Ok(AnyDocument::Queue(serde_json::from_value(value)?)),
        Some("fermionic_word" | "bosonic_word") => Ok(AnyDocument::Word(serde_json::from_value(value)?)),
        Some(k) => Err(CliError::input(format!("unknown document kind {k:?}"))),
        None => Err(CliError::input("document has no kind field")),
    }
}
