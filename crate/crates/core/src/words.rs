//! Words on the ring, indicator vectors, the slicing maps `υ_m`, nested
//! decomposition and the label shift.
//!
//! A fermionic word stores one nonnegative label per site (0 is a vacancy).
//! A bosonic word stores a sorted multiset of positive labels per site.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::str::FromStr;

use crate::error::{Error, Result};

fn check_ring(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyRing)
    } else {
        Ok(())
    }
}

fn site_index(site: usize, n: usize) -> Result<usize> {
    if site == 0 || site > n {
        Err(Error::SiteOutOfRange { site, n })
    } else {
        Ok(site - 1)
    }
}

/// A row of particles on `Z_n`: a subset (fermionic) or a multiset (bosonic).
pub trait Row: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    fn n(&self) -> usize;
    /// Multiplicity at each site, position 0 holding site 1.
    fn counts(&self) -> Vec<u32>;
    fn from_counts(counts: Vec<u32>) -> Result<Self>;

    /// Number of particles in the row.
    fn size(&self) -> usize {
        self.counts().iter().map(|&c| c as usize).sum()
    }

    /// Sites of the particles, 1-indexed, ascending with repetition.
    fn sites(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &c) in self.counts().iter().enumerate() {
            for _ in 0..c {
                out.push(i + 1);
            }
        }
        out
    }

    fn from_sites(sites: &[usize], n: usize) -> Result<Self> {
        check_ring(n)?;
        let mut counts = vec![0u32; n];
        for &s in sites {
            counts[site_index(s, n)?] += 1;
        }
        Self::from_counts(counts)
    }

    fn empty(n: usize) -> Self {
        Self::from_counts(vec![0; n]).expect("zero counts are always valid")
    }

    /// Entrywise comparison `self ≤ other`.
    fn is_below(&self, other: &Self) -> bool {
        self.n() == other.n() && self.counts().iter().zip(other.counts()).all(|(a, b)| *a <= b)
    }
}

/// Common interface of [`FermionicWord`] and [`BosonicWord`].
pub trait Word: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    type Layer: Row;

    fn n(&self) -> usize;
    /// The all-zero (or all-empty) word `w_0`.
    fn zero(n: usize) -> Result<Self>;
    fn upsilon(&self, m: u32) -> Self::Layer;
    /// Largest label, 0 for the empty word.
    fn max_label(&self) -> u32;
    /// Smallest positive label, if any.
    fn min_label(&self) -> Option<u32>;
    fn increment(&self, j: u32) -> Self;
    /// Inverse of [`Word::decompose`] for nested layers.
    fn recompose(n: usize, layers: &[Self::Layer]) -> Result<Self>;
    /// Labels sitting at each site, ascending.
    fn site_labels(&self) -> Vec<Vec<u32>>;
    fn from_site_labels(labels: Vec<Vec<u32>>) -> Result<Self>;

    /// `[υ_1(w), ..., υ_k(w)]` with `k` the largest label.
    fn decompose(&self) -> Vec<Self::Layer> {
        (1..=self.max_label()).map(|m| self.upsilon(m)).collect()
    }

    /// Number of labelled particles.
    fn particle_count(&self) -> usize {
        self.site_labels().iter().map(Vec::len).sum()
    }

    /// Multiset of labels, sorted descending.
    fn content(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.site_labels().into_iter().flatten().collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }
}

fn check_nested<R: Row>(layers: &[R], n: usize) -> Result<()> {
    for (i, layer) in layers.iter().enumerate() {
        if layer.n() != n {
            return Err(Error::RingMismatch(n, layer.n()));
        }
        if i > 0 && !layer.is_below(&layers[i - 1]) {
            return Err(Error::NotNested(i + 1));
        }
    }
    Ok(())
}

/// A 0/1 vector of length `n`, the indicator `ι(B)` of a subset `B ⊆ [n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionicIndicator {
    bits: Vec<bool>,
}

impl FermionicIndicator {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        check_ring(bits.len())?;
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, site: usize) -> bool {
        site >= 1 && site <= self.bits.len() && self.bits[site - 1]
    }
}

impl Row for FermionicIndicator {
    fn n(&self) -> usize {
        self.bits.len()
    }

    fn counts(&self) -> Vec<u32> {
        self.bits.iter().map(|&b| b as u32).collect()
    }

    fn from_counts(counts: Vec<u32>) -> Result<Self> {
        check_ring(counts.len())?;
        if let Some(i) = counts.iter().position(|&c| c > 1) {
            return Err(Error::domain(alloc::format!("site {} occupied more than once in a subset", i + 1)));
        }
        Ok(Self { bits: counts.into_iter().map(|c| c == 1).collect() })
    }

    fn size(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Debug for FermionicIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sites())
    }
}

/// Multiplicity vector `ι(D)` of a multiset `D` over `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BosonicIndicator {
    counts: Vec<u32>,
}

impl BosonicIndicator {
    pub fn count(&self, site: usize) -> u32 {
        if site >= 1 && site <= self.counts.len() {
            self.counts[site - 1]
        } else {
            0
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.counts
    }
}

impl Row for BosonicIndicator {
    fn n(&self) -> usize {
        self.counts.len()
    }

    fn counts(&self) -> Vec<u32> {
        self.counts.clone()
    }

    fn from_counts(counts: Vec<u32>) -> Result<Self> {
        check_ring(counts.len())?;
        Ok(Self { counts })
    }
}

impl fmt::Debug for BosonicIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sites())
    }
}

/// `ι(B)` for a subset given by 1-indexed sites.
pub fn iota_fermionic(b: &[usize], n: usize) -> Result<FermionicIndicator> {
    FermionicIndicator::from_sites(b, n)
}

/// `ι(D)` for a multiset given by 1-indexed sites.
pub fn iota_bosonic(d: &[usize], n: usize) -> Result<BosonicIndicator> {
    BosonicIndicator::from_sites(d, n)
}

/// A TASEP state: one nonnegative label per site.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionicWord {
    letters: Vec<u32>,
}

impl FermionicWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        check_ring(letters.len())?;
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Letter at a 1-indexed site.
    pub fn letter(&self, site: usize) -> u32 {
        self.letters[site - 1]
    }
}

impl Word for FermionicWord {
    type Layer = FermionicIndicator;

    fn n(&self) -> usize {
        self.letters.len()
    }

    fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    fn upsilon(&self, m: u32) -> FermionicIndicator {
        FermionicIndicator { bits: self.letters.iter().map(|&l| m >= 1 && l >= m).collect() }
    }

    fn max_label(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    fn min_label(&self) -> Option<u32> {
        self.letters.iter().copied().filter(|&l| l > 0).min()
    }

    fn increment(&self, j: u32) -> Self {
        Self { letters: self.letters.iter().map(|&l| if l == 0 { 0 } else { l + j }).collect() }
    }

    fn recompose(n: usize, layers: &[FermionicIndicator]) -> Result<Self> {
        check_ring(n)?;
        check_nested(layers, n)?;
        let mut letters = vec![0u32; n];
        for layer in layers {
            for (l, &b) in letters.iter_mut().zip(&layer.bits) {
                *l += b as u32;
            }
        }
        Ok(Self { letters })
    }

    fn site_labels(&self) -> Vec<Vec<u32>> {
        self.letters.iter().map(|&l| if l == 0 { Vec::new() } else { vec![l] }).collect()
    }

    fn from_site_labels(labels: Vec<Vec<u32>>) -> Result<Self> {
        let mut letters = Vec::with_capacity(labels.len());
        for (i, site) in labels.iter().enumerate() {
            match site.as_slice() {
                [] => letters.push(0),
                [l] if *l > 0 => letters.push(*l),
                _ => return Err(Error::domain(alloc::format!("site {} holds {:?} in a fermionic word", i + 1, site))),
            }
        }
        Self::new(letters)
    }
}

/// A 0-TAZRP state: a sorted multiset of positive labels per site.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BosonicWord {
    sites: Vec<Vec<u32>>,
}

impl BosonicWord {
    /// Builds a word, sorting each site into canonical ascending order.
    pub fn new(mut sites: Vec<Vec<u32>>) -> Result<Self> {
        check_ring(sites.len())?;
        for (i, s) in sites.iter_mut().enumerate() {
            if s.contains(&0) {
                return Err(Error::domain(alloc::format!("site {} holds the label 0", i + 1)));
            }
            s.sort_unstable();
        }
        Ok(Self { sites })
    }

    pub fn sites(&self) -> &[Vec<u32>] {
        &self.sites
    }

    /// Multiset at a 1-indexed site.
    pub fn site(&self, site: usize) -> &[u32] {
        &self.sites[site - 1]
    }

    /// `C ⊕ A`: at each site the largest `A_j` entries grow by one.
    pub fn oplus(&self, a: &BosonicIndicator) -> Result<Self> {
        if a.n() != self.n() {
            return Err(Error::RingMismatch(self.n(), a.n()));
        }
        let mut sites = self.sites.clone();
        for (j, (site, &k)) in sites.iter_mut().zip(&a.counts).enumerate() {
            let len = site.len();
            if k as usize > len {
                return Err(Error::OplusSize { site: j + 1, requested: k, available: len });
            }
            for x in &mut site[len - k as usize..] {
                *x += 1;
            }
        }
        Ok(Self { sites })
    }
}

impl Word for BosonicWord {
    type Layer = BosonicIndicator;

    fn n(&self) -> usize {
        self.sites.len()
    }

    fn zero(n: usize) -> Result<Self> {
        Self::new(vec![Vec::new(); n])
    }

    fn upsilon(&self, m: u32) -> BosonicIndicator {
        BosonicIndicator {
            counts: self.sites.iter().map(|s| s.iter().filter(|&&l| m >= 1 && l >= m).count() as u32).collect(),
        }
    }

    fn max_label(&self) -> u32 {
        self.sites.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0)
    }

    fn min_label(&self) -> Option<u32> {
        self.sites.iter().filter_map(|s| s.first().copied()).min()
    }

    fn increment(&self, j: u32) -> Self {
        Self { sites: self.sites.iter().map(|s| s.iter().map(|&l| l + j).collect()).collect() }
    }

    /// `υ_1 ⊕ υ_2 ⊕ ⋯`, starting from the word of 1s carried by the first layer.
    fn recompose(n: usize, layers: &[BosonicIndicator]) -> Result<Self> {
        check_ring(n)?;
        check_nested(layers, n)?;
        let Some((first, rest)) = layers.split_first() else {
            return Self::zero(n);
        };
        let mut w = Self { sites: first.counts.iter().map(|&c| vec![1; c as usize]).collect() };
        for layer in rest {
            w = w.oplus(layer)?;
        }
        Ok(w)
    }

    fn site_labels(&self) -> Vec<Vec<u32>> {
        self.sites.clone()
    }

    fn from_site_labels(labels: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(labels)
    }
}

fn is_wide(labels: &[u32]) -> bool {
    labels.iter().any(|&l| l > 9)
}

fn write_list(f: &mut fmt::Formatter<'_>, labels: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, l) in labels.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    f.write_str("]")
}

/// Digits, e.g. `3252035`; with a label above 9, a list such as `[3,10,0]`.
impl fmt::Display for FermionicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_wide(&self.letters) {
            return write_list(f, &self.letters);
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FermionicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FermionicWord({self})")
    }
}

/// `(233,∅,2235,25)`; with a label above 9, `([2,3,3],[],[12])`.
impl fmt::Display for BosonicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.sites.iter().any(|s| is_wide(s));
        f.write_str("(")?;
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if wide {
                write_list(f, s)?;
            } else if s.is_empty() {
                f.write_str("∅")?;
            } else {
                for l in s {
                    write!(f, "{l}")?;
                }
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for BosonicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BosonicWord{self}")
    }
}

fn parse_label(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::domain(alloc::format!("bad label {s:?}")))
}

fn parse_digits(s: &str) -> Result<Vec<u32>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(10).ok_or_else(|| Error::domain(alloc::format!("bad digit {c:?}"))))
        .collect()
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_label).collect()
}

/// Accepts `"3252035"` (one digit per site), `"3,2,5,10"` or `"[3,2,5,10]"`.
impl FromStr for FermionicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            parse_list(inner)?
        } else if s.contains(',') {
            parse_list(s)?
        } else {
            parse_digits(s)?
        };
        Self::new(letters)
    }
}

/// Accepts `"(233,∅,2235,25)"`: one digit per label, `∅`, `-` or nothing for
/// an empty site. Labels above 9 are written space separated, as in
/// `"(3 12,∅)"`, or as lists, as in `"([3,12],[])"`.
impl FromStr for BosonicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut sites = Vec::new();
        if inner.contains('[') {
            let mut rest = inner.trim();
            while !rest.is_empty() {
                let body = rest.strip_prefix('[').ok_or_else(|| Error::domain(alloc::format!("expected '[' in {s:?}")))?;
                let end = body.find(']').ok_or_else(|| Error::domain(alloc::format!("unclosed '[' in {s:?}")))?;
                sites.push(parse_list(&body[..end])?);
                rest = body[end + 1..].trim_start();
                rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
            }
            return Self::new(sites);
        }
        for part in inner.split(',') {
            let part = part.trim();
            let site = if part.is_empty() || part == "∅" || part == "-" {
                Vec::new()
            } else if part.contains(' ') {
                part.split_whitespace().map(parse_label).collect::<Result<Vec<_>>>()?
            } else {
                parse_digits(part)?
            };
            sites.push(site);
        }
        Self::new(sites)
    }
}

/// Renders a row as the 1-indexed site list, e.g. `{1,3,3}`.
pub fn row_to_string<R: Row>(row: &R) -> String {
    let mut s = String::from("{");
    for (i, site) in row.sites().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&alloc::format!("{site}"));
    }
    s.push('}');
    s
}
