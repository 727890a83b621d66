//! Multiline queues, weights, the row involutions `σ_i`, straightening and
//! enumeration.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::marker::PhantomData;

use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::combinatorics::{binomial, multichoose, unrank_multiset_colex, unrank_subset_colex};
use crate::error::{Error, Result};
use crate::pairing::{par_bosonic, par_fermionic, PairingResult};
use crate::words::{BosonicIndicator, BosonicWord, FermionicIndicator, FermionicWord, Row, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Fermionic,
    Bosonic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Fermionic => "fermionic",
            Kind::Bosonic => "bosonic",
        })
    }
}

/// Particle statistics: exclusion (fermionic) or zero range (bosonic).
pub trait Statistic:
    Clone + Copy + fmt::Debug + Default + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static
{
    type Row: Row;
    type Word: Word<Layer = Self::Row>;
    const KIND: Kind;

    /// `Par` or `bPar` with the given lower and upper rows.
    fn pair(lower: &Self::Row, upper: &Self::Row) -> PairingResult;

    /// Reassembles a word from layers: entrywise sum (fermionic) or the
    /// `⊕` chain in nested order (bosonic).
    fn combine(n: usize, layers: Vec<Self::Row>) -> Result<Self::Word>;

    /// Number of rows of the given size on `Z_n`.
    fn row_count(n: usize, size: usize) -> u128;

    /// The `rank`-th row of the given size in colex order.
    fn unrank_row(n: usize, size: usize, rank: u128) -> Self::Row;

    /// Nearest free lower site for a single upper particle at 0-indexed
    /// `site`, scanning in this statistic's pairing direction.
    fn partner(site: usize, free: &[u32]) -> Option<usize>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fermionic;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bosonic;

impl Statistic for Fermionic {
    type Row = FermionicIndicator;
    type Word = FermionicWord;
    const KIND: Kind = Kind::Fermionic;

    fn pair(lower: &FermionicIndicator, upper: &FermionicIndicator) -> PairingResult {
        par_fermionic(lower, upper)
    }

    fn combine(n: usize, layers: Vec<FermionicIndicator>) -> Result<FermionicWord> {
        let mut letters = vec![0u32; n];
        for layer in &layers {
            if layer.n() != n {
                return Err(Error::RingMismatch(n, layer.n()));
            }
            for (l, c) in letters.iter_mut().zip(layer.counts()) {
                *l += c;
            }
        }
        FermionicWord::new(letters)
    }

    fn row_count(n: usize, size: usize) -> u128 {
        binomial(n as u64, size as u64)
    }

    fn unrank_row(n: usize, size: usize, rank: u128) -> FermionicIndicator {
        let sites: Vec<usize> = unrank_subset_colex(n, size, rank).into_iter().map(|s| s + 1).collect();
        FermionicIndicator::from_sites(&sites, n).expect("unranked subset is valid")
    }

    fn partner(site: usize, free: &[u32]) -> Option<usize> {
        let n = free.len();
        (0..n).map(|d| (site + d) % n).find(|&t| free[t] > 0)
    }
}

impl Statistic for Bosonic {
    type Row = BosonicIndicator;
    type Word = BosonicWord;
    const KIND: Kind = Kind::Bosonic;

    fn pair(lower: &BosonicIndicator, upper: &BosonicIndicator) -> PairingResult {
        par_bosonic(lower, upper)
    }

    fn combine(n: usize, mut layers: Vec<BosonicIndicator>) -> Result<BosonicWord> {
        layers.sort_by_key(|l| core::cmp::Reverse(l.size()));
        BosonicWord::recompose(n, &layers)
    }

    fn row_count(n: usize, size: usize) -> u128 {
        multichoose(n as u64, size as u64)
    }

    fn unrank_row(n: usize, size: usize, rank: u128) -> BosonicIndicator {
        let sites: Vec<usize> = unrank_multiset_colex(n, size, rank).into_iter().map(|s| s + 1).collect();
        BosonicIndicator::from_sites(&sites, n).expect("unranked multiset is valid")
    }

    fn partner(site: usize, free: &[u32]) -> Option<usize> {
        let n = free.len();
        (1..=n).map(|d| (site + n * 2 - d) % n).find(|&t| free[t] > 0)
    }
}

/// A multiline queue: rows bottom first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mlq<S: Statistic> {
    rows: Vec<S::Row>,
    _kind: PhantomData<S>,
}

pub type FermionicMlq = Mlq<Fermionic>;
pub type BosonicMlq = Mlq<Bosonic>;

impl<S: Statistic> Mlq<S> {
    pub fn new(rows: Vec<S::Row>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::domain("a multiline queue needs at least one row"));
        };
        let n = first.n();
        if let Some(r) = rows.iter().find(|r| r.n() != n) {
            return Err(Error::RingMismatch(n, r.n()));
        }
        Ok(Self { rows, _kind: PhantomData })
    }

    /// Builds a queue from 1-indexed site lists, bottom row first.
    pub fn from_sites<V: AsRef<[usize]>>(n: usize, rows: &[V]) -> Result<Self> {
        let rows = rows.iter().map(|r| S::Row::from_sites(r.as_ref(), n)).collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.rows[0].n()
    }

    /// Number of rows `k`.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[S::Row] {
        &self.rows
    }

    /// Row `Q_j`, 1-indexed from the bottom.
    pub fn row(&self, j: usize) -> &S::Row {
        &self.rows[j - 1]
    }

    pub fn into_rows(self) -> Vec<S::Row> {
        self.rows
    }

    pub fn shape(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.size() as u32).collect()
    }

    pub fn is_straight(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].size() >= w[1].size())
    }

    pub fn weight(&self) -> Monomial {
        let mut exponents = vec![0u32; self.n()];
        for r in &self.rows {
            for (e, c) in exponents.iter_mut().zip(r.counts()) {
                *e += c;
            }
        }
        Monomial { exponents }
    }

    /// Rows `j..=k` as a queue of their own (1-indexed).
    pub fn sub_queue(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.k() {
            return Err(Error::RowIndex { index: j, rows: self.k() });
        }
        Self::new(self.rows[j - 1..].to_vec())
    }

    /// `σ_i`: swaps the unpaired particles of rows `i` and `i + 1`.
    pub fn sigma(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.k() {
            return Err(Error::RowIndex { index: i, rows: self.k() });
        }
        let (lower, upper) = sigma_rows::<S>(&self.rows[i - 1], &self.rows[i])?;
        let mut rows = self.rows.clone();
        rows[i - 1] = lower;
        rows[i] = upper;
        Ok(Self { rows, _kind: PhantomData })
    }

    /// Applies `σ_{w_1} ∘ ⋯ ∘ σ_{w_m}`, so the last index acts first.
    pub fn apply_word(&self, word: &[usize]) -> Result<Self> {
        let mut q = self.clone();
        for &i in word.iter().rev() {
            q = q.sigma(i)?;
        }
        Ok(q)
    }

    /// Bubble-sorts row sizes into weakly decreasing order using `σ`.
    ///
    /// Returns the straight queue and a word `w` with
    /// `self.apply_word(&w) == straight`.
    pub fn straighten(&self) -> (Self, Vec<usize>) {
        let mut q = self.clone();
        let mut applied = Vec::new();
        loop {
            let mut swapped = false;
            for i in 1..q.k() {
                if q.rows[i - 1].size() < q.rows[i].size() {
                    q = q.sigma(i).expect("index in range");
                    applied.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        applied.reverse();
        (q, applied)
    }

    /// Enumerates `MLQ(α, n)`: the top row varies fastest, rows in colex order.
    pub fn enumerate(alpha: &[u32], n: usize) -> Result<MlqIter<S>> {
        let total = mlq_count::<S>(alpha, n)?;
        Ok(MlqIter { alpha: alpha.to_vec(), n, next: 0, end: total, _kind: PhantomData })
    }

    /// The `rank`-th queue of [`Mlq::enumerate`].
    pub fn unrank(alpha: &[u32], n: usize, mut rank: u128) -> Result<Self> {
        let total = mlq_count::<S>(alpha, n)?;
        if rank >= total {
            return Err(Error::domain("rank beyond the enumeration"));
        }
        let mut rows = vec![S::Row::empty(n); alpha.len()];
        for j in (0..alpha.len()).rev() {
            let c = S::row_count(n, alpha[j] as usize);
            rows[j] = S::unrank_row(n, alpha[j] as usize, rank % c);
            rank /= c;
        }
        Self::new(rows)
    }
}

pub(crate) fn sigma_rows<S: Statistic>(lower: &S::Row, upper: &S::Row) -> Result<(S::Row, S::Row)> {
    if lower.n() != upper.n() {
        return Err(Error::RingMismatch(lower.n(), upper.n()));
    }
    let p = S::pair(lower, upper);
    let lo = lower.counts();
    let up = upper.counts();
    let new_lower = (0..lo.len()).map(|j| lo[j] - p.unpaired_lower[j] + p.unpaired_upper[j]).collect();
    let new_upper = (0..up.len()).map(|j| up[j] - p.unpaired_upper[j] + p.unpaired_lower[j]).collect();
    Ok((S::Row::from_counts(new_lower)?, S::Row::from_counts(new_upper)?))
}

/// `|MLQ(α, n)|`: a product of binomial or multiset coefficients.
pub fn mlq_count<S: Statistic>(alpha: &[u32], n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::EmptyRing);
    }
    if alpha.is_empty() {
        return Err(Error::domain("a multiline queue needs at least one row"));
    }
    if S::KIND == Kind::Fermionic {
        if let Some(&a) = alpha.iter().find(|&&a| a as usize > n) {
            return Err(Error::domain(alloc::format!("row size {a} exceeds ring size {n}")));
        }
    }
    Ok(alpha.iter().map(|&a| S::row_count(n, a as usize)).fold(1u128, |acc, c| acc.saturating_mul(c)))
}

pub struct MlqIter<S: Statistic> {
    alpha: Vec<u32>,
    n: usize,
    next: u128,
    end: u128,
    _kind: PhantomData<S>,
}

impl<S: Statistic> MlqIter<S> {
    /// Restricts the stream to ranks `start..end`, for splitting work.
    pub fn range(mut self, start: u128, end: u128) -> Self {
        self.end = end.min(self.end);
        self.next = start.min(self.end);
        self
    }

    pub fn total(&self) -> u128 {
        self.end
    }
}

impl<S: Statistic> Iterator for MlqIter<S> {
    type Item = Mlq<S>;

    fn next(&mut self) -> Option<Mlq<S>> {
        if self.next >= self.end {
            return None;
        }
        let q = Mlq::unrank(&self.alpha, self.n, self.next).ok();
        self.next += 1;
        q
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

impl<S: Statistic> fmt::Debug for Mlq<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, ", S::KIND, self.n())?;
        f.debug_list().entries(self.rows.iter().map(|r| r.sites())).finish()?;
        f.write_str(")")
    }
}

/// `x^Q`: an exponent vector over `x_1, .., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n] }
    }

    /// `x_i` for a 1-indexed site.
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exponents[i - 1] = 1;
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::one();
        for (xi, &e) in x.iter().zip(&self.exponents) {
            if e > 0 {
                acc *= Pow::pow(xi.clone(), e);
            }
        }
        acc
    }
}
