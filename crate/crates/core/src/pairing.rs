//! Cylindrical bracket matching and the two-row pairings `Par` and `bPar`.

use alloc::vec::Vec;

use crate::words::{BosonicIndicator, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracket {
    Open,
    Close,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowSide {
    Lower,
    Upper,
}

/// Where a bracket came from: a particle of the lower or upper row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Origin {
    /// 1-indexed site.
    pub site: usize,
    pub row: RowSide,
    /// Ordinal among the particles of that row at that site.
    pub instance: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: Bracket,
    pub origin: Origin,
}

/// Index-level outcome of [`match_brackets`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketMatching {
    /// `(open index, close index)` pairs.
    pub pairs: Vec<(usize, usize)>,
    /// Unmatched token indices, ascending.
    pub unmatched: Vec<usize>,
}

/// Matches brackets on a circle.
///
/// A linear stack pass matches every `(` with a later `)`. What is left reads
/// `)^a (^b`; the rightmost leftover open takes the leftmost leftover close,
/// the next open inward takes the next close, and so on.
pub fn match_brackets(kinds: &[Bracket]) -> BracketMatching {
    let mut stack = Vec::new();
    let mut closes = Vec::new();
    let mut pairs = Vec::new();
    for (i, k) in kinds.iter().enumerate() {
        match k {
            Bracket::Open => stack.push(i),
            Bracket::Close => match stack.pop() {
                Some(o) => pairs.push((o, i)),
                None => closes.push(i),
            },
        }
    }
    let opens = stack;
    let m = opens.len().min(closes.len());
    for t in 0..m {
        pairs.push((opens[opens.len() - 1 - t], closes[t]));
    }
    let mut unmatched: Vec<usize> = opens[..opens.len() - m].iter().chain(&closes[m..]).copied().collect();
    unmatched.sort_unstable();
    pairs.sort_unstable();
    BracketMatching { pairs, unmatched }
}

/// A scan of two rows as a bracket string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSeq {
    pub n: usize,
    pub tokens: Vec<Token>,
}

impl BracketSeq {
    fn emit(n: usize, lower: &[u32], upper: &[u32], upper_kind: Bracket) -> Self {
        let lower_kind = match upper_kind {
            Bracket::Open => Bracket::Close,
            Bracket::Close => Bracket::Open,
        };
        let mut tokens = Vec::new();
        let push = |tokens: &mut Vec<Token>, site: usize, row: RowSide, kind: Bracket, count: u32| {
            for instance in 0..count {
                tokens.push(Token { kind, origin: Origin { site, row, instance } });
            }
        };
        for j in 0..n {
            push(&mut tokens, j + 1, RowSide::Upper, upper_kind, upper[j]);
            push(&mut tokens, j + 1, RowSide::Lower, lower_kind, lower[j]);
        }
        Self { n, tokens }
    }

    /// Fermionic scan: at each site an open per upper particle, then a close
    /// per lower particle.
    pub fn fermionic<R: Row>(lower: &R, upper: &R) -> Self {
        Self::emit(lower.n(), &lower.counts(), &upper.counts(), Bracket::Open)
    }

    /// Bosonic scan: at each site a close per upper particle, then an open
    /// per lower particle.
    pub fn bosonic<R: Row>(lower: &R, upper: &R) -> Self {
        Self::emit(lower.n(), &lower.counts(), &upper.counts(), Bracket::Close)
    }

    pub fn kinds(&self) -> Vec<Bracket> {
        self.tokens.iter().map(|t| t.kind).collect()
    }

    pub fn cyl_match(&self) -> PairingResult {
        let m = match_brackets(&self.kinds());
        let mut result = PairingResult::empty(self.n);
        for &(a, b) in &m.pairs {
            let (oa, ob) = (self.tokens[a].origin, self.tokens[b].origin);
            let (up, lo) = if oa.row == RowSide::Upper { (oa, ob) } else { (ob, oa) };
            debug_assert!(up.row == RowSide::Upper && lo.row == RowSide::Lower);
            result.pairs.push((up, lo));
            result.paired_upper[up.site - 1] += 1;
            result.paired_lower[lo.site - 1] += 1;
        }
        for &i in &m.unmatched {
            let o = self.tokens[i].origin;
            match o.row {
                RowSide::Upper => result.unpaired_upper[o.site - 1] += 1,
                RowSide::Lower => result.unpaired_lower[o.site - 1] += 1,
            }
        }
        result.pairs.sort_unstable();
        result
    }
}

/// Outcome of pairing an upper row onto a lower row.
///
/// The multiplicity vectors are what downstream algorithms consume; `pairs`
/// records one valid choice of partners for rendering and diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingResult {
    pub n: usize,
    /// `(upper particle, lower particle)`.
    pub pairs: Vec<(Origin, Origin)>,
    pub paired_upper: Vec<u32>,
    pub paired_lower: Vec<u32>,
    pub unpaired_upper: Vec<u32>,
    pub unpaired_lower: Vec<u32>,
}

impl PairingResult {
    fn empty(n: usize) -> Self {
        Self {
            n,
            pairs: Vec::new(),
            paired_upper: alloc::vec![0; n],
            paired_lower: alloc::vec![0; n],
            unpaired_upper: alloc::vec![0; n],
            unpaired_lower: alloc::vec![0; n],
        }
    }

    fn multiset(v: &[u32]) -> BosonicIndicator {
        BosonicIndicator::from_counts(v.to_vec()).expect("pairing counts have ring length")
    }

    pub fn unpaired_upper_sites(&self) -> BosonicIndicator {
        Self::multiset(&self.unpaired_upper)
    }

    pub fn unpaired_lower_sites(&self) -> BosonicIndicator {
        Self::multiset(&self.unpaired_lower)
    }

    pub fn paired_upper_sites(&self) -> BosonicIndicator {
        Self::multiset(&self.paired_upper)
    }

    pub fn paired_lower_sites(&self) -> BosonicIndicator {
        Self::multiset(&self.paired_lower)
    }

    /// `(upper site, lower site)` of each pair, 1-indexed.
    pub fn site_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|(u, l)| (u.site, l.site)).collect()
    }
}

/// `Par(A, B)`: upper row `B` pairs weakly to the right onto lower row `A`.
pub fn par_fermionic<R: Row>(lower: &R, upper: &R) -> PairingResult {
    BracketSeq::fermionic(lower, upper).cyl_match()
}

/// `bPar(Ã, B̃)`: upper row `B̃` pairs strictly to the left onto lower row `Ã`.
pub fn par_bosonic<R: Row>(lower: &R, upper: &R) -> PairingResult {
    BracketSeq::bosonic(lower, upper).cyl_match()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{FermionicIndicator, Row};
    use alloc::vec;

    fn brackets(s: &str) -> Vec<Bracket> {
        s.chars().map(|c| if c == '(' { Bracket::Open } else { Bracket::Close }).collect()
    }

    fn f(sites: &[usize], n: usize) -> FermionicIndicator {
        FermionicIndicator::from_sites(sites, n).unwrap()
    }

    fn b(sites: &[usize], n: usize) -> BosonicIndicator {
        BosonicIndicator::from_sites(sites, n).unwrap()
    }

    #[test]
    fn bracket_strings() {
        assert_eq!(match_brackets(&brackets("())()((")).unmatched, vec![5]);
        assert_eq!(match_brackets(&brackets("))(())")).unmatched, vec![0, 1]);
        assert!(match_brackets(&brackets("()()()()")).unmatched.is_empty());
        assert_eq!(match_brackets(&brackets(")(")).pairs, vec![(1, 0)]);
    }

    #[test]
    fn fermionic_pairing_figure() {
        let p = par_fermionic(&f(&[1, 2, 4], 6), &f(&[1, 3, 5, 6], 6));
        assert_eq!(p.unpaired_upper, vec![0, 0, 0, 0, 1, 0]);
        assert_eq!(p.unpaired_lower.iter().sum::<u32>(), 0);
        let seq = BracketSeq::fermionic(&f(&[1, 2, 4], 6), &f(&[1, 3, 5, 6], 6));
        let s: alloc::string::String =
            seq.kinds().iter().map(|k| if *k == Bracket::Open { '(' } else { ')' }).collect();
        assert_eq!(s, "())()((");
        let mut pairs = p.site_pairs();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(1, 1), (3, 4), (6, 2)]);

        let p = par_fermionic(&f(&[1, 3, 5, 6], 6), &f(&[2, 3], 6));
        assert_eq!(p.unpaired_lower, vec![1, 0, 0, 0, 0, 1]);
        let a = f(&[2, 4, 5], 6);
        let p = par_fermionic(&a, &a);
        assert!(p.site_pairs().iter().all(|(u, l)| u == l));
    }

    #[test]
    fn bosonic_pairing_figure() {
        let p = par_bosonic(&b(&[1, 2, 2, 4, 5], 6), &b(&[2, 2], 6));
        assert_eq!(b(&[2, 2, 4], 6).counts(), p.unpaired_lower);
        let mut lower: Vec<usize> = p.site_pairs().iter().map(|x| x.1).collect();
        lower.sort_unstable();
        assert_eq!(lower, vec![1, 5]);

        let p = par_bosonic(&b(&[2, 2], 6), &b(&[1, 2, 4, 6], 6));
        assert_eq!(b(&[1, 2], 6).counts(), p.unpaired_upper);
        let mut pairs = p.site_pairs();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(4, 2), (6, 2)]);

        let p = par_bosonic(&b(&[1, 3], 4), &b(&[], 4));
        assert!(p.pairs.is_empty());
        assert_eq!(p.unpaired_lower, vec![1, 0, 1, 0]);
    }

    #[test]
    fn bosonic_never_pairs_same_site() {
        let p = par_bosonic(&b(&[2, 2, 3], 3), &b(&[2, 3, 3], 3));
        assert!(p.site_pairs().iter().all(|(u, l)| u != l));
    }
}
