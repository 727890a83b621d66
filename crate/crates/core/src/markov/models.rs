use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::chain::{ChainSpec, RateParams};
use super::ringing::{ring_forward_bosonic, ring_forward_fermionic};
use crate::combinatorics::{multiset_permutations, sort_partition, weak_compositions};
use crate::error::{Error, Result};
use crate::mlq::{BosonicMlq, FermionicMlq};
use crate::words::{BosonicWord, FermionicWord, Word};

fn clean_partition(lambda: &[u32]) -> Result<Vec<u32>> {
    let p = sort_partition(lambda);
    if p.is_empty() {
        return Err(Error::domain("λ must have at least one positive part"));
    }
    Ok(p)
}

/// `W(λ, n)`: words whose nonzero letters rearrange to `λ`, lexicographic.
pub fn tasep_states(lambda: &[u32], n: usize) -> Result<Vec<FermionicWord>> {
    let lambda = clean_partition(lambda)?;
    if n == 0 {
        return Err(Error::EmptyRing);
    }
    if lambda.len() > n {
        return Err(Error::domain(alloc::format!("{} particles do not fit on {n} sites", lambda.len())));
    }
    let mut letters = lambda;
    letters.resize(n, 0);
    multiset_permutations(&letters).into_iter().map(FermionicWord::new).collect()
}

/// `W̃(λ, n)`: bosonic words whose union of letters sorts to `λ`.
pub fn tazrp_states(lambda: &[u32], n: usize) -> Result<Vec<BosonicWord>> {
    let lambda = clean_partition(lambda)?;
    if n == 0 {
        return Err(Error::EmptyRing);
    }
    let mut values: Vec<(u32, u32)> = Vec::new();
    for &p in &lambda {
        match values.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => values.push((p, 1)),
        }
    }
    let mut words: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]];
    for (value, mult) in values {
        let spreads = weak_compositions(mult, n);
        let mut next = Vec::with_capacity(words.len() * spreads.len());
        for w in &words {
            for spread in &spreads {
                let mut w2 = w.clone();
                for (site, &c) in w2.iter_mut().zip(spread) {
                    site.extend(core::iter::repeat_n(value, c as usize));
                }
                next.push(w2);
            }
        }
        words = next;
    }
    let set: BTreeSet<BosonicWord> = words.into_iter().map(BosonicWord::new).collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

/// Heavier letters hop one step left past lighter ones (vacancies are
/// letter 0), rate 1 for each cyclic adjacent pair.
pub fn tasep_transitions(w: &FermionicWord) -> Vec<(FermionicWord, BigRational)> {
    let n = w.n();
    let letters = w.letters();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for i in 0..n {
        let j = (i + 1) % n;
        if letters[j] > letters[i] {
            let mut next = letters.to_vec();
            next.swap(i, j);
            out.push((FermionicWord::new(next).expect("same length"), BigRational::one()));
        }
    }
    out
}

/// The largest label at each occupied site `j` moves to `j + 1` at rate `1/x_j`.
pub fn tazrp_transitions(w: &BosonicWord, x: &RateParams) -> Result<Vec<(BosonicWord, BigRational)>> {
    x.check_len(w.n())?;
    let n = w.n();
    let mut out = Vec::new();
    for j in 0..n {
        let mut sites = w.sites().to_vec();
        let Some(top) = sites[j].pop() else { continue };
        sites[(j + 1) % n].push(top);
        out.push((BosonicWord::new(sites)?, BigRational::one() / x.get(j + 1)));
    }
    Ok(out)
}

/// For each site and each `t`, the `t` largest labels move together to the
/// next site at rate 1.
pub fn ktazrp_transitions(w: &BosonicWord) -> Vec<(BosonicWord, BigRational)> {
    let n = w.n();
    let mut out = Vec::new();
    for j in 0..n {
        let len = w.sites()[j].len();
        for t in 1..=len {
            let mut sites = w.sites().to_vec();
            let moved: Vec<u32> = sites[j].split_off(len - t);
            sites[(j + 1) % n].extend(moved);
            out.push((BosonicWord::new(sites).expect("labels stay positive"), BigRational::one()));
        }
    }
    out
}

pub fn tasep_chain(lambda: &[u32], n: usize) -> Result<ChainSpec<FermionicWord>> {
    ChainSpec::from_generator(tasep_states(lambda, n)?, |w| Ok(tasep_transitions(w)))
}

pub fn tazrp_chain(lambda: &[u32], n: usize, x: &RateParams) -> Result<ChainSpec<BosonicWord>> {
    x.check_len(n)?;
    ChainSpec::from_generator(tazrp_states(lambda, n)?, |w| tazrp_transitions(w, x))
}

pub fn ktazrp_chain(lambda: &[u32], n: usize) -> Result<ChainSpec<BosonicWord>> {
    ChainSpec::from_generator(tazrp_states(lambda, n)?, |w| Ok(ktazrp_transitions(w)))
}

/// Ringing-path chain on `MLQ(λ, n)`; `λ` must be weakly decreasing.
pub fn fermionic_mlq_chain(lambda: &[u32], n: usize) -> Result<ChainSpec<FermionicMlq>> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotStraight);
    }
    let states: Vec<FermionicMlq> = FermionicMlq::enumerate(lambda, n)?.collect();
    ChainSpec::from_generator(states, |q| {
        (1..=n).map(|i| Ok((ring_forward_fermionic(q, i)?.queue, BigRational::one()))).collect()
    })
}

/// Ringing-path chain on `bMLQ(α, n)` for any composition `α`.
pub fn bosonic_mlq_chain(alpha: &[u32], n: usize, x: &RateParams) -> Result<ChainSpec<BosonicMlq>> {
    x.check_len(n)?;
    let states: Vec<BosonicMlq> = BosonicMlq::enumerate(alpha, n)?.collect();
    ChainSpec::from_generator(states, |d| {
        (1..=n)
            .map(|i| {
                let r = ring_forward_bosonic(d, i, x)?;
                Ok((r.queue, r.rate))
            })
            .collect()
    })
}
