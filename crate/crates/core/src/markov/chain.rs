use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub rate: BigRational,
}

/// A finite continuous-time Markov chain with exact rates.
///
/// Parallel transitions between the same pair of states are kept apart;
/// self-loops are never stored.
#[derive(Clone, Debug)]
pub struct ChainSpec<K> {
    states: Vec<K>,
    index: BTreeMap<K, usize>,
    transitions: Vec<Transition>,
}

impl<K: Ord + Clone> ChainSpec<K> {
    pub fn new(states: Vec<K>, transitions: Vec<Transition>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidChain(alloc::format!("state {i} is listed twice")));
            }
        }
        for t in &transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return Err(Error::InvalidChain("transition endpoint out of range".into()));
            }
            if t.from == t.to {
                return Err(Error::InvalidChain(alloc::format!("self-loop at state {}", t.from)));
            }
            if !t.rate.is_positive() {
                return Err(Error::InvalidChain("rates must be positive".into()));
            }
        }
        Ok(Self { states, index, transitions })
    }

    /// Builds a chain from per-state outgoing moves, dropping self-loops.
    /// Every target must be one of `states`.
    pub fn from_outgoing(states: Vec<K>, outgoing: Vec<Vec<(K, BigRational)>>) -> Result<Self> {
        let index: BTreeMap<K, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut transitions = Vec::new();
        for (from, moves) in outgoing.into_iter().enumerate() {
            for (target, rate) in moves {
                let to = *index
                    .get(&target)
                    .ok_or_else(|| Error::InvalidChain(alloc::format!("state {from} moves outside the state space")))?;
                if to != from {
                    transitions.push(Transition { from, to, rate });
                }
            }
        }
        Self::new(states, transitions)
    }

    /// Builds a chain by calling `moves` on every state.
    pub fn from_generator<F>(states: Vec<K>, mut moves: F) -> Result<Self>
    where
        F: FnMut(&K) -> Result<Vec<(K, BigRational)>>,
    {
        let outgoing = states.iter().map(&mut moves).collect::<Result<Vec<_>>>()?;
        Self::from_outgoing(states, outgoing)
    }

    pub fn states(&self) -> &[K] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, state: &K) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Total exit rate of each state.
    pub fn exit_rates(&self) -> Vec<BigRational> {
        let mut out = alloc::vec![BigRational::zero(); self.len()];
        for t in &self.transitions {
            out[t.from] += &t.rate;
        }
        out
    }

    /// Summed rate from each state to each other state.
    pub fn merged_rates(&self) -> Vec<BTreeMap<usize, BigRational>> {
        let mut out = alloc::vec![BTreeMap::new(); self.len()];
        for t in &self.transitions {
            *out[t.from].entry(t.to).or_insert_with(BigRational::zero) += &t.rate;
        }
        out
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.states.is_empty() {
            return false;
        }
        let n = self.len();
        let mut fwd = alloc::vec![Vec::new(); n];
        let mut bwd = alloc::vec![Vec::new(); n];
        for t in &self.transitions {
            fwd[t.from].push(t.to);
            bwd[t.to].push(t.from);
        }
        let reach = |adj: &[Vec<usize>]| {
            let mut seen = alloc::vec![false; n];
            let mut stack = alloc::vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(&fwd) && reach(&bwd)
    }
}

/// Site parameters `x_1, .., x_n`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateParams {
    x: Vec<BigRational>,
}

impl RateParams {
    pub fn new(x: Vec<BigRational>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyRing);
        }
        if x.iter().any(|v| !v.is_positive()) {
            return Err(Error::domain("site parameters must be positive"));
        }
        Ok(Self { x })
    }

    pub fn ones(n: usize) -> Self {
        Self { x: alloc::vec![BigRational::one(); n] }
    }

    pub fn from_integers(x: &[i64]) -> Result<Self> {
        Self::new(x.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `x_i` for a 1-indexed site.
    pub fn get(&self, i: usize) -> &BigRational {
        &self.x[i - 1]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.x
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.n() != n {
            Err(Error::RingMismatch(n, self.n()))
        } else {
            Ok(())
        }
    }
}

/// An exact probability distribution over chain states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDistribution<K: Ord> {
    probs: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> RationalDistribution<K> {
    /// Normalizes nonnegative weights. Keys absent from the map have
    /// probability zero.
    pub fn from_weights(weights: BTreeMap<K, BigRational>) -> Result<Self> {
        let total: BigRational = weights.values().fold(BigRational::zero(), |a, b| a + b);
        if !total.is_positive() || weights.values().any(|w| w.is_negative()) {
            return Err(Error::domain("weights must be nonnegative with positive total"));
        }
        Ok(Self { probs: weights.into_iter().map(|(k, w)| (k, w / &total)).collect() })
    }

    pub fn get(&self, state: &K) -> BigRational {
        self.probs.get(state).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.probs.iter()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> BigRational {
        self.probs.values().fold(BigRational::zero(), |a, b| a + b)
    }
}
