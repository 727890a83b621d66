use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chain::{ChainSpec, RationalDistribution};
use crate::error::{Error, Result};

/// Exact stationary distribution.
///
/// The chain must be strongly connected. The null space of the transposed
/// generator is found by Gaussian elimination over the rationals, and the
/// normalized solution is checked against the balance equations state by state.
pub fn stationary_exact<K: Ord + Clone>(chain: &ChainSpec<K>) -> Result<RationalDistribution<K>> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    if !chain.is_strongly_connected() {
        return Err(Error::Reducible);
    }
    let n = chain.len();
    // Row i of the system is the balance equation at state i:
    //   Σ_j π_j q_{j,i} − π_i q_i = 0
    let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); n];
    for (from, targets) in chain.merged_rates().into_iter().enumerate() {
        for (to, rate) in targets {
            *rows[to].entry(from).or_insert_with(BigRational::zero) += &rate;
            *rows[from].entry(from).or_insert_with(BigRational::zero) -= rate;
        }
    }
    let pi = null_vector(rows, n)?;
    let dist = RationalDistribution::from_weights(chain.states().iter().cloned().zip(pi).collect())?;
    if !check_balance(chain, &dist) {
        return Err(Error::Invariant("stationary solution fails the balance equations".into()));
    }
    Ok(dist)
}

/// Returns a nonzero vector spanning the null space of a sparse square
/// matrix, or an error when the null space is not one-dimensional.
fn null_vector(mut rows: Vec<BTreeMap<usize, BigRational>>, n: usize) -> Result<Vec<BigRational>> {
    rows.retain(|r| r.values().any(|v| !v.is_zero()));
    let mut pivots: Vec<(usize, BTreeMap<usize, BigRational>)> = Vec::new();
    let mut pending = rows;
    for col in 0..n {
        let Some(pos) = pending.iter().position(|r| r.get(&col).is_some_and(|v| !v.is_zero())) else {
            continue;
        };
        let mut pivot = pending.swap_remove(pos);
        let inv = BigRational::one() / pivot[&col].clone();
        for v in pivot.values_mut() {
            *v *= &inv;
        }
        pivot.retain(|_, v| !v.is_zero());
        for r in pending.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
            let Some(f) = r.get(&col).cloned() else { continue };
            if f.is_zero() {
                continue;
            }
            for (&c, v) in &pivot {
                let e = r.entry(c).or_insert_with(BigRational::zero);
                *e -= &f * v;
            }
            r.retain(|_, v| !v.is_zero());
        }
        pending.retain(|r| !r.is_empty());
        pivots.push((col, pivot));
    }
    if n - pivots.len() != 1 {
        return Err(Error::Reducible);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let free = (0..n).find(|c| !pivot_cols.contains(c)).expect("one free column");
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (col, row) in &pivots {
        // row is reduced: x_col + a·x_free = 0
        x[*col] = -row.get(&free).cloned().unwrap_or_else(BigRational::zero);
    }
    if x.iter().any(|v| v.is_negative()) {
        for v in &mut x {
            *v = -v.clone();
        }
    }
    Ok(x)
}

/// Checks `π(i)·q_i = Σ_j π(j)·q_{j,i}` exactly at every state.
pub fn check_balance<K: Ord + Clone>(chain: &ChainSpec<K>, dist: &RationalDistribution<K>) -> bool {
    let pi: Vec<BigRational> = chain.states().iter().map(|s| dist.get(s)).collect();
    let mut inflow = vec![BigRational::zero(); chain.len()];
    let mut outflow = vec![BigRational::zero(); chain.len()];
    for t in chain.transitions() {
        let flux = &pi[t.from] * &t.rate;
        inflow[t.to] += &flux;
        outflow[t.from] += flux;
    }
    inflow == outflow && dist.total().is_one()
}
