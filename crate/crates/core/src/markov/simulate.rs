use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::chain::{ChainSpec, RationalDistribution};
use crate::error::{Error, Result};

/// Uniform draw in `(0, 1]`.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Jump simulation from state 0 on stream 0 of the seeded generator.
pub fn simulate_ctmc<K: Ord + Clone>(chain: &ChainSpec<K>, seed: u64, jumps: u64) -> Result<Vec<f64>> {
    simulate_ctmc_stream(chain, seed, 0, jumps)
}

/// Gillespie jump simulation; returns the fraction of time spent in each state.
///
/// Distinct `stream` values give independent runs from one `seed`.
pub fn simulate_ctmc_stream<K: Ord + Clone>(chain: &ChainSpec<K>, seed: u64, stream: u64, jumps: u64) -> Result<Vec<f64>> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let n = chain.len();
    let mut moves: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for t in chain.transitions() {
        let rate = t.rate.to_f64().ok_or_else(|| Error::InvalidChain("rate not representable".into()))?;
        moves[t.from].push((t.to, rate));
    }
    let exits: Vec<f64> = moves.iter().map(|m| m.iter().map(|(_, r)| r).sum()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut time = vec![0.0f64; n];
    let mut state = 0usize;
    if n == 1 {
        time[0] = 1.0;
        return Ok(time);
    }
    for _ in 0..jumps {
        let total = exits[state];
        if total <= 0.0 {
            return Err(Error::Absorbing(state));
        }
        time[state] += -libm::log(unit(&mut rng)) / total;
        let mut pick = unit(&mut rng) * total;
        let mut next = moves[state].last().map(|m| m.0).unwrap_or(state);
        for &(to, r) in &moves[state] {
            if pick <= r {
                next = to;
                break;
            }
            pick -= r;
        }
        state = next;
    }
    let total: f64 = time.iter().sum();
    if total > 0.0 {
        for t in &mut time {
            *t /= total;
        }
    }
    Ok(time)
}

/// Total-variation distance between an exact law and simulated frequencies
/// indexed like `chain.states()`.
pub fn total_variation<K: Ord + Clone>(chain: &ChainSpec<K>, exact: &RationalDistribution<K>, freqs: &[f64]) -> f64 {
    chain
        .states()
        .iter()
        .zip(freqs)
        .map(|(s, f)| (exact.get(s).to_f64().unwrap_or(0.0) - f).abs())
        .sum::<f64>()
        / 2.0
}
