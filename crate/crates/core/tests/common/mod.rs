#![allow(dead_code)]

use mlq_core::{BosonicIndicator, BosonicMlq, BosonicWord, FermionicIndicator, FermionicMlq, FermionicWord, Mlq, Row};
use proptest::prelude::*;

pub fn fermionic_row(n: usize) -> impl Strategy<Value = FermionicIndicator> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| FermionicIndicator::from_bits(b).unwrap())
}

pub fn bosonic_row(n: usize, max: u32) -> impl Strategy<Value = BosonicIndicator> {
    proptest::collection::vec(0..=max, n).prop_map(|c| BosonicIndicator::from_counts(c).unwrap())
}

pub fn fermionic_queue(max_n: usize, max_k: usize) -> impl Strategy<Value = FermionicMlq> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        proptest::collection::vec(fermionic_row(n), k).prop_map(|rows| Mlq::new(rows).unwrap())
    })
}

pub fn bosonic_queue(max_n: usize, max_k: usize, max_count: u32) -> impl Strategy<Value = BosonicMlq> {
    (1..=max_n, 1..=max_k).prop_flat_map(move |(n, k)| {
        proptest::collection::vec(bosonic_row(n, max_count), k).prop_map(|rows| Mlq::new(rows).unwrap())
    })
}

pub fn fermionic_word(max_n: usize, max_label: u32) -> impl Strategy<Value = FermionicWord> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max_label, n).prop_map(|l| FermionicWord::new(l).unwrap())
    })
}

pub fn bosonic_word(max_n: usize, max_label: u32, max_per_site: usize) -> impl Strategy<Value = BosonicWord> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(1..=max_label, 0..=max_per_site), n)
            .prop_map(|s| BosonicWord::new(s).unwrap())
    })
}

/// Every composition with `k` parts, each in `0..=max`.
pub fn compositions(k: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|c: Vec<u32>| {
                (0..=max).map(move |p| {
                    let mut c = c.clone();
                    c.push(p);
                    c
                })
            })
            .collect();
    }
    out
}

/// All fermionic queues with `n ≤ max_n`, `k ≤ max_k` rows and row sizes `≤ max_part`.
pub fn all_fermionic(max_n: usize, max_k: usize, max_part: u32) -> Vec<FermionicMlq> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            for alpha in compositions(k, max_part.min(n as u32)) {
                out.extend(FermionicMlq::enumerate(&alpha, n).unwrap());
            }
        }
    }
    out
}

pub fn all_bosonic(max_n: usize, max_k: usize, max_part: u32) -> Vec<BosonicMlq> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            for alpha in compositions(k, max_part) {
                out.extend(BosonicMlq::enumerate(&alpha, n).unwrap());
            }
        }
    }
    out
}

pub fn rotate<R: Row>(r: &R, by: usize) -> R {
    let c = r.counts();
    let n = c.len();
    let mut out = vec![0; n];
    for (i, v) in c.into_iter().enumerate() {
        out[(i + by) % n] = v;
    }
    R::from_counts(out).unwrap()
}

pub fn rotate_counts(c: &[u32], by: usize) -> Vec<u32> {
    let n = c.len();
    let mut out = vec![0; n];
    for (i, &v) in c.iter().enumerate() {
        out[(i + by) % n] = v;
    }
    out
}
