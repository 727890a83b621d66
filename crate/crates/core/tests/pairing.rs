mod common;

use common::{bosonic_row, fermionic_row, rotate, rotate_counts};
use mlq_core::pairing::{match_brackets, Bracket};
use mlq_core::{par_bosonic, par_fermionic, PairingResult, Row};
use proptest::prelude::*;

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Lower,
    Upper,
}

/// Token list of a two-row scan: `(is_open, side, 0-indexed site)`.
fn tokens(lower: &[u32], upper: &[u32], bosonic: bool) -> Vec<(bool, Side, usize)> {
    let mut out = Vec::new();
    for j in 0..lower.len() {
        for _ in 0..upper[j] {
            out.push((!bosonic, Side::Upper, j));
        }
        for _ in 0..lower[j] {
            out.push((bosonic, Side::Lower, j));
        }
    }
    out
}

fn valid(partner: &[Option<usize>], toks: &[(bool, Side, usize)]) -> bool {
    let len = toks.len();
    for (o, p) in partner.iter().enumerate() {
        let Some(c) = *p else { continue };
        if !toks[o].0 {
            continue;
        }
        let inside = |t: usize| (t + len - o) % len < (c + len - o) % len && t != o;
        let mut t = (o + 1) % len;
        while t != c {
            match partner[t] {
                Some(q) if inside(q) => {}
                _ => return false,
            }
            t = (t + 1) % len;
        }
    }
    true
}

/// Exhaustive search over cyclic matchings in which no unmatched token lies
/// inside a matched pair. Returns the unpaired `(upper, lower)` counts of every
/// maximum matching.
fn oracle(lower: &[u32], upper: &[u32], bosonic: bool) -> Vec<(Vec<u32>, Vec<u32>)> {
    let toks = tokens(lower, upper, bosonic);
    let opens: Vec<usize> = (0..toks.len()).filter(|&i| toks[i].0).collect();
    let closes: Vec<usize> = (0..toks.len()).filter(|&i| !toks[i].0).collect();
    let mut best = 0;
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut partner = vec![None; toks.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        pairs: usize,
        opens: &[usize],
        closes: &[usize],
        partner: &mut Vec<Option<usize>>,
        toks: &[(bool, Side, usize)],
        n: usize,
        best: &mut usize,
        found: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        if idx == opens.len() {
            if !valid(partner, toks) || pairs < *best {
                return;
            }
            if pairs > *best {
                *best = pairs;
                found.clear();
            }
            let mut up = vec![0; n];
            let mut lo = vec![0; n];
            for (t, p) in partner.iter().enumerate() {
                if p.is_none() {
                    match toks[t].1 {
                        Side::Upper => up[toks[t].2] += 1,
                        Side::Lower => lo[toks[t].2] += 1,
                    }
                }
            }
            found.push((up, lo));
            return;
        }
        let o = opens[idx];
        go(idx + 1, pairs, opens, closes, partner, toks, n, best, found);
        for &c in closes {
            if partner[c].is_none() {
                partner[o] = Some(c);
                partner[c] = Some(o);
                go(idx + 1, pairs + 1, opens, closes, partner, toks, n, best, found);
                partner[o] = None;
                partner[c] = None;
            }
        }
    }
    go(0, 0, &opens, &closes, &mut partner, &toks, lower.len(), &mut best, &mut found);
    found
}

fn check_against_oracle(p: &PairingResult, lower: &[u32], upper: &[u32], bosonic: bool) {
    let all = oracle(lower, upper, bosonic);
    assert!(!all.is_empty());
    assert!(all.iter().all(|r| r == &all[0]), "oracle outcome not unique");
    assert_eq!((p.unpaired_upper.clone(), p.unpaired_lower.clone()), all[0].clone());
}

fn small_rows() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (1..=6usize).prop_flat_map(|n| {
        let row = proptest::collection::vec(0..=2u32, n).prop_filter("at most 4 particles", |r| r.iter().sum::<u32>() <= 4);
        (row.clone(), row)
    })
}

fn sum(v: &[u32]) -> u32 {
    v.iter().sum()
}

#[test]
fn bracket_strings() {
    use Bracket::{Close as C, Open as O};
    let m = match_brackets(&[O, C, C, O, C, O, O]);
    assert_eq!(m.unmatched, vec![5]);
    let m = match_brackets(&[C, C, O, O, C, C]);
    assert_eq!(m.unmatched, vec![0, 1]);
    assert!(match_brackets(&[O, C, O, C, O, C]).unmatched.is_empty());
}

#[test]
fn oracle_on_every_small_fermionic_pair() {
    for n in 1..=4usize {
        for a in 0u32..(1 << n) {
            for b in 0u32..(1 << n) {
                let lower: Vec<u32> = (0..n).map(|j| (a >> j) & 1).collect();
                let upper: Vec<u32> = (0..n).map(|j| (b >> j) & 1).collect();
                let l = mlq_core::FermionicIndicator::from_counts(lower.clone()).unwrap();
                let u = mlq_core::FermionicIndicator::from_counts(upper.clone()).unwrap();
                check_against_oracle(&par_fermionic(&l, &u), &lower, &upper, false);
            }
        }
    }
}

proptest! {
    #[test]
    fn fermionic_matches_oracle((lower, upper) in small_rows()) {
        let lower: Vec<u32> = lower.iter().map(|&c| c.min(1)).collect();
        let upper: Vec<u32> = upper.iter().map(|&c| c.min(1)).collect();
        let l = mlq_core::FermionicIndicator::from_counts(lower.clone()).unwrap();
        let u = mlq_core::FermionicIndicator::from_counts(upper.clone()).unwrap();
        check_against_oracle(&par_fermionic(&l, &u), &lower, &upper, false);
    }

    #[test]
    fn bosonic_matches_oracle((lower, upper) in small_rows()) {
        let l = mlq_core::BosonicIndicator::from_counts(lower.clone()).unwrap();
        let u = mlq_core::BosonicIndicator::from_counts(upper.clone()).unwrap();
        check_against_oracle(&par_bosonic(&l, &u), &lower, &upper, true);
    }

    #[test]
    fn fermionic_counts_and_homogeneity((a, b) in (1..=8usize).prop_flat_map(|n| (fermionic_row(n), fermionic_row(n)))) {
        let p = par_fermionic(&a, &b);
        let pairs = p.pairs.len() as u32;
        prop_assert_eq!(pairs, (a.size() as u32).min(b.size() as u32));
        prop_assert!(sum(&p.unpaired_upper) == 0 || sum(&p.unpaired_lower) == 0);
        prop_assert_eq!(sum(&p.paired_upper), pairs);
        prop_assert_eq!(sum(&p.paired_lower), pairs);
        if a.size() == b.size() {
            prop_assert_eq!(sum(&p.unpaired_upper) + sum(&p.unpaired_lower), 0);
        }
        for (u, l) in p.site_pairs() {
            prop_assert!(b.contains(u) && a.contains(l));
        }
    }

    #[test]
    fn bosonic_counts_and_homogeneity((a, b) in (1..=8usize).prop_flat_map(|n| (bosonic_row(n, 3), bosonic_row(n, 3)))) {
        let p = par_bosonic(&a, &b);
        let pairs = p.pairs.len() as u32;
        prop_assert_eq!(pairs, (a.size() as u32).min(b.size() as u32));
        prop_assert!(sum(&p.unpaired_upper) == 0 || sum(&p.unpaired_lower) == 0);
    }

    #[test]
    fn rotation_equivariance((a, b) in (1..=8usize).prop_flat_map(|n| (bosonic_row(n, 2), bosonic_row(n, 2)))) {
        let n = a.n();
        let fa = mlq_core::FermionicIndicator::from_counts(a.counts().iter().map(|&c| c.min(1)).collect()).unwrap();
        let fb = mlq_core::FermionicIndicator::from_counts(b.counts().iter().map(|&c| c.min(1)).collect()).unwrap();
        let pf = par_fermionic(&fa, &fb);
        let pb = par_bosonic(&a, &b);
        for by in 0..n {
            let rf = par_fermionic(&rotate(&fa, by), &rotate(&fb, by));
            prop_assert_eq!(&rf.unpaired_upper, &rotate_counts(&pf.unpaired_upper, by));
            prop_assert_eq!(&rf.unpaired_lower, &rotate_counts(&pf.unpaired_lower, by));
            let rb = par_bosonic(&rotate(&a, by), &rotate(&b, by));
            prop_assert_eq!(&rb.unpaired_upper, &rotate_counts(&pb.unpaired_upper, by));
            prop_assert_eq!(&rb.unpaired_lower, &rotate_counts(&pb.unpaired_lower, by));
        }
    }
}
