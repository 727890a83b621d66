//! Counting and ranking helpers for subsets, multisets, partitions and words.

use alloc::vec;
use alloc::vec::Vec;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of multisets of size `k` over an `n`-set.
pub fn multichoose(n: u64, k: u64) -> u128 {
    if n == 0 {
        return (k == 0) as u128;
    }
    binomial(n + k - 1, k)
}

/// The `rank`-th `k`-subset of `{0, .., n-1}` in colex order, ascending.
pub fn unrank_subset_colex(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    debug_assert!(rank < binomial(n as u64, k as u64));
    let mut out = vec![0; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while c + 1 < hi && binomial((c + 1) as u64, i as u64) <= rank {
            c += 1;
        }
        rank -= binomial(c as u64, i as u64);
        out[i - 1] = c;
        hi = c;
    }
    out
}

/// The `rank`-th `k`-multiset over `{0, .., n-1}` in colex order, ascending.
pub fn unrank_multiset_colex(n: usize, k: usize, rank: u128) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    let mut s = unrank_subset_colex(n + k - 1, k, rank);
    for (i, x) in s.iter_mut().enumerate() {
        *x -= i;
    }
    s
}

/// Conjugate partition. Zero parts are ignored.
pub fn conjugate(lambda: &[u32]) -> Vec<u32> {
    let max = lambda.iter().copied().max().unwrap_or(0);
    (1..=max).map(|j| lambda.iter().filter(|&&p| p >= j).count() as u32).collect()
}

/// Sorts a composition into a partition, dropping zeros.
pub fn sort_partition(alpha: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = alpha.iter().copied().filter(|&p| p > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All distinct permutations of `items`, in lexicographic order.
pub fn multiset_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Advances to the next lexicographic permutation; false at the last one.
pub fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All weak compositions of `total` into `parts` parts, lexicographic.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}
