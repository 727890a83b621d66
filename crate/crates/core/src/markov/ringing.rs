use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::chain::RateParams;
use crate::error::{Error, Result};
use crate::mlq::{BosonicMlq, FermionicMlq, Mlq, Statistic};
use crate::words::Row;

/// Outcome of a ringing move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring<Q> {
    pub queue: Q,
    /// 1-indexed exit site.
    pub exit: usize,
    pub rate: BigRational,
    /// 1-indexed path sites, one per row plus the exit position.
    pub path: Vec<usize>,
}

fn check_site(site: usize, n: usize) -> Result<usize> {
    if site == 0 || site > n {
        Err(Error::SiteOutOfRange { site, n })
    } else {
        Ok(site - 1)
    }
}

fn counts_of<S: Statistic>(q: &Mlq<S>) -> Vec<Vec<u32>> {
    q.rows().iter().map(|r| r.counts()).collect()
}

fn rebuild<S: Statistic>(rows: Vec<Vec<u32>>) -> Result<Mlq<S>> {
    Mlq::new(rows.into_iter().map(S::Row::from_counts).collect::<Result<Vec<_>>>()?)
}

/// Forward ringing path `F(Q, i)`.
///
/// The path climbs from row 1 at site `i`, staying put on occupied sites and
/// stepping right past vacancies. An occupied path site with a vacancy on its
/// left hops left. The exit is the path position above the top row.
pub fn ring_forward_fermionic(q: &FermionicMlq, site: usize) -> Result<Ring<FermionicMlq>> {
    let n = q.n();
    let mut a = check_site(site, n)?;
    let mut rows = counts_of(q);
    let mut path = Vec::with_capacity(rows.len() + 1);
    for row in &mut rows {
        path.push(a + 1);
        let left = (a + n - 1) % n;
        if row[a] == 1 {
            if row[left] == 0 {
                row[a] = 0;
                row[left] = 1;
            }
        } else {
            a = (a + 1) % n;
        }
    }
    path.push(a + 1);
    Ok(Ring { queue: rebuild(rows)?, exit: a + 1, rate: BigRational::one(), path })
}

/// Reverse ringing path `R(Q, i)`, the inverse of [`ring_forward_fermionic`].
///
/// Descends from above the top row at site `i`. In each row, when the site
/// left of the path is occupied the path keeps its position and that particle
/// hops right if it can; otherwise the path steps left.
pub fn ring_reverse_fermionic(q: &FermionicMlq, site: usize) -> Result<Ring<FermionicMlq>> {
    let n = q.n();
    let mut t = check_site(site, n)?;
    let mut rows = counts_of(q);
    let mut path = Vec::with_capacity(rows.len() + 1);
    path.push(t + 1);
    for row in rows.iter_mut().rev() {
        let left = (t + n - 1) % n;
        if row[left] == 1 {
            if row[t] == 0 {
                row[left] = 0;
                row[t] = 1;
            }
        } else {
            t = left;
        }
        path.push(t + 1);
    }
    path.reverse();
    Ok(Ring { queue: rebuild(rows)?, exit: t + 1, rate: BigRational::one(), path })
}

/// Forward bosonic ringing path `F̃(D, i)`.
///
/// The path climbs from row 1 at site `i`; wherever it meets a particle, one
/// particle hops right and the path follows it. The exit is one site left of
/// the final path position. The rate is `1/x_i`, or 1 when column `i` is empty.
pub fn ring_forward_bosonic(d: &BosonicMlq, site: usize, x: &RateParams) -> Result<Ring<BosonicMlq>> {
    let n = d.n();
    x.check_len(n)?;
    let start = check_site(site, n)?;
    let mut a = start;
    let mut rows = counts_of(d);
    let column_empty = rows.iter().all(|r| r[start] == 0);
    let mut path = Vec::with_capacity(rows.len() + 1);
    for row in &mut rows {
        path.push(a + 1);
        if row[a] > 0 {
            let next = (a + 1) % n;
            row[a] -= 1;
            row[next] += 1;
            a = next;
        }
    }
    path.push(a + 1);
    let exit = (a + n - 1) % n + 1;
    let rate = if column_empty { BigRational::one() } else { BigRational::one() / x.get(site) };
    Ok(Ring { queue: rebuild(rows)?, exit, rate, path })
}

/// Reverse bosonic ringing path `R̃(D, i)`, the inverse of [`ring_forward_bosonic`].
///
/// The path descends from the top row at site `i`; wherever the site to its
/// right is occupied, one particle hops left onto the path and the path moves
/// one step left. The rate is `1/x_{i+1}`, or 1 when column `i + 1` is empty.
pub fn ring_reverse_bosonic(d: &BosonicMlq, site: usize, x: &RateParams) -> Result<Ring<BosonicMlq>> {
    let n = d.n();
    x.check_len(n)?;
    let start = check_site(site, n)?;
    let mut b = start;
    let mut rows = counts_of(d);
    let right_of_start = (start + 1) % n;
    let column_empty = rows.iter().all(|r| r[right_of_start] == 0);
    let mut path = Vec::with_capacity(rows.len() + 1);
    path.push(b + 1);
    for row in rows.iter_mut().rev() {
        let right = (b + 1) % n;
        if row[right] > 0 {
            row[right] -= 1;
            row[b] += 1;
            b = (b + n - 1) % n;
        }
        path.push(b + 1);
    }
    path.reverse();
    let exit = (b + 1) % n + 1;
    let rate = if column_empty { BigRational::one() } else { BigRational::one() / x.get(right_of_start + 1) };
    Ok(Ring { queue: rebuild(rows)?, exit, rate, path })
}
