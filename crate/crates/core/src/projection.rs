//! Queue operators `Q^{(ℓ)}` / `D^{(ℓ)}`, the projections `Φ` / `Φ̃`, the
//! Ferrari–Martin algorithm on straight queues, the particle-at-a-time queueing
//! variant, and the corner-transfer-matrix map `π`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mlq::{sigma_rows, Bosonic, Fermionic, Mlq, Statistic};
use crate::words::{BosonicIndicator, BosonicWord, FermionicIndicator, FermionicWord, Row, Word};

fn check_label<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word, strict: bool) -> Result<()> {
    if q.n() != u.n() {
        return Err(Error::RingMismatch(q.n(), u.n()));
    }
    if ell == 0 {
        return Err(Error::domain("queue label must be positive"));
    }
    match u.min_label() {
        Some(min) if ell > min || (strict && ell == min) => Err(Error::LabelPrecondition { label: ell, min }),
        _ => Ok(()),
    }
}

/// The output layers `v^{(1)} ⊇ v^{(2)} ⊇ ⋯` of `Q^{(ℓ)}(u)`.
///
/// With `P_r` the pairing of `υ_r(u)` onto `Q`, layer `r` holds the paired
/// `Q` particles of `P_r` (all of `Q` when `r ≤ ℓ`) together with the upper
/// particles left unpaired by `P_{r+1}`.
pub fn queue_layers<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word) -> Result<Vec<S::Row>> {
    check_label::<S>(q, ell, u, true)?;
    layers_unchecked::<S>(q, ell, u)
}

/// [`queue_layers`] also admitting `ℓ` equal to the smallest label of `u`.
pub fn queue_layers_weak<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word) -> Result<Vec<S::Row>> {
    check_label::<S>(q, ell, u, false)?;
    layers_unchecked::<S>(q, ell, u)
}

fn layers_unchecked<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word) -> Result<Vec<S::Row>> {
    let n = q.n();
    let top = u.max_label().max(ell);
    let pairings: Vec<_> = (1..=top + 1).map(|r| S::pair(q, &u.upsilon(r))).collect();
    let qc = q.counts();
    let mut layers = Vec::with_capacity(top as usize);
    for r in 1..=top {
        let p = &pairings[r as usize - 1];
        let above = &pairings[r as usize];
        let base = if r <= ell { &qc } else { &p.paired_lower };
        let counts = (0..n).map(|j| base[j] + above.unpaired_upper[j]).collect();
        layers.push(S::Row::from_counts(counts)?);
    }
    Ok(layers)
}

/// `Q^{(ℓ)}(u)` or `D^{(ℓ)}(ũ)`.
pub fn queue_op<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word) -> Result<S::Word> {
    let layers = queue_layers::<S>(q, ell, u)?;
    S::combine(q.n(), layers)
}

pub fn queue_op_fermionic(q: &FermionicIndicator, ell: u32, u: &FermionicWord) -> Result<FermionicWord> {
    queue_op::<Fermionic>(q, ell, u)
}

pub fn queue_op_bosonic(d: &BosonicIndicator, ell: u32, u: &BosonicWord) -> Result<BosonicWord> {
    queue_op::<Bosonic>(d, ell, u)
}

/// The labelled rows produced while folding the queue operators top-down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTrace<W> {
    /// Entry `j - 1` is the labelled row `j`; entry 0 is `Φ(Q)`.
    pub words: Vec<W>,
}

/// `Φ(Q) = Q_1^{(1)}(Q_2^{(2)}(⋯ Q_k^{(k)}(w_0)))` with every intermediate word.
pub fn label_trace<S: Statistic>(mlq: &Mlq<S>) -> LabelTrace<S::Word> {
    let mut w = S::Word::zero(mlq.n()).expect("queues have a positive ring size");
    let mut words = vec![w.clone(); mlq.k()];
    for j in (1..=mlq.k()).rev() {
        w = queue_op::<S>(mlq.row(j), j as u32, &w).expect("labels above the row index by construction");
        words[j - 1] = w.clone();
    }
    LabelTrace { words }
}

pub fn phi<S: Statistic>(mlq: &Mlq<S>) -> S::Word {
    label_trace(mlq).words.swap_remove(0)
}

pub fn phi_fermionic(q: &Mlq<Fermionic>) -> FermionicWord {
    phi(q)
}

pub fn phi_bosonic(d: &Mlq<Bosonic>) -> BosonicWord {
    phi(d)
}

/// Ferrari–Martin label passing on a straight queue.
///
/// Working down from the top row, particles with the largest labels choose
/// partners in the row below first; particles left over get the row index.
pub fn fm_straight<S: Statistic>(mlq: &Mlq<S>) -> Result<S::Word> {
    if !mlq.is_straight() {
        return Err(Error::NotStraight);
    }
    let n = mlq.n();
    let top = mlq.k();
    let mut carried: Vec<Vec<u32>> = vec![Vec::new(); n];
    for r in (1..=top).rev() {
        let row = mlq.row(r).counts();
        for (site, &c) in carried.iter_mut().zip(&row) {
            while (site.len() as u32) < c {
                site.push(r as u32);
            }
        }
        if r == 1 {
            break;
        }
        let mut free = mlq.row(r - 1).counts();
        let mut below: Vec<Vec<u32>> = vec![Vec::new(); n];
        for ell in (r as u32..=top as u32).rev() {
            let upper: Vec<u32> = carried.iter().map(|s| s.iter().filter(|&&l| l == ell).count() as u32).collect();
            if upper.iter().all(|&c| c == 0) {
                continue;
            }
            let p = S::pair(&S::Row::from_counts(free.clone())?, &S::Row::from_counts(upper)?);
            for j in 0..n {
                for _ in 0..p.paired_lower[j] {
                    below[j].push(ell);
                }
                free[j] -= p.paired_lower[j];
            }
        }
        carried = below;
    }
    for s in &mut carried {
        s.sort_unstable();
    }
    S::Word::from_site_labels(carried)
}

/// One particle of a word: `(1-indexed site, label)`.
pub type Particle = (usize, u32);

/// Labels descending; within a label, sites ascending.
pub fn canonical_order<W: Word>(u: &W) -> Vec<Particle> {
    let mut out: Vec<Particle> = Vec::new();
    for (i, labels) in u.site_labels().iter().enumerate() {
        for &l in labels {
            out.push((i + 1, l));
        }
    }
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    out
}

fn check_order<W: Word>(u: &W, order: &[Particle]) -> Result<()> {
    if order.windows(2).any(|w| w[0].1 < w[1].1) {
        return Err(Error::Order("labels must be weakly decreasing".into()));
    }
    let mut given: Vec<Particle> = order.to_vec();
    given.sort_unstable();
    let mut want = canonical_order(u);
    want.sort_unstable();
    if given != want {
        return Err(Error::Order("order is not a permutation of the particles of the word".into()));
    }
    Ok(())
}

/// The one-particle-at-a-time queueing algorithm.
///
/// The first `min(|Q|, r)` particles of `order` each take the nearest free
/// particle of `Q` in the pairing direction; free particles of `Q` left after
/// that get label `ℓ`. Each remaining particle joins the upper set, the single
/// unmatched upper site `m` in the resulting pairing receives its label minus
/// one, and `m` leaves the upper set.
pub fn queue_op_particlewise<S: Statistic>(q: &S::Row, ell: u32, u: &S::Word, order: &[Particle]) -> Result<S::Word> {
    check_label::<S>(q, ell, u, false)?;
    check_order(u, order)?;
    let n = q.n();
    let k = q.size();
    let head = k.min(order.len());
    let mut free = q.counts();
    let mut y: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut upper = vec![0u32; n];
    for &(site, label) in &order[..head] {
        let t = S::partner(site - 1, &free).ok_or_else(|| Error::Invariant("no free partner".into()))?;
        free[t] -= 1;
        y[t].push(label);
        upper[site - 1] += 1;
    }
    for (t, &c) in free.iter().enumerate() {
        for _ in 0..c {
            y[t].push(ell);
        }
    }
    for &(site, label) in &order[head..] {
        upper[site - 1] += 1;
        let p = S::pair(q, &S::Row::from_counts(upper.clone())?);
        let total: u32 = p.unpaired_upper.iter().sum();
        if total != 1 {
            return Err(Error::Invariant(alloc::format!("{total} unmatched upper particles while collapsing")));
        }
        let m = p.unpaired_upper.iter().position(|&c| c > 0).expect("one unmatched particle");
        y[m].push(label - 1);
        upper[m] -= 1;
    }
    for s in &mut y {
        s.sort_unstable();
    }
    S::Word::from_site_labels(y)
}

/// Fermionic form taking the priority order as a list of sites.
pub fn queue_op_particlewise_fermionic(
    q: &FermionicIndicator,
    ell: u32,
    w: &FermionicWord,
    order: &[usize],
) -> Result<FermionicWord> {
    let mut particles = Vec::with_capacity(order.len());
    for &s in order {
        if s == 0 || s > w.n() || w.letter(s) == 0 {
            return Err(Error::Order(alloc::format!("site {s} holds no particle")));
        }
        particles.push((s, w.letter(s)));
    }
    queue_op_particlewise::<Fermionic>(q, ell, w, &particles)
}

/// Combinatorial `R` on `b ⊗ c`: the two rows of `σ_1` applied to the
/// two-row queue with bottom row `b`. Returns `(c', b')` with `|c'| = |c|`.
pub fn r_on_pair<S: Statistic>(b: &S::Row, c: &S::Row) -> Result<(S::Row, S::Row)> {
    sigma_rows::<S>(b, c)
}

/// `[π_j^{(j)}, .., π_k^{(j)}]` with `π_i^{(j)}` row `j` of
/// `σ_j σ_{j+1} ⋯ σ_{i-1}` applied to the queue, in index order. The layers
/// are checked to form a chain.
pub fn ctm_pi_components<S: Statistic>(mlq: &Mlq<S>, j: usize) -> Result<Vec<S::Row>> {
    if j == 0 || j > mlq.k() {
        return Err(Error::RowIndex { index: j, rows: mlq.k() });
    }
    let mut out = Vec::with_capacity(mlq.k() + 1 - j);
    for i in j..=mlq.k() {
        let word: Vec<usize> = (j..i).collect();
        out.push(mlq.apply_word(&word)?.row(j).clone());
    }
    nested_order(&out)?;
    Ok(out)
}

/// Sorts layers into a decreasing chain, failing if they are not comparable.
pub fn nested_order<R: Row>(layers: &[R]) -> Result<Vec<R>> {
    let mut sorted = layers.to_vec();
    sorted.sort_by_key(|l| core::cmp::Reverse(l.size()));
    for (i, w) in sorted.windows(2).enumerate() {
        if !w[1].is_below(&w[0]) {
            return Err(Error::NotNested(i + 2));
        }
    }
    Ok(sorted)
}

/// `π^{(j)}`: the components of [`ctm_pi_components`] reassembled.
pub fn ctm_pi_at<S: Statistic>(mlq: &Mlq<S>, j: usize) -> Result<S::Word> {
    let layers = nested_order(&ctm_pi_components(mlq, j)?)?;
    S::combine(mlq.n(), layers)
}

/// `π(b) = π^{(1)}`.
pub fn ctm_pi<S: Statistic>(mlq: &Mlq<S>) -> Result<S::Word> {
    ctm_pi_at(mlq, 1)
}

/// Checks `Q^{(1)}(u) = ι(Q) + Σ_{i=2}^{m} (R(ι(Q) ⊗ υ_i(u)))_1`, with `⊕` in
/// nested order for bosonic rows.
pub fn decompose_b_identity_check<S: Statistic>(q: &S::Row, u: &S::Word) -> Result<bool> {
    if let Some(min) = u.min_label() {
        if min <= 1 {
            return Err(Error::LabelPrecondition { label: 1, min });
        }
    }
    let lhs = queue_op::<S>(q, 1, u)?;
    let mut layers = vec![q.clone()];
    for i in 2..=u.max_label() {
        layers.push(r_on_pair::<S>(q, &u.upsilon(i))?.0);
    }
    Ok(S::combine(q.n(), layers)? == lhs)
}
