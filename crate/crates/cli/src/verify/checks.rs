//! Individual checks. Suites call these on core types; witness replay parses
//! a witness and calls the same function, so a replay reproduces the verdict.

use std::collections::BTreeMap;
use std::fmt::Debug;

use mlq_core::combinatorics::conjugate;
use mlq_core::markov::{
    bosonic_mlq_chain, check_balance, ktazrp_chain, ring_forward_bosonic, ring_forward_fermionic,
    ring_reverse_bosonic, ring_reverse_fermionic, simulate_ctmc, stationary_exact, tasep_chain, tasep_transitions,
    tazrp_chain, tazrp_transitions, total_variation, RateParams, RationalDistribution,
};
use mlq_core::projection::{
    canonical_order, ctm_pi, ctm_pi_at, ctm_pi_components, fm_straight, label_trace, phi, queue_op_particlewise,
    Particle,
};
use mlq_core::{BigRational, BosonicMlq, BosonicWord, FermionicMlq, FermionicWord, Mlq, Statistic, Word};
use num_traits::Zero;

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(detail())
        }
    }
}

/// Runs a fallible check; a core error inside it counts as a failure.
fn guarded(f: impl FnOnce() -> mlq_core::Result<Verdict>) -> Verdict {
    f().unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")))
}

/// `Φ(σ_i(Q)) = Φ(Q)`.
pub fn sigma_invariance<S: Statistic>(q: &Mlq<S>, i: usize) -> Verdict {
    guarded(|| {
        let a = phi(q);
        let b = phi(&q.sigma(i)?);
        Ok(Verdict::check(a == b, || format!("Φ(Q) = {a:?} but Φ(σ_{i} Q) = {b:?}")))
    })
}

/// `Φ(Q) = π(Q)`.
pub fn phi_equals_ctm<S: Statistic>(q: &Mlq<S>) -> Verdict {
    guarded(|| {
        let a = phi(q);
        let b = ctm_pi(q)?;
        Ok(Verdict::check(a == b, || format!("Φ(Q) = {a:?} but π(Q) = {b:?}")))
    })
}

/// `π_j(σ_i Q) = π_{s_i(j)}(Q)` for every `j`.
pub fn ctm_components<S: Statistic>(q: &Mlq<S>, i: usize) -> Verdict {
    guarded(|| {
        let before = ctm_pi_components(q, 1)?;
        let after = ctm_pi_components(&q.sigma(i)?, 1)?;
        for j in 1..=q.k() {
            let sj = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            if after[j - 1] != before[sj - 1] {
                return Ok(Verdict::Fail(format!(
                    "π_{j}(σ_{i} Q) = {:?} but π_{sj}(Q) = {:?}",
                    after[j - 1],
                    before[sj - 1]
                )));
            }
        }
        Ok(Verdict::Pass)
    })
}

/// Label trace against the staircase readings: row `j` of the trace equals
/// `π^{(j)}` with every label raised by `j - 1`.
pub fn trace_equals_partial_ctm<S: Statistic>(q: &Mlq<S>) -> Verdict {
    guarded(|| {
        let trace = label_trace(q).words;
        for j in 1..=q.k() {
            let want = ctm_pi_at(q, j)?.increment(j as u32 - 1);
            if trace[j - 1] != want {
                return Ok(Verdict::Fail(format!("trace row {j} = {:?} but π^({j}) gives {want:?}", trace[j - 1])));
            }
        }
        Ok(Verdict::Pass)
    })
}

/// Straight queues: `fm_straight = Φ`. Twisted queues must be rejected.
pub fn fm_agrees<S: Statistic>(q: &Mlq<S>) -> Verdict {
    match (q.is_straight(), fm_straight(q)) {
        (true, Ok(w)) => {
            let p = phi(q);
            Verdict::check(w == p, || format!("FM gives {w:?} but Φ gives {p:?}"))
        }
        (true, Err(e)) => Verdict::Fail(format!("FM failed on a straight queue: {e}")),
        (false, Ok(w)) => Verdict::Fail(format!("FM accepted a twisted queue and returned {w:?}")),
        (false, Err(_)) => Verdict::Pass,
    }
}

/// The particle-wise bottom operator under `order` reproduces `Φ(Q)`.
///
/// The input word is row 2 of the label trace; `order` must be a
/// priority-respecting order of its particles.
pub fn particlewise<S: Statistic>(q: &Mlq<S>, order: &[Particle]) -> Verdict {
    if q.k() < 2 {
        return Verdict::Pass;
    }
    guarded(|| {
        let trace = label_trace(q).words;
        let got = queue_op_particlewise::<S>(q.row(1), 1, &trace[1], order)?;
        Ok(Verdict::check(got == trace[0], || format!("particle-wise gives {got:?} but Φ(Q) = {:?}", trace[0])))
    })
}

/// The particles of row 2 of the label trace, in canonical priority order.
pub fn particlewise_input<S: Statistic>(q: &Mlq<S>) -> Vec<Particle> {
    if q.k() < 2 {
        return Vec::new();
    }
    canonical_order(&label_trace(q).words[1])
}

/// Every priority-respecting order, if there are at most `cap` of them.
pub fn all_orders(canonical: &[Particle], cap: usize) -> Option<Vec<Vec<Particle>>> {
    let mut groups: Vec<Vec<Particle>> = Vec::new();
    for &p in canonical {
        match groups.last_mut() {
            Some(g) if g[0].1 == p.1 => g.push(p),
            _ => groups.push(vec![p]),
        }
    }
    let mut total = 1usize;
    for g in &groups {
        total = total.saturating_mul((1..=g.len()).product::<usize>());
        if total > cap {
            return None;
        }
    }
    let mut out: Vec<Vec<Particle>> = vec![Vec::new()];
    for g in &groups {
        let perms = permutations(g);
        out = out
            .iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    Some(out)
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn ring_mismatch(what: &str, got: &dyn Debug, want: &dyn Debug) -> Verdict {
    Verdict::Fail(format!("{what}: got {got:?}, expected {want:?}"))
}

/// `R(F(Q, i)) = (Q, i)` and `F(R(Q, i)) = (Q, i)`.
pub fn fermionic_ring_inverse(q: &FermionicMlq, site: usize) -> Verdict {
    guarded(|| {
        let f = ring_forward_fermionic(q, site)?;
        let back = ring_reverse_fermionic(&f.queue, f.exit)?;
        if (&back.queue, back.exit) != (q, site) {
            return Ok(ring_mismatch("R(F(Q,i))", &(&back.queue, back.exit), &(q, site)));
        }
        let r = ring_reverse_fermionic(q, site)?;
        let fwd = ring_forward_fermionic(&r.queue, r.exit)?;
        if (&fwd.queue, fwd.exit) != (q, site) {
            return Ok(ring_mismatch("F(R(Q,i))", &(&fwd.queue, fwd.exit), &(q, site)));
        }
        Ok(Verdict::Pass)
    })
}

/// `R̃(F̃(D, i)) = (D, i)` and `F̃(R̃(D, i)) = (D, i)`.
pub fn bosonic_ring_inverse(d: &BosonicMlq, site: usize, x: &RateParams) -> Verdict {
    guarded(|| {
        let f = ring_forward_bosonic(d, site, x)?;
        let back = ring_reverse_bosonic(&f.queue, f.exit, x)?;
        if (&back.queue, back.exit) != (d, site) {
            return Ok(ring_mismatch("R̃(F̃(D,i))", &(&back.queue, back.exit), &(d, site)));
        }
        let r = ring_reverse_bosonic(d, site, x)?;
        let fwd = ring_forward_bosonic(&r.queue, r.exit, x)?;
        if (&fwd.queue, fwd.exit) != (d, site) {
            return Ok(ring_mismatch("F̃(R̃(D,i))", &(&fwd.queue, fwd.exit), &(d, site)));
        }
        Ok(Verdict::Pass)
    })
}

/// `x^D · rate(F̃) = x^{F̃(D)} · rate(R̃ back)`.
pub fn bosonic_ring_weight(d: &BosonicMlq, site: usize, x: &RateParams) -> Verdict {
    guarded(|| {
        let f = ring_forward_bosonic(d, site, x)?;
        let back = ring_reverse_bosonic(&f.queue, f.exit, x)?;
        let lhs = d.weight().eval(x.as_slice()) * &f.rate;
        let rhs = f.queue.weight().eval(x.as_slice()) * &back.rate;
        Ok(Verdict::check(lhs == rhs, || format!("x^D·rate = {lhs} but x^F(D)·rate_R = {rhs}")))
    })
}

/// `x^D` satisfies the balance equations of the ringing chain on `bMLQ(α, n)`.
pub fn bosonic_balance(alpha: &[u32], n: usize, x: &RateParams) -> CliResult<Verdict> {
    let chain = bosonic_mlq_chain(alpha, n, x)?;
    let weights: BTreeMap<BosonicMlq, BigRational> =
        chain.states().iter().map(|d| (d.clone(), d.weight().eval(x.as_slice()))).collect();
    let dist = RationalDistribution::from_weights(weights)?;
    Ok(Verdict::check(check_balance(&chain, &dist), || {
        format!("x^D is not stationary for α = {alpha:?}, n = {n}")
    }))
}

/// For each target `w′ ≠ Φ̃(D)`, the 0-TAZRP rate `Φ̃(D) → w′` equals the
/// summed rates of ringing moves from `D` that project to `w′`.
pub fn projection_identity(d: &BosonicMlq, x: &RateParams) -> Verdict {
    guarded(|| {
        let w = phi(d);
        let mut lumped: BTreeMap<BosonicWord, BigRational> = BTreeMap::new();
        for j in 1..=d.n() {
            let f = ring_forward_bosonic(d, j, x)?;
            if f.queue == *d {
                continue;
            }
            let target = phi(&f.queue);
            if target != w {
                *lumped.entry(target).or_insert_with(BigRational::zero) += f.rate;
            }
        }
        let mut direct: BTreeMap<BosonicWord, BigRational> = BTreeMap::new();
        for (target, rate) in tazrp_transitions(&w, x)? {
            if target != w {
                *direct.entry(target).or_insert_with(BigRational::zero) += rate;
            }
        }
        Ok(Verdict::check(lumped == direct, || {
            format!("from Φ̃(D) = {w}: ringing lumps to {lumped:?}, TAZRP has {direct:?}")
        }))
    })
}

/// `σ_m(F̃_i(D)) = F̃_i(σ_m(D))`, and the same for `R̃`.
pub fn sigma_commutation(d: &BosonicMlq, m: usize, site: usize, x: &RateParams) -> Verdict {
    guarded(|| {
        let lhs = ring_forward_bosonic(d, site, x)?.queue.sigma(m)?;
        let rhs = ring_forward_bosonic(&d.sigma(m)?, site, x)?.queue;
        if lhs != rhs {
            return Ok(ring_mismatch(&format!("σ_{m}∘F̃_{site}"), &lhs, &rhs));
        }
        let lhs = ring_reverse_bosonic(d, site, x)?.queue.sigma(m)?;
        let rhs = ring_reverse_bosonic(&d.sigma(m)?, site, x)?.queue;
        if lhs != rhs {
            return Ok(ring_mismatch(&format!("σ_{m}∘R̃_{site}"), &lhs, &rhs));
        }
        Ok(Verdict::Pass)
    })
}

/// `Φ(F_i(Q))` is `Φ(Q)` or one TASEP move away from it.
pub fn fermionic_ring_projects(q: &FermionicMlq, site: usize) -> Verdict {
    guarded(|| {
        let w = phi(q);
        let v = phi(&ring_forward_fermionic(q, site)?.queue);
        let ok = v == w || tasep_transitions(&w).iter().any(|(t, _)| *t == v);
        Ok(Verdict::check(ok, || format!("Φ(Q) = {w} but Φ(F_{site}(Q)) = {v}, not one TASEP move away")))
    })
}

/// TASEP of type `λ′` has the law of `Φ` on uniform `MLQ(λ, n)`.
pub fn stationary_tasep(lambda: &[u32], n: usize) -> CliResult<(Verdict, u64)> {
    let chain = tasep_chain(&conjugate(lambda), n)?;
    let exact = stationary_exact(&chain)?;
    let mut fibres: BTreeMap<FermionicWord, u64> = BTreeMap::new();
    let mut total = 0u64;
    for q in FermionicMlq::enumerate(lambda, n)? {
        *fibres.entry(phi(&q)).or_default() += 1;
        total += 1;
    }
    for w in fibres.keys() {
        if chain.index_of(w).is_none() {
            return Ok((Verdict::Fail(format!("Φ produced {w}, not a TASEP state")), total));
        }
    }
    for w in chain.states() {
        let want = BigRational::new(fibres.get(w).copied().unwrap_or(0).into(), total.into());
        let got = exact.get(w);
        if got != want {
            return Ok((Verdict::Fail(format!("π({w}) = {got} but fibre count gives {want}")), total));
        }
    }
    Ok((Verdict::Pass, total))
}

/// 0-TAZRP of type `λ′` has the law of `Φ̃` on `bMLQ(λ, n)` weighted by `x^D`.
pub fn stationary_tazrp(lambda: &[u32], n: usize, x: &RateParams) -> CliResult<(Verdict, u64)> {
    let chain = tazrp_chain(&conjugate(lambda), n, x)?;
    let exact = stationary_exact(&chain)?;
    let mut fibres: BTreeMap<BosonicWord, BigRational> = BTreeMap::new();
    let mut z = BigRational::zero();
    let mut count = 0u64;
    for d in BosonicMlq::enumerate(lambda, n)? {
        let wt = d.weight().eval(x.as_slice());
        z += &wt;
        *fibres.entry(phi(&d)).or_insert_with(BigRational::zero) += wt;
        count += 1;
    }
    for w in fibres.keys() {
        if chain.index_of(w).is_none() {
            return Ok((Verdict::Fail(format!("Φ̃ produced {w}, not a TAZRP state")), count));
        }
    }
    for w in chain.states() {
        let want = fibres.get(w).cloned().unwrap_or_else(BigRational::zero) / &z;
        let got = exact.get(w);
        if got != want {
            return Ok((Verdict::Fail(format!("π({w}) = {got} but weighted fibres give {want}")), count));
        }
    }
    Ok((Verdict::Pass, count))
}

/// kTAZRP and 0-TAZRP at `x = 1` have the same stationary law.
pub fn ktazrp_agreement(lambda: &[u32], n: usize) -> CliResult<Verdict> {
    let k = stationary_exact(&ktazrp_chain(lambda, n)?)?;
    let z = stationary_exact(&tazrp_chain(lambda, n, &RateParams::ones(n))?)?;
    Ok(Verdict::check(k == z, || format!("kTAZRP and 0-TAZRP laws differ for λ = {lambda:?}, n = {n}")))
}

/// Total-variation distance of a TASEP simulation from the exact law.
pub fn monte_carlo(lambda: &[u32], n: usize, seed: u64, jumps: u64, tolerance: f64) -> CliResult<Verdict> {
    let chain = tasep_chain(lambda, n)?;
    let exact = stationary_exact(&chain)?;
    let freqs = simulate_ctmc(&chain, seed, jumps)?;
    let tv = total_variation(&chain, &exact, &freqs);
    Ok(Verdict::check(tv < tolerance, || format!("total variation {tv:.5} ≥ {tolerance} (seed {seed})")))
}
