//! Verification suites over enumerated and sampled queues.
//!
//! Cases run on a rayon pool sized by `MLQ_THREADS`. Each random case draws
//! from its own ChaCha stream, so a report depends only on bounds and seed.

pub mod checks;
pub mod witness;

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use mlq_core::markov::RateParams;
use mlq_core::projection::Particle;
use mlq_core::{Bosonic, BosonicMlq, Fermionic, FermionicMlq, Kind, Mlq, Statistic};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use checks::Verdict;
pub use witness::{CheckKind, Witness};

/// Size limits for the exhaustive and random sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub fermionic_n: usize,
    pub fermionic_rows: usize,
    pub fermionic_part: u32,
    pub bosonic_n: usize,
    pub bosonic_rows: usize,
    pub bosonic_part: u32,
    /// Random queues per kind in the projection suites.
    pub random_cases: usize,
    pub random_max_n: usize,
    pub random_max_rows: usize,
    /// Random bosonic queues in the ringing suite.
    pub ring_random: usize,
    pub twisted_n: usize,
    pub twisted_rows: usize,
    pub mc_jumps: u64,
    pub mc_seeds: u64,
    /// Whether the fixed parameter grids (stationary laws, chain balance) run.
    pub grid: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            fermionic_n: 4,
            fermionic_rows: 3,
            fermionic_part: 3,
            bosonic_n: 3,
            bosonic_rows: 3,
            bosonic_part: 2,
            random_cases: 1000,
            random_max_n: 7,
            random_max_rows: 4,
            ring_random: 500,
            twisted_n: 4,
            twisted_rows: 4,
            mc_jumps: 100_000,
            mc_seeds: 3,
            grid: true,
        }
    }
}

impl Bounds {
    /// Every sweep empty; all suites pass vacuously.
    pub fn empty() -> Self {
        Bounds {
            fermionic_n: 0,
            fermionic_rows: 0,
            fermionic_part: 0,
            bosonic_n: 0,
            bosonic_rows: 0,
            bosonic_part: 0,
            random_cases: 0,
            random_max_n: 0,
            random_max_rows: 0,
            ring_random: 0,
            twisted_n: 0,
            twisted_rows: 0,
            mc_jumps: 0,
            mc_seeds: 0,
            grid: false,
        }
    }

    /// Parses `key=value,...` over the defaults. A leading `empty` starts from
    /// [`Bounds::empty`] instead.
    pub fn parse(spec: &str) -> CliResult<Self> {
        let mut b = Bounds::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "empty" {
                b = Bounds::empty();
                continue;
            }
            let (key, value) =
                item.split_once('=').ok_or_else(|| CliError::input(format!("bound {item:?} is not key=value")))?;
            let bad = || CliError::input(format!("bad value for {key}: {value:?}"));
            let num = || value.trim().parse::<u64>().map_err(|_| bad());
            match key.trim() {
                "fermionic_n" => b.fermionic_n = num()? as usize,
                "fermionic_rows" => b.fermionic_rows = num()? as usize,
                "fermionic_part" => b.fermionic_part = num()? as u32,
                "bosonic_n" => b.bosonic_n = num()? as usize,
                "bosonic_rows" => b.bosonic_rows = num()? as usize,
                "bosonic_part" => b.bosonic_part = num()? as u32,
                "random_cases" => b.random_cases = num()? as usize,
                "random_max_n" => b.random_max_n = num()? as usize,
                "random_max_rows" => b.random_max_rows = num()? as usize,
                "ring_random" => b.ring_random = num()? as usize,
                "twisted_n" => b.twisted_n = num()? as usize,
                "twisted_rows" => b.twisted_rows = num()? as usize,
                "mc_jumps" => b.mc_jumps = num()?,
                "mc_seeds" => b.mc_seeds = num()?,
                "grid" => b.grid = value.trim().parse::<bool>().map_err(|_| bad())?,
                other => return Err(CliError::input(format!("unknown bound {other:?}"))),
            }
        }
        Ok(b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// The identity the suite certifies.
    pub statement: String,
    pub parameters: Parameters,
    pub cases: u64,
    /// Empty iff the suite (and every child) passed.
    pub failures: Vec<Witness>,
    /// Expected witnesses, such as counterexamples the suite must find.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SuiteReport>,
    pub wall_time_ms: u64,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: &str, statement: &str, parameters: Parameters) -> Self {
        SuiteReport {
            suite: suite.into(),
            statement: statement.into(),
            parameters,
            cases: 0,
            failures: Vec::new(),
            findings: Vec::new(),
            children: Vec::new(),
            wall_time_ms: 0,
            passed: true,
        }
    }

    fn absorb(&mut self, (cases, failures): (u64, Vec<Witness>)) {
        self.cases += cases;
        self.failures.extend(failures);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_millis() as u64;
        self.passed = self.failures.is_empty();
        self
    }

    fn fmt_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut params = String::new();
        if let (Some(l), Some(n)) = (&self.parameters.lambda, self.parameters.n) {
            params = format!(" λ={l:?} n={n}");
            if let Some(x) = &self.parameters.x {
                params.push_str(&format!(" x=({})", x.join(",")));
            }
        }
        writeln!(
            f,
            "{pad}{verdict} {}{params} [{}] cases={} time={}ms",
            self.suite, self.statement, self.cases, self.wall_time_ms
        )?;
        if self.children.is_empty() {
            for w in &self.failures {
                writeln!(f, "{pad}  failure {}: {}", w.check.name(), w.detail)?;
                writeln!(f, "{pad}    witness {}", serde_json::to_string(w).unwrap_or_default())?;
            }
        }
        for w in &self.findings {
            writeln!(f, "{pad}  finding {}: {}", w.check.name(), w.detail)?;
            writeln!(f, "{pad}    witness {}", serde_json::to_string(w).unwrap_or_default())?;
        }
        for c in &self.children {
            c.fmt_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_indented(f, 0)
    }
}

/// Worker count: `MLQ_THREADS` if set and positive, else the hardware parallelism.
pub fn worker_count() -> usize {
    std::env::var("MLQ_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1))
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new().num_threads(worker_count()).build().expect("thread pool")
    })
}

/// Runs `f` on each item concurrently; results merge in item order.
fn run_cases<T, F>(items: &[T], f: F) -> (u64, Vec<Witness>)
where
    T: Sync,
    F: Fn(usize, &T) -> (u64, Vec<Witness>) + Sync + Send,
{
    let parts: Vec<(u64, Vec<Witness>)> =
        pool().install(|| items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect());
    let mut cases = 0;
    let mut failures = Vec::new();
    for (c, w) in parts {
        cases += c;
        failures.extend(w);
    }
    (cases, failures)
}

/// Generator for case `index` of sweep `tag`.
fn case_rng(seed: u64, tag: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 40) | index as u64);
    rng
}

/// Compositions with `1..=max_rows` parts, each in `0..=max_part`.
pub fn compositions(max_rows: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_rows {
        layer = layer
            .iter()
            .flat_map(|a| {
                (0..=max_part).map(move |p| {
                    let mut b = a.clone();
                    b.push(p);
                    b
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every queue with `n ≤ max_n`, at most `max_rows` rows and row sizes at most `max_part`.
pub fn exhaustive<S: Statistic>(max_n: usize, max_rows: usize, max_part: u32) -> Vec<Mlq<S>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let cap = if S::KIND == Kind::Fermionic { max_part.min(n as u32) } else { max_part };
        for alpha in compositions(max_rows, cap) {
            out.extend(Mlq::<S>::enumerate(&alpha, n).expect("sizes fit the ring"));
        }
    }
    out
}

/// A uniformly ranked queue with `2..=max_n` sites and `2..=max_rows` rows.
pub fn random_queue<S: Statistic>(rng: &mut ChaCha8Rng, max_n: usize, max_rows: usize) -> Mlq<S> {
    let n = rng.random_range(2..=max_n.max(2));
    let k = rng.random_range(2..=max_rows.max(2));
    let alpha: Vec<u32> = (0..k).map(|_| rng.random_range(0..=n as u32)).collect();
    let total = mlq_core::mlq::mlq_count::<S>(&alpha, n).expect("sizes fit the ring");
    Mlq::unrank(&alpha, n, rng.random_range(0..total)).expect("rank in range")
}

fn random_queues<S: Statistic>(b: &Bounds, seed: u64, tag: u64) -> Vec<Mlq<S>> {
    (0..b.random_cases).map(|i| random_queue(&mut case_rng(seed, tag, i), b.random_max_n, b.random_max_rows)).collect()
}

fn sweep_params(b: &Bounds, seed: u64) -> Parameters {
    Parameters { seed: Some(seed), bounds: Some(b.clone()), ..Parameters::default() }
}

fn sigma_cases<S: Statistic>(q: &Mlq<S>) -> (u64, Vec<Witness>) {
    let failures = (1..q.k())
        .filter_map(|i| Witness::new(CheckKind::SigmaInvariance).queue(q).index(i).verdict(checks::sigma_invariance(q, i)))
        .collect();
    (q.k().saturating_sub(1) as u64, failures)
}

/// `Φ∘σ_i = Φ` on every queue of the sweeps and every `i`.
pub fn suite_r_invariance(b: &Bounds, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new("r_invariance", "Φ∘σ_i = Φ", sweep_params(b, seed));
    r.absorb(run_cases(&exhaustive::<Fermionic>(b.fermionic_n, b.fermionic_rows, b.fermionic_part), |_, q| sigma_cases(q)));
    r.absorb(run_cases(&exhaustive::<Bosonic>(b.bosonic_n, b.bosonic_rows, b.bosonic_part), |_, q| sigma_cases(q)));
    r.absorb(run_cases(&random_queues::<Fermionic>(b, seed, 1), |_, q| sigma_cases(q)));
    r.absorb(run_cases(&random_queues::<Bosonic>(b, seed, 2), |_, q| sigma_cases(q)));
    r.finish(start)
}

const MAX_ORDERS: usize = 720;
const SAMPLED_ORDERS: usize = 50;

/// Priority-respecting orders to try: all of them when few, else a sample.
fn orders_for(canonical: &[Particle], rng: &mut ChaCha8Rng) -> Vec<Vec<Particle>> {
    if let Some(all) = checks::all_orders(canonical, MAX_ORDERS) {
        return all;
    }
    (0..SAMPLED_ORDERS)
        .map(|_| {
            let mut order = canonical.to_vec();
            let mut start = 0;
            while start < order.len() {
                let label = order[start].1;
                let end = start + order[start..].iter().take_while(|p| p.1 == label).count();
                order[start..end].shuffle(rng);
                start = end;
            }
            order
        })
        .collect()
}

fn ctm_cases<S: Statistic>(q: &Mlq<S>, rng: &mut ChaCha8Rng) -> (u64, Vec<Witness>) {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut push = |w: Option<Witness>| {
        cases += 1;
        failures.extend(w);
    };
    push(Witness::new(CheckKind::PhiEqualsCtm).queue(q).verdict(checks::phi_equals_ctm(q)));
    push(Witness::new(CheckKind::TraceEqualsPartialCtm).queue(q).verdict(checks::trace_equals_partial_ctm(q)));
    push(Witness::new(CheckKind::FmStraight).queue(q).verdict(checks::fm_agrees(q)));
    for i in 1..q.k() {
        push(Witness::new(CheckKind::CtmComponents).queue(q).index(i).verdict(checks::ctm_components(q, i)));
    }
    if q.k() >= 2 {
        for order in orders_for(&checks::particlewise_input(q), rng) {
            let v = checks::particlewise(q, &order);
            push(Witness::new(CheckKind::Particlewise).queue(q).order(&order).verdict(v));
        }
    }
    (cases, failures)
}

/// `Φ = π`, the component identity, FM on straight queues, and order
/// independence of the particle-wise algorithm.
pub fn suite_phi_equals_ctm(b: &Bounds, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new(
        "phi_equals_ctm",
        "Φ = π; π_j∘σ_i = π_{s_i(j)}; FM = Φ on straight queues; particle-wise order independence",
        sweep_params(b, seed),
    );
    let f = exhaustive::<Fermionic>(b.fermionic_n, b.fermionic_rows, b.fermionic_part);
    r.absorb(run_cases(&f, |i, q| ctm_cases(q, &mut case_rng(seed, 3, i))));
    let d = exhaustive::<Bosonic>(b.bosonic_n, b.bosonic_rows, b.bosonic_part);
    r.absorb(run_cases(&d, |i, q| ctm_cases(q, &mut case_rng(seed, 4, i))));
    r.absorb(run_cases(&random_queues::<Fermionic>(b, seed, 5), |i, q| ctm_cases(q, &mut case_rng(seed, 6, i))));
    r.absorb(run_cases(&random_queues::<Bosonic>(b, seed, 7), |i, q| ctm_cases(q, &mut case_rng(seed, 8, i))));
    r.finish(start)
}

fn model_params(lambda: &[u32], n: usize, x: Option<&RateParams>) -> Parameters {
    Parameters {
        lambda: Some(lambda.to_vec()),
        n: Some(n),
        x: x.map(|x| x.as_slice().iter().map(crate::io::format_rational).collect()),
        ..Parameters::default()
    }
}

/// TASEP of type `λ′` against `Φ` on `MLQ(λ, n)`.
pub fn suite_stationary_tasep(lambda: &[u32], n: usize) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("stationary_tasep", "TASEP law = Φ-fibre counts / |MLQ(λ,n)|", model_params(lambda, n, None));
    let (v, _) = checks::stationary_tasep(lambda, n)?;
    r.absorb((1, Witness::new(CheckKind::StationaryTasep).model(lambda, n).verdict(v).into_iter().collect()));
    Ok(r.finish(start))
}

/// 0-TAZRP of type `λ′` against `Φ̃` on `bMLQ(λ, n)` weighted by `x^D`.
pub fn suite_stationary_tazrp(lambda: &[u32], n: usize, x: &RateParams) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new(
        "stationary_tazrp",
        "0-TAZRP law = weighted Φ̃-fibres / Z",
        model_params(lambda, n, Some(x)),
    );
    let (v, _) = checks::stationary_tazrp(lambda, n, x)?;
    r.absorb((1, Witness::new(CheckKind::StationaryTazrp).model(lambda, n).x(x).verdict(v).into_iter().collect()));
    Ok(r.finish(start))
}

pub const TASEP_GRID: [&[u32]; 4] = [&[2, 1], &[2, 2], &[3, 1], &[2, 1, 1]];
pub const TAZRP_GRID: [&[u32]; 2] = [&[2, 1], &[2, 2]];
pub const TAZRP_X: [&[i64]; 3] = [&[1, 1, 1], &[1, 2, 3], &[2, 3, 5]];

/// Site parameters truncated (or padded with ones) to `n` entries.
pub fn truncated_x(x: &[i64], n: usize) -> RateParams {
    let mut v: Vec<i64> = x.iter().copied().take(n).collect();
    v.resize(n, 1);
    RateParams::from_integers(&v).expect("positive parameters")
}

/// [`suite_stationary_tasep`] over `λ ∈ TASEP_GRID`, `n ∈ {3,4,5}`.
pub fn suite_stationary_tasep_grid(b: &Bounds) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("stationary_tasep", "TASEP law = Φ-fibre counts / |MLQ(λ,n)|", Parameters::default());
    if b.grid {
        let grid: Vec<(&[u32], usize)> = TASEP_GRID.iter().flat_map(|&l| (3..=5).map(move |n| (l, n))).collect();
        let results: Vec<CliResult<SuiteReport>> =
            pool().install(|| grid.par_iter().map(|&(l, n)| suite_stationary_tasep(l, n)).collect());
        for c in results {
            let c = c?;
            r.absorb((c.cases, c.failures.clone()));
            r.children.push(c);
        }
    }
    Ok(r.finish(start))
}

/// [`suite_stationary_tazrp`] over `λ ∈ TAZRP_GRID`, `n ∈ {2,3}` and `x ∈ TAZRP_X`.
pub fn suite_stationary_tazrp_grid(b: &Bounds) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("stationary_tazrp", "0-TAZRP law = weighted Φ̃-fibres / Z", Parameters::default());
    if b.grid {
        let mut grid = Vec::new();
        for &l in &TAZRP_GRID {
            for n in 2..=3 {
                for &x in &TAZRP_X {
                    grid.push((l, n, truncated_x(x, n)));
                }
            }
        }
        let results: Vec<CliResult<SuiteReport>> =
            pool().install(|| grid.par_iter().map(|(l, n, x)| suite_stationary_tazrp(l, *n, x)).collect());
        for c in results {
            let c = c?;
            r.absorb((c.cases, c.failures.clone()));
            r.children.push(c);
        }
    }
    Ok(r.finish(start))
}

/// The first `n` primes, used as generic site parameters.
fn prime_x(n: usize) -> RateParams {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let v: Vec<i64> = (0..n).map(|i| PRIMES[i % PRIMES.len()]).collect();
    RateParams::from_integers(&v).expect("positive parameters")
}

fn bosonic_ring_cases(d: &BosonicMlq) -> (u64, Vec<Witness>) {
    let mut cases = 0;
    let mut failures = Vec::new();
    for x in [RateParams::ones(d.n()), prime_x(d.n())] {
        for site in 1..=d.n() {
            let w = |c| Witness::new(c).queue(d).site(site).x(&x);
            failures.extend(w(CheckKind::RingInverse).verdict(checks::bosonic_ring_inverse(d, site, &x)));
            failures.extend(w(CheckKind::RingWeight).verdict(checks::bosonic_ring_weight(d, site, &x)));
            cases += 2;
        }
    }
    let x = prime_x(d.n());
    for m in 1..d.k() {
        for site in 1..=d.n() {
            let v = checks::sigma_commutation(d, m, site, &x);
            failures.extend(Witness::new(CheckKind::SigmaCommutation).queue(d).index(m).site(site).x(&x).verdict(v));
            cases += 1;
        }
    }
    (cases, failures)
}

/// Compositions used for the chain-level checks: `(α, n)`.
pub const BALANCE_GRID: [(&[u32], usize); 4] = [(&[2, 1], 3), (&[1, 2], 3), (&[2, 2, 1], 3), (&[1, 2, 2], 2)];
pub const PROJECTION_GRID: [&[u32]; 2] = [&[2, 1], &[1, 2]];

/// Searches twisted fermionic queues with nonempty rows, by increasing `n` and `k`, for a
/// ringing move whose projection is not a TASEP move. Returns the first hit
/// and the number of `(Q, i)` pairs examined.
pub fn twisted_counterexample(max_n: usize, max_rows: usize) -> (Option<Witness>, u64) {
    let mut examined = 0;
    for n in 1..=max_n {
        for k in 2..=max_rows {
            for alpha in compositions(k, n as u32).into_iter().filter(|a| a.len() == k) {
                if alpha.contains(&0) || alpha.windows(2).all(|w| w[0] >= w[1]) {
                    continue;
                }
                for q in FermionicMlq::enumerate(&alpha, n).expect("sizes fit the ring") {
                    for site in 1..=n {
                        examined += 1;
                        let v = checks::fermionic_ring_projects(&q, site);
                        if let Some(w) = Witness::new(CheckKind::TwistedRingProjects).queue(&q).site(site).verdict(v) {
                            return (Some(w), examined);
                        }
                    }
                }
            }
        }
    }
    (None, examined)
}

/// Ringing-path identities: inverses, the weight identity, balance of `x^D`,
/// lumping onto 0-TAZRP, σ-commutation, and the twisted fermionic search.
pub fn suite_ringing(b: &Bounds, seed: u64) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new(
        "ringing",
        "F/R inverse; x^D·rate_F = x^F(D)·rate_R; x^D stationary; Φ̃ lumps onto 0-TAZRP; σ_m∘F̃_i = F̃_i∘σ_m",
        sweep_params(b, seed),
    );
    let f = exhaustive::<Fermionic>(b.fermionic_n, b.fermionic_rows, b.fermionic_part);
    r.absorb(run_cases(&f, |_, q| {
        let failures = (1..=q.n())
            .filter_map(|s| Witness::new(CheckKind::RingInverse).queue(q).site(s).verdict(checks::fermionic_ring_inverse(q, s)))
            .collect();
        (q.n() as u64, failures)
    }));
    let mut d = exhaustive::<Bosonic>(b.bosonic_n, b.bosonic_rows, b.bosonic_part);
    d.extend((0..b.ring_random).map(|i| random_queue::<Bosonic>(&mut case_rng(seed, 9, i), b.random_max_n, b.random_max_rows)));
    if b.grid {
        d.push(ringing_example());
    }
    r.absorb(run_cases(&d, |_, q| bosonic_ring_cases(q)));

    if b.grid {
        for (alpha, n) in BALANCE_GRID {
            for x in [truncated_x(&[1, 2, 3], n), RateParams::ones(n)] {
                let v = checks::bosonic_balance(alpha, n, &x)?;
                r.absorb((1, Witness::new(CheckKind::Balance).model(alpha, n).x(&x).verdict(v).into_iter().collect()));
            }
        }
        let mut states = Vec::new();
        for alpha in PROJECTION_GRID {
            for x in [truncated_x(&[1, 2, 3], 3), truncated_x(&[2, 3, 5], 3)] {
                states.extend(BosonicMlq::enumerate(alpha, 3)?.map(|q| (q, x.clone())));
            }
        }
        r.absorb(run_cases(&states, |_, (q, x)| {
            let v = checks::projection_identity(q, x);
            (1, Witness::new(CheckKind::ProjectionIdentity).queue(q).x(x).verdict(v).into_iter().collect())
        }));
    }

    if b.twisted_n > 0 && b.twisted_rows >= 2 {
        let (found, examined) = twisted_counterexample(b.twisted_n, b.twisted_rows);
        r.cases += examined;
        match found {
            Some(w) => r.findings.push(w),
            None => {
                let mut w = Witness::new(CheckKind::TwistedRingProjects);
                w.detail = format!("no twisted counterexample with n ≤ {}, k ≤ {}", b.twisted_n, b.twisted_rows);
                r.failures.push(w);
            }
        }
    }
    Ok(r.finish(start))
}

/// The four-row bosonic queue on four sites used as the ringing example.
pub fn ringing_example() -> BosonicMlq {
    use mlq_core::Row;
    let rows = [[2, 1, 0, 2], [1, 3, 0, 0], [3, 0, 0, 0], [0, 1, 1, 0]];
    Mlq::new(rows.iter().map(|r| mlq_core::BosonicIndicator::from_counts(r.to_vec()).expect("valid")).collect())
        .expect("valid queue")
}

/// kTAZRP and 0-TAZRP at `x = 1` agree for `λ = (2,1)`, `n ∈ {2,3}`.
pub fn suite_ktazrp(b: &Bounds) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("ktazrp", "kTAZRP law = 0-TAZRP law at x = 1", Parameters::default());
    if b.grid {
        for n in 2..=3 {
            let v = checks::ktazrp_agreement(&[2, 1], n)?;
            r.absorb((1, Witness::new(CheckKind::KtazrpAgreement).model(&[2, 1], n).verdict(v).into_iter().collect()));
        }
    }
    Ok(r.finish(start))
}

/// Simulated TASEP `(2,1)` on 3 sites within total variation 0.02 of the exact law.
pub fn suite_monte_carlo(b: &Bounds, seed: u64) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("monte_carlo", "TV(simulated, exact) < 0.02", sweep_params(b, seed));
    if b.mc_jumps > 0 {
        let seeds: Vec<u64> = (0..b.mc_seeds).map(|s| seed.wrapping_add(s)).collect();
        let results: Vec<CliResult<Verdict>> = pool().install(|| {
            seeds.par_iter().map(|&s| checks::monte_carlo(&[2, 1], 3, s, b.mc_jumps, witness::MC_TOLERANCE)).collect()
        });
        for (s, v) in seeds.iter().zip(results) {
            let w = Witness::new(CheckKind::MonteCarlo).model(&[2, 1], 3).seed(*s, b.mc_jumps).verdict(v?);
            r.absorb((1, w.into_iter().collect()));
        }
    }
    Ok(r.finish(start))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    #[value(name = "r_invariance")]
    RInvariance,
    #[value(name = "phi_equals_ctm")]
    PhiEqualsCtm,
    #[value(name = "stationary_tasep")]
    StationaryTasep,
    #[value(name = "stationary_tazrp")]
    StationaryTazrp,
    #[value(name = "ringing")]
    Ringing,
    #[value(name = "ktazrp")]
    Ktazrp,
    #[value(name = "monte_carlo")]
    MonteCarlo,
    #[value(name = "all")]
    All,
}

/// Runs a named suite at the given bounds; stationary suites use their grids.
pub fn run_suite(name: SuiteName, b: &Bounds, seed: u64) -> CliResult<SuiteReport> {
    match name {
        SuiteName::RInvariance => Ok(suite_r_invariance(b, seed)),
        SuiteName::PhiEqualsCtm => Ok(suite_phi_equals_ctm(b, seed)),
        SuiteName::StationaryTasep => suite_stationary_tasep_grid(b),
        SuiteName::StationaryTazrp => suite_stationary_tazrp_grid(b),
        SuiteName::Ringing => suite_ringing(b, seed),
        SuiteName::Ktazrp => suite_ktazrp(b),
        SuiteName::MonteCarlo => suite_monte_carlo(b, seed),
        SuiteName::All => suite_all(b, seed),
    }
}

/// Every suite at the given bounds.
pub fn suite_all(b: &Bounds, seed: u64) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("all", "every suite", sweep_params(b, seed));
    let children = vec![
        suite_r_invariance(b, seed),
        suite_phi_equals_ctm(b, seed),
        suite_stationary_tasep_grid(b)?,
        suite_stationary_tazrp_grid(b)?,
        suite_ringing(b, seed)?,
        suite_ktazrp(b)?,
        suite_monte_carlo(b, seed)?,
    ];
    for c in children {
        r.absorb((c.cases, c.failures.clone()));
        r.findings.extend(c.findings.iter().cloned());
        r.children.push(c);
    }
    Ok(r.finish(start))
}
