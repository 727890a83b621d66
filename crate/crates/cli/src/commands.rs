//! Subcommands of the `mlq` binary.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlq_core::combinatorics::conjugate;
use mlq_core::markov::{
    bosonic_mlq_chain, fermionic_mlq_chain, ktazrp_chain, ring_forward_bosonic, ring_forward_fermionic,
    ring_reverse_bosonic, ring_reverse_fermionic, simulate_ctmc, stationary_exact, tasep_chain, tazrp_chain, ChainSpec,
    RateParams, RationalDistribution,
};
use mlq_core::mlq::mlq_count;
use mlq_core::projection::{ctm_pi_at, label_trace};
use mlq_core::{BigInt, BigRational, Bosonic, BosonicMlq, Fermionic, FermionicMlq, Mlq, Statistic, Word};
use num_traits::Zero;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::{
    format_rational, parse_any_document, parse_json, parse_rational_list, parse_u32_list, read_input, to_json,
    AnyDocument, AnyQueue, DistributionDocument, DistributionEntry, DocWord, QueueDocument, QueueKind, StateDocument,
    WordDocument,
};
use crate::render::{render_any_queue, render_any_word};
use crate::verify::{run_suite, Bounds, SuiteName, Witness};

#[derive(Parser, Debug)]
#[command(name = "mlq", version, about = "Multiline queues, their projections and ringing-path chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Project a queue to its TASEP or 0-TAZRP word
    Project(ProjectArgs),
    /// Apply the row involution σ_i
    Sigma(SigmaArgs),
    /// Stationary distribution of a particle model or a queue chain
    Stationary(StationaryArgs),
    /// One forward or reverse ringing move
    Ring(RingArgs),
    /// Stream every queue of a given shape as JSON lines
    Enumerate(EnumerateArgs),
    /// Run verification suites, or replay a witness
    Verify(VerifyArgs),
    /// Print the dot diagram of a queue or a word
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProjectMethod {
    Label,
    Ctm,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    /// Queue document, or `-` for standard input
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value = "label")]
    pub method: ProjectMethod,
    /// Also print the labelled word of every row
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    /// Row index i, swapping rows i and i + 1
    #[arg(long)]
    pub i: usize,
    /// Check σ_i² = id and the braid relations at this queue
    #[arg(long)]
    pub check_braid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Tasep,
    Tazrp,
    Ktazrp,
    MlqFermionic,
    MlqBosonic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StationaryMethod {
    Exact,
    Mlq,
    Mc,
}

#[derive(Args, Debug)]
pub struct StationaryArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Particle type for tasep/tazrp/ktazrp, queue shape for the queue chains
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub n: usize,
    /// Site parameters, comma separated; defaults to all ones
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: StationaryMethod,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub jumps: u64,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    #[arg(long)]
    pub site: usize,
    #[arg(long)]
    pub reverse: bool,
    /// Site parameters for bosonic rates; defaults to all ones
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Row sizes, bottom row first
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "fermionic")]
    pub kind: QueueKind,
    #[arg(long, conflicts_with = "out")]
    pub count_only: bool,
    /// Write JSON lines to this file instead of standard output
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `key=value,...` overrides, or `empty`
    #[arg(long, default_value = "")]
    pub bounds: String,
    /// Emit the report as JSON
    #[arg(long)]
    pub json: bool,
    /// Re-run the check recorded in a witness document
    #[arg(long, conflicts_with_all = ["suite", "bounds"])]
    pub replay: Option<String>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long = "in", default_value = "-")]
    pub input: String,
}

/// Runs a parsed command, writing its result to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Project(a) => cmd_project(&a, out),
        Command::Sigma(a) => cmd_sigma(&a, out),
        Command::Stationary(a) => cmd_stationary(&a, out),
        Command::Ring(a) => cmd_ring(&a, out),
        Command::Enumerate(a) => cmd_enumerate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Render(a) => cmd_render(&a, out),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    writeln!(out, "{}", to_json(value))?;
    Ok(())
}

fn read_queue(path: &str) -> CliResult<AnyQueue> {
    parse_json::<QueueDocument>(&read_input(path)?)?.to_any()
}

#[derive(Serialize)]
struct ProjectOutput {
    word: WordDocument,
    trace: Vec<WordDocument>,
}

/// A projected word with its per-row trace.
type Projection<W> = (W, Vec<W>);

/// Label and ctm outputs, in that order.
fn projections<S: Statistic>(q: &Mlq<S>) -> CliResult<[Projection<S::Word>; 2]> {
    let trace = label_trace(q).words;
    let label = (trace[0].clone(), trace);
    let ctm_trace = (1..=q.k())
        .map(|j| Ok(ctm_pi_at(q, j)?.increment(j as u32 - 1)))
        .collect::<mlq_core::Result<Vec<_>>>()
        .map_err(|e| CliError::Verification(format!("ctm projection failed: {e}")))?;
    let ctm = (ctm_trace[0].clone(), ctm_trace);
    Ok([label, ctm])
}

fn project_typed<S: Statistic>(q: &Mlq<S>, a: &ProjectArgs, out: &mut dyn Write) -> CliResult<()>
where
    S::Word: DocWord + std::fmt::Display,
{
    let [label, ctm] = projections(q)?;
    if label.1 != ctm.1 {
        let rows: Vec<String> = label
            .1
            .iter()
            .zip(&ctm.1)
            .enumerate()
            .filter(|(_, (l, c))| l != c)
            .map(|(j, (l, c))| format!("row {}: label {l} vs ctm {c}", j + 1))
            .collect();
        return Err(CliError::Verification(format!("label and ctm projections differ: {}", rows.join("; "))));
    }
    let (word, trace) = match a.method {
        ProjectMethod::Label => label,
        ProjectMethod::Ctm => ctm,
    };
    if a.trace {
        emit(out, &ProjectOutput { word: word.to_document(), trace: trace.iter().map(DocWord::to_document).collect() })
    } else {
        emit(out, &word.to_document())
    }
}

pub fn cmd_project(a: &ProjectArgs, out: &mut dyn Write) -> CliResult<()> {
    match read_queue(&a.input)? {
        AnyQueue::Fermionic(q) => project_typed(&q, a, out),
        AnyQueue::Bosonic(q) => project_typed(&q, a, out),
    }
}

fn braid_failures<S: Statistic>(q: &Mlq<S>, i: usize) -> CliResult<Vec<String>> {
    let mut bad = Vec::new();
    if q.sigma(i)?.sigma(i)? != *q {
        bad.push(format!("σ_{i}² ≠ id"));
    }
    for j in [i.wrapping_sub(1), i + 1] {
        if j == 0 || j == usize::MAX || j >= q.k() {
            continue;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        if q.apply_word(&[lo, hi, lo])? != q.apply_word(&[hi, lo, hi])? {
            bad.push(format!("σ_{lo}σ_{hi}σ_{lo} ≠ σ_{hi}σ_{lo}σ_{hi}"));
        }
    }
    for j in 1..q.k() {
        if (j + 1 < i || j > i + 1) && q.apply_word(&[i, j])? != q.apply_word(&[j, i])? {
            bad.push(format!("σ_{i}σ_{j} ≠ σ_{j}σ_{i}"));
        }
    }
    Ok(bad)
}

fn sigma_typed<S: Statistic>(q: &Mlq<S>, a: &SigmaArgs, out: &mut dyn Write) -> CliResult<()> {
    let image = q.sigma(a.i)?;
    emit(out, &QueueDocument::from_mlq(&image))?;
    if a.check_braid {
        let bad = braid_failures(q, a.i)?;
        if !bad.is_empty() {
            return Err(CliError::Verification(bad.join("; ")));
        }
    }
    Ok(())
}

pub fn cmd_sigma(a: &SigmaArgs, out: &mut dyn Write) -> CliResult<()> {
    match read_queue(&a.input)? {
        AnyQueue::Fermionic(q) => sigma_typed(&q, a, out),
        AnyQueue::Bosonic(q) => sigma_typed(&q, a, out),
    }
}

fn rate_params(x: Option<&str>, n: usize) -> CliResult<RateParams> {
    match x {
        None => Ok(RateParams::ones(n)),
        Some(s) => {
            let xs = parse_rational_list(s)?;
            if xs.len() != n {
                return Err(CliError::input(format!("--x has {} entries but n = {n}", xs.len())));
            }
            Ok(RateParams::new(xs)?)
        }
    }
}

const MC_DENOMINATOR: u64 = 1_000_000;

/// Rounds frequencies to multiples of `1/MC_DENOMINATOR` summing exactly to 1.
pub fn round_frequencies(freqs: &[f64]) -> Vec<BigRational> {
    let scaled: Vec<f64> = freqs.iter().map(|f| f.max(0.0) * MC_DENOMINATOR as f64).collect();
    let mut units: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let assigned: u64 = units.iter().sum();
    let mut order: Vec<usize> = (0..freqs.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut left = MC_DENOMINATOR.saturating_sub(assigned);
    for &i in order.iter().cycle().take(order.len() * 2) {
        if left == 0 {
            break;
        }
        units[i] += 1;
        left -= 1;
    }
    units.into_iter().map(|u| BigRational::new(BigInt::from(u), BigInt::from(MC_DENOMINATOR))).collect()
}

fn solve<K: Ord + Clone>(chain: &ChainSpec<K>, method: StationaryMethod, seed: u64, jumps: u64) -> CliResult<Vec<(K, BigRational)>> {
    match method {
        StationaryMethod::Exact => {
            let dist = stationary_exact(chain)?;
            Ok(chain.states().iter().map(|s| (s.clone(), dist.get(s))).collect())
        }
        StationaryMethod::Mc => {
            let freqs = simulate_ctmc(chain, seed, jumps)?;
            Ok(chain.states().iter().cloned().zip(round_frequencies(&freqs)).collect())
        }
        StationaryMethod::Mlq => unreachable!("handled per model"),
    }
}

fn word_entries<W: DocWord>(probs: Vec<(W, BigRational)>) -> Vec<DistributionEntry> {
    probs
        .into_iter()
        .map(|(w, p)| DistributionEntry { state: StateDocument::Word(w.to_document()), prob: format_rational(&p), weight: None })
        .collect()
}

fn queue_entries<S: Statistic>(probs: Vec<(Mlq<S>, BigRational)>, weights: bool) -> Vec<DistributionEntry> {
    probs
        .into_iter()
        .map(|(q, p)| DistributionEntry {
            weight: weights.then(|| q.weight().exponents),
            state: StateDocument::Queue(QueueDocument::from_mlq(&q)),
            prob: format_rational(&p),
        })
        .collect()
}

/// Pushes forward a weighting of `MLQ(shape, n)` through `Φ` onto the chain's states.
fn fibre_law<S: Statistic>(
    shape: &[u32],
    n: usize,
    states: &[S::Word],
    weight: impl Fn(&Mlq<S>) -> BigRational,
) -> CliResult<Vec<(S::Word, BigRational)>> {
    let mut fibres: BTreeMap<S::Word, BigRational> = BTreeMap::new();
    for q in Mlq::<S>::enumerate(shape, n)? {
        *fibres.entry(mlq_core::projection::phi(&q)).or_insert_with(BigRational::zero) += weight(&q);
    }
    let dist = RationalDistribution::from_weights(fibres)?;
    Ok(states.iter().map(|s| (s.clone(), dist.get(s))).collect())
}

pub fn cmd_stationary(a: &StationaryArgs, out: &mut dyn Write) -> CliResult<()> {
    let lambda = parse_u32_list(&a.lambda)?;
    let n = a.n;
    let x = rate_params(a.x.as_deref(), n)?;
    let one = || BigRational::from_integer(1.into());
    let entries = match a.model {
        Model::Tasep => {
            let chain = tasep_chain(&lambda, n)?;
            match a.method {
                StationaryMethod::Mlq => word_entries(fibre_law::<Fermionic>(&conjugate(&lambda), n, chain.states(), |_| one())?),
                m => word_entries(solve(&chain, m, a.seed, a.jumps)?),
            }
        }
        Model::Tazrp => {
            let chain = tazrp_chain(&lambda, n, &x)?;
            match a.method {
                StationaryMethod::Mlq => word_entries(fibre_law::<Bosonic>(&conjugate(&lambda), n, chain.states(), |q| {
                    q.weight().eval(x.as_slice())
                })?),
                m => word_entries(solve(&chain, m, a.seed, a.jumps)?),
            }
        }
        Model::Ktazrp => {
            let chain = ktazrp_chain(&lambda, n)?;
            match a.method {
                StationaryMethod::Mlq => word_entries(fibre_law::<Bosonic>(&conjugate(&lambda), n, chain.states(), |_| one())?),
                m => word_entries(solve(&chain, m, a.seed, a.jumps)?),
            }
        }
        Model::MlqFermionic => {
            let chain = fermionic_mlq_chain(&lambda, n)?;
            match a.method {
                StationaryMethod::Mlq => {
                    let total = mlq_count::<Fermionic>(&lambda, n)?;
                    let p = BigRational::new(1.into(), BigInt::from(total));
                    queue_entries(chain.states().iter().map(|q| (q.clone(), p.clone())).collect::<Vec<(FermionicMlq, _)>>(), false)
                }
                m => queue_entries(solve(&chain, m, a.seed, a.jumps)?, false),
            }
        }
        Model::MlqBosonic => {
            let chain = bosonic_mlq_chain(&lambda, n, &x)?;
            match a.method {
                StationaryMethod::Mlq => {
                    let weights = chain.states().iter().map(|d| (d.clone(), d.weight().eval(x.as_slice()))).collect();
                    let dist = RationalDistribution::from_weights(weights)?;
                    queue_entries(chain.states().iter().map(|d| (d.clone(), dist.get(d))).collect::<Vec<(BosonicMlq, _)>>(), true)
                }
                m => queue_entries(solve(&chain, m, a.seed, a.jumps)?, true),
            }
        }
    };
    let doc = DistributionDocument {
        model: a.model.to_possible_value().expect("named").get_name().to_string(),
        method: Some(a.method.to_possible_value().expect("named").get_name().to_string()),
        lambda,
        n,
        x: a.x.as_ref().map(|_| x.as_slice().iter().map(format_rational).collect()),
        entries,
    };
    doc.probabilities()?;
    emit(out, &doc)
}

#[derive(Serialize)]
struct RingOutput {
    queue: QueueDocument,
    exit: usize,
    rate: String,
    path: Vec<usize>,
}

pub fn cmd_ring(a: &RingArgs, out: &mut dyn Write) -> CliResult<()> {
    let r = match read_queue(&a.input)? {
        AnyQueue::Fermionic(q) => {
            let r = if a.reverse { ring_reverse_fermionic(&q, a.site)? } else { ring_forward_fermionic(&q, a.site)? };
            RingOutput { queue: QueueDocument::from_mlq(&r.queue), exit: r.exit, rate: format_rational(&r.rate), path: r.path }
        }
        AnyQueue::Bosonic(d) => {
            let x = rate_params(a.x.as_deref(), d.n())?;
            let r = if a.reverse { ring_reverse_bosonic(&d, a.site, &x)? } else { ring_forward_bosonic(&d, a.site, &x)? };
            RingOutput { queue: QueueDocument::from_mlq(&r.queue), exit: r.exit, rate: format_rational(&r.rate), path: r.path }
        }
    };
    emit(out, &r)
}

fn stream<S: Statistic>(alpha: &[u32], n: usize, sink: &mut dyn Write) -> CliResult<()> {
    for q in Mlq::<S>::enumerate(alpha, n)? {
        serde_json::to_writer(&mut *sink, &QueueDocument::from_mlq(&q))?;
        sink.write_all(b"\n")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> CliResult<()> {
    let alpha = parse_u32_list(&a.alpha)?;
    if a.count_only {
        let count = match a.kind {
            QueueKind::Fermionic => mlq_count::<Fermionic>(&alpha, a.n)?,
            QueueKind::Bosonic => mlq_count::<Bosonic>(&alpha, a.n)?,
        };
        writeln!(out, "{count}")?;
        return Ok(());
    }
    let mut file;
    let mut buffered;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(|e| CliError::input(format!("{path}: {e}")))?);
            &mut file
        }
        None => {
            buffered = BufWriter::new(out);
            &mut buffered
        }
    };
    match a.kind {
        QueueKind::Fermionic => stream::<Fermionic>(&alpha, a.n, sink),
        QueueKind::Bosonic => stream::<Bosonic>(&alpha, a.n, sink),
    }
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if let Some(path) = &a.replay {
        let w: Witness = parse_json(&read_input(path)?)?;
        return match w.replay()? {
            crate::verify::checks::Verdict::Pass => {
                writeln!(out, "PASS {}", w.check.name())?;
                Ok(())
            }
            crate::verify::checks::Verdict::Fail(detail) => {
                writeln!(out, "FAIL {}: {detail}", w.check.name())?;
                Err(CliError::Verification(detail))
            }
        };
    }
    let bounds = Bounds::parse(&a.bounds)?;
    let report = run_suite(a.suite, &bounds, a.seed)?;
    if a.json {
        emit(out, &report)?;
    } else {
        write!(out, "{report}")?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} failing case(s) in {}", report.failures.len(), report.suite)))
    }
}

pub fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> CliResult<()> {
    let text = match parse_any_document(&read_input(&a.input)?)? {
        AnyDocument::Queue(doc) => render_any_queue(&doc.to_any()?),
        AnyDocument::Word(doc) => render_any_word(&doc.to_any()?),
    };
    write!(out, "{text}")?;
    Ok(())
}
