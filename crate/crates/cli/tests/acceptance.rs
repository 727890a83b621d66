//! The eight acceptance criteria. Each test writes one `PASS`/`FAIL` line to
//! stderr (bypassing the capture) and then asserts.

use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use mlq::io::{parse_json, to_json, QueueDocument};
use mlq::verify::{self, checks, Bounds, CheckKind, SuiteReport, Witness};
use mlq_core::markov::{
    bosonic_mlq_chain, check_balance, ring_forward_bosonic, ring_forward_fermionic, ring_reverse_bosonic, tasep_transitions, RateParams,
    RationalDistribution,
};
use mlq_core::projection::{
    ctm_pi, ctm_pi_at, ctm_pi_components, fm_straight, label_trace, phi, queue_op_bosonic, queue_op_fermionic,
    queue_op_particlewise, queue_op_particlewise_fermionic,
};
use mlq_core::{
    BigRational, Bosonic, BosonicIndicator, BosonicMlq, BosonicWord, FermionicIndicator, FermionicMlq, FermionicWord,
    Mlq, Row,
};

const SEED: u64 = 2024;

fn line(id: u32, title: &str, ok: bool, elapsed: Duration, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "acceptance {id} [{title}]: {verdict} ({:.2} s){detail}", elapsed.as_secs_f64());
}

/// Reports and asserts one criterion with an optional wall-clock limit.
fn finish(id: u32, title: &str, start: Instant, limit: Option<u64>, failures: Vec<String>) {
    let elapsed = start.elapsed();
    let mut failures = failures;
    if let Some(secs) = limit {
        if elapsed > Duration::from_secs(secs) {
            failures.push(format!("took {:.2} s, limit {secs} s", elapsed.as_secs_f64()));
        }
    }
    let detail = if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) };
    line(id, title, failures.is_empty(), elapsed, &detail);
    assert!(failures.is_empty(), "criterion {id} failed{detail}");
}

fn suite_failures(r: &SuiteReport) -> Vec<String> {
    if r.passed {
        return Vec::new();
    }
    let mut out: Vec<String> = r.failures.iter().take(3).map(to_json).collect();
    if out.is_empty() {
        out.push(format!("suite {} did not pass", r.suite));
    }
    out
}

fn fw(s: &str) -> FermionicWord {
    s.parse().unwrap()
}

fn bw(s: &str) -> BosonicWord {
    s.parse().unwrap()
}

fn fq(n: usize, rows: &[&[usize]]) -> FermionicMlq {
    FermionicMlq::from_sites(n, rows).unwrap()
}

fn bq(n: usize, rows: &[&[usize]]) -> BosonicMlq {
    BosonicMlq::from_sites(n, rows).unwrap()
}

fn bq_counts(rows: &[[u32; 4]]) -> BosonicMlq {
    Mlq::new(rows.iter().map(|r| BosonicIndicator::from_counts(r.to_vec()).unwrap()).collect()).unwrap()
}

/// Collects named equalities so every example is reported, not just the first miss.
#[derive(Default)]
struct Examples(Vec<String>);

impl Examples {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }
}

fn projection_examples(ex: &mut Examples) {
    let q = fq(5, &[&[1, 3, 4, 5], &[2, 3, 4], &[3, 5]]);
    ex.eq("FM fermionic", fm_straight(&q).unwrap(), fw("10332"));
    ex.eq("FM fermionic via Φ", phi(&q), fw("10332"));
    let d = bq(5, &[&[1, 3, 3, 5], &[2, 2, 4], &[1, 2]]);
    ex.eq("FM bosonic", fm_straight(&d).unwrap(), bw("(3,∅,13,∅,2)"));
    ex.eq("FM bosonic via Φ̃", phi(&d), bw("(3,∅,13,∅,2)"));

    let row = FermionicIndicator::from_sites(&[2, 3, 4, 7, 9], 10).unwrap();
    ex.eq("fermionic direct labelling", queue_op_fermionic(&row, 1, &fw("3242543303")).unwrap(), fw("1343225041"));
    let row = BosonicIndicator::from_sites(&[1, 1, 2, 4], 5).unwrap();
    ex.eq(
        "bosonic direct labelling",
        queue_op_bosonic(&row, 1, &bw("(446,∅,234,3,36)")).unwrap(),
        bw("(22344,6,∅,16,2)"),
    );

    let q = fq(6, &[&[1, 2, 4], &[1, 3, 5, 6], &[2], &[1, 2, 3, 5]]);
    let q2 = q.apply_word(&[2, 3, 1]).unwrap();
    ex.eq("σ_2σ_3σ_1 Q", q2.clone(), fq(6, &[&[1, 2, 4, 5], &[1, 2, 3, 6], &[1, 3, 5], &[2]]));
    ex.eq("Φ(Q)", phi(&q), fw("330420"));
    ex.eq("Φ(Q′)", phi(&q2), fw("330420"));

    let d = bq(6, &[&[1, 2, 2, 4, 5], &[2, 2], &[1, 2, 4, 6]]);
    let d2 = d.sigma(2).unwrap();
    ex.eq("σ_2 D", d2.clone(), bq(6, &[&[1, 2, 2, 4, 5], &[1, 2, 2, 2], &[4, 6]]));
    ex.eq("Φ̃(D)", phi(&d), bw("(3,12,∅,2,3,∅)"));
    ex.eq("Φ̃(D′)", phi(&d2), bw("(3,12,∅,2,3,∅)"));
}

fn ctm_examples(ex: &mut Examples) {
    let q = fq(6, &[&[1, 2, 4], &[1, 3, 5, 6], &[2], &[1, 2, 3, 5]]);
    let q2 = q.apply_word(&[2, 3, 1]).unwrap();
    let counts = |q: &FermionicMlq| -> Vec<Vec<u32>> {
        ctm_pi_components(q, 1).unwrap().iter().map(|r| r.counts()).collect()
    };
    let b = counts(&q);
    ex.eq(
        "π_j(b)",
        b.clone(),
        vec![vec![1, 1, 0, 1, 0, 0], vec![1, 1, 0, 1, 1, 0], vec![0, 0, 0, 1, 0, 0], vec![1, 1, 0, 1, 1, 0]],
    );
    let b2 = counts(&q2);
    ex.eq(
        "π_j(b′)",
        b2.clone(),
        vec![vec![1, 1, 0, 1, 1, 0], vec![1, 1, 0, 1, 1, 0], vec![1, 1, 0, 1, 0, 0], vec![0, 0, 0, 1, 0, 0]],
    );
    ex.eq("π(b)", ctm_pi(&q).unwrap(), fw("330420"));
    ex.eq("π(b′)", ctm_pi(&q2).unwrap(), fw("330420"));
    // τ = s_2 s_3 s_1 applied left to right.
    let transpose = |j: usize, s: usize| if j == s { s + 1 } else if j == s + 1 { s } else { j };
    let tau = [1usize, 2, 3, 4].map(|j| [2, 3, 1].iter().fold(j, |j, &s| transpose(j, s)));
    ex.eq("τ", tau, [2, 4, 1, 3]);
    for j in 1..=4 {
        ex.eq(&format!("π_{j}(b′) = π_τ({j})(b)"), b2[j - 1].clone(), b[tau[j - 1] - 1].clone());
    }

    let trace = label_trace(&q);
    for (j, sub, tr, pi) in
        [(4, "111010", "444040", "111010"), (3, "121010", "343030", "121010"), (2, "203022", "304033", "203022")]
    {
        ex.eq(&format!("Φ(sub-queue {j})"), phi(&q.sub_queue(j).unwrap()), fw(sub));
        ex.eq(&format!("label trace row {j}"), trace.words[j - 1].clone(), fw(tr));
        ex.eq(&format!("π at {j}"), ctm_pi_at(&q, j).unwrap(), fw(pi));
    }
}

fn sigma_examples(ex: &mut Examples) {
    let q = fq(6, &[&[1, 2, 4], &[1, 3, 5, 6], &[2, 3]]);
    ex.eq("σ_1 Q", q.sigma(1).unwrap(), fq(6, &[&[1, 2, 4, 5], &[1, 3, 6], &[2, 3]]));
    ex.eq("σ_2 Q", q.sigma(2).unwrap(), fq(6, &[&[1, 2, 4], &[3, 5], &[1, 2, 3, 6]]));
    let d = bq(6, &[&[1, 2, 2, 4, 5], &[2, 2], &[1, 2, 4, 6]]);
    ex.eq("σ_1 D", d.sigma(1).unwrap(), bq(6, &[&[1, 5], &[2, 2, 2, 2, 4], &[1, 2, 4, 6]]));
    ex.eq("σ_2 D", d.sigma(2).unwrap(), bq(6, &[&[1, 2, 2, 4, 5], &[1, 2, 2, 2], &[4, 6]]));
}

fn particlewise_examples(ex: &mut Examples) {
    let row = FermionicIndicator::from_sites(&[1, 3, 5, 6], 6).unwrap();
    ex.eq(
        "fermionic particle-wise",
        queue_op_particlewise_fermionic(&row, 2, &fw("243433"), &[2, 4, 3, 5, 6, 1]).unwrap(),
        fw("324143"),
    );
    let row = BosonicIndicator::from_sites(&[1, 1, 1, 3, 3, 5, 5], 5).unwrap();
    let order = [(1, 4), (2, 4), (2, 4), (5, 4), (5, 4), (1, 3), (1, 3), (2, 3), (5, 3), (1, 2), (4, 2)];
    ex.eq(
        "bosonic particle-wise",
        queue_op_particlewise::<Bosonic>(&row, 2, &bw("(2334,344,∅,2,344)"), &order).unwrap(),
        bw("(2344,∅,344,∅,2334)"),
    );
}

fn ringing_examples(ex: &mut Examples) {
    let d = bq_counts(&[[2, 1, 0, 2], [1, 3, 0, 0], [3, 0, 0, 0], [0, 1, 1, 0]]);
    let xs = [2i64, 3, 5, 7];
    let x = RateParams::from_integers(&xs).unwrap();
    let images = [
        (bq_counts(&[[1, 2, 0, 2], [1, 2, 1, 0], [3, 0, 0, 0], [0, 1, 0, 1]]), 3),
        (bq_counts(&[[2, 0, 1, 2], [1, 3, 0, 0], [3, 0, 0, 0], [0, 1, 0, 1]]), 3),
        (bq_counts(&[[2, 1, 0, 2], [1, 3, 0, 0], [3, 0, 0, 0], [0, 1, 0, 1]]), 3),
        (bq_counts(&[[3, 1, 0, 1], [0, 4, 0, 0], [3, 0, 0, 0], [0, 0, 2, 0]]), 2),
    ];
    for (i, (want, exit)) in images.into_iter().enumerate() {
        let site = i + 1;
        let r = ring_forward_bosonic(&d, site, &x).unwrap();
        ex.eq(&format!("F̃_{site} image"), r.queue, want);
        ex.eq(&format!("F̃_{site} exit"), r.exit, exit);
        ex.eq(&format!("F̃_{site} rate"), r.rate, BigRational::new(1.into(), xs[i].into()));
    }
    let d4 = ring_forward_bosonic(&d, 4, &x).unwrap().queue;
    let back = ring_reverse_bosonic(&d4, 2, &x).unwrap();
    ex.eq("R̃ at 2 path", back.path, vec![3, 4, 1, 1, 2]);
    ex.eq("R̃ at 2 queue", back.queue, d);
    ex.eq("R̃ at 2 exit", back.exit, 4);
    ex.eq("R̃ at 2 rate", back.rate, BigRational::new(1.into(), 5.into()));
}

#[test]
fn criterion_1_worked_examples() {
    let start = Instant::now();
    let mut ex = Examples::default();
    projection_examples(&mut ex);
    ctm_examples(&mut ex);
    sigma_examples(&mut ex);
    particlewise_examples(&mut ex);
    ringing_examples(&mut ex);
    finish(1, "worked examples", start, None, ex.0);
}

#[test]
fn criterion_2_tasep_stationary_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for lambda in verify::TASEP_GRID {
        for n in 3..=5 {
            let (v, _) = checks::stationary_tasep(lambda, n).unwrap();
            if let checks::Verdict::Fail(d) = v {
                failures.push(format!("λ = {lambda:?}, n = {n}: {d}"));
            }
        }
    }
    finish(2, "TASEP law = Φ fibres / |MLQ|", start, Some(10), failures);
}

#[test]
fn criterion_3_tazrp_stationary_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for lambda in verify::TAZRP_GRID {
        for n in 2..=3 {
            for xs in verify::TAZRP_X {
                let x = verify::truncated_x(xs, n);
                let (v, _) = checks::stationary_tazrp(lambda, n, &x).unwrap();
                if let checks::Verdict::Fail(d) = v {
                    failures.push(format!("λ = {lambda:?}, n = {n}, x = {xs:?}: {d}"));
                }
            }
        }
    }
    finish(3, "0-TAZRP law = weighted Φ̃ fibres / Z", start, Some(10), failures);
}

#[test]
fn criterion_4_sigma_invariance_and_ctm() {
    let start = Instant::now();
    let b = Bounds::default();
    let mut failures = suite_failures(&verify::suite_r_invariance(&b, SEED));
    failures.extend(suite_failures(&verify::suite_phi_equals_ctm(&b, SEED)));
    finish(4, "Φ∘σ_i = Φ, Φ = π, FM agreement, order independence", start, Some(30), failures);
}

#[test]
fn criterion_5_chain_properties() {
    let start = Instant::now();
    let b = Bounds { twisted_n: 0, twisted_rows: 0, ..Bounds::default() };
    let mut failures = suite_failures(&verify::suite_ringing(&b, SEED).unwrap());
    let x = RateParams::from_integers(&[1, 2, 3]).unwrap();
    let chain = bosonic_mlq_chain(&[2, 1], 3, &x).unwrap();
    if chain.len() != 18 {
        failures.push(format!("bosonic chain for (2,1), n = 3 has {} states, want 18", chain.len()));
    }
    let weights = chain.states().iter().map(|d| (d.clone(), d.weight().eval(x.as_slice()))).collect();
    let law = RationalDistribution::from_weights(weights).unwrap();
    if !check_balance(&chain, &law) {
        failures.push("x^D fails the balance equations on the 18-state chain".into());
    }
    finish(5, "ringing inverses, weights, balance, lumping, σ-commutation", start, Some(20), failures);
}

fn mlq_bin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mlq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn criterion_6_twisted_counterexample() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (found, examined) = verify::twisted_counterexample(4, 4);
    match found {
        None => failures.push(format!("no witness among {examined} twisted (Q, i) pairs")),
        Some(w) => {
            let json = to_json(&w);
            let _ = writeln!(std::io::stderr().lock(), "acceptance 6 witness: {}", serde_json::to_string(&w).unwrap());
            let back: Witness = parse_json(&json).unwrap();
            if back != w || back.check != CheckKind::TwistedRingProjects {
                failures.push("witness does not round-trip".into());
            }
            let doc = w.queue.clone().unwrap();
            let q: FermionicMlq = doc.to_mlq().unwrap();
            let site = w.site.unwrap();
            let shape = q.shape();
            if shape.windows(2).all(|p| p[0] >= p[1]) || q.k() > 4 || q.n() > 4 {
                failures.push(format!("witness shape {shape:?} on {} sites is out of range", q.n()));
            }
            let ringed_q = ring_forward_fermionic(&q, site).unwrap().queue;
            let (before, after) = (phi(&q), phi(&ringed_q));
            if after == before || tasep_transitions(&before).iter().any(|(t, _)| *t == after) {
                failures.push(format!("Φ {before} → {after} is a TASEP move"));
            }
            let (code, stdout, stderr) = mlq_bin(&["verify", "--replay", "-"], &json);
            if code != 4 || !stdout.starts_with("FAIL twisted_ring_projects") {
                failures.push(format!("replay exited {code}: {stdout}{stderr}"));
            }
            let (code, ringed, stderr) = mlq_bin(&["ring", "--site", &site.to_string()], &to_json(&doc));
            let ringed: serde_json::Value = serde_json::from_str(&ringed).unwrap_or_default();
            if code != 0 || ringed["queue"] != serde_json::to_value(QueueDocument::from_mlq(&ringed_q)).unwrap() {
                failures.push(format!("`mlq ring` disagrees: exit {code}, {stderr}"));
            }
        }
    }
    finish(6, "twisted fermionic ringing need not project to TASEP", start, Some(20), failures);
}

#[test]
fn criterion_7_monte_carlo() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for seed in SEED..SEED + 3 {
        if let checks::Verdict::Fail(d) = checks::monte_carlo(&[2, 1], 3, seed, 100_000, 0.02).unwrap() {
            failures.push(d);
        }
    }
    finish(7, "simulated TASEP within TV 0.02", start, Some(10), failures);
}

#[test]
fn criterion_8_ktazrp_consistency() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=3 {
        if let checks::Verdict::Fail(d) = checks::ktazrp_agreement(&[2, 1], n).unwrap() {
            failures.push(d);
        }
    }
    finish(8, "kTAZRP law = 0-TAZRP law at x = 1", start, None, failures);
}
