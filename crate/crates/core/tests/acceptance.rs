//! Acceptance run: every primary criterion, exact, one line each.
//! Runs without the libtest harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gctwistor::harness::{run_scenario, Report, Scenario, Status};

struct Outcome {
    ok: bool,
    note: String,
}

fn preset(name: &str, checks: &[&str]) -> Scenario {
    let mut sc = Scenario::preset(name).expect("preset");
    sc.checks = Some(checks.iter().map(|c| c.to_string()).collect());
    sc
}

fn run(sc: &Scenario) -> Report {
    run_scenario(sc).unwrap_or_else(|e| panic!("{}: {e}", sc.name))
}

/// Status and sample count of a named check.
fn status(r: &Report, check: &str) -> (Status, usize, String) {
    let c = r.check(check).unwrap_or_else(|| panic!("{check} missing from {}", r.scenario));
    (c.status, c.samples, c.residual.clone())
}

fn all_pass(r: &Report, checks: &[&str], samples: usize) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for c in checks {
        let (st, s, res) = status(r, c);
        ok &= st == Status::Pass && s == samples;
        parts.push(format!("{c}: {} on {s} samples, max |value| {res}", st.label()));
    }
    Outcome { ok, note: parts.join("; ") }
}

fn within(o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    let ok = o.ok && elapsed < limit;
    Outcome { ok, note: format!("{} (limit {:.0?})", o.note, limit) }
}

/// Runs and times one criterion; `f` may hand back reports reused later.
fn criterion<R>(failures: &mut usize, name: &str, f: impl FnOnce() -> (Outcome, R)) -> R {
    let start = Instant::now();
    let (o, keep) = f();
    let t = start.elapsed();
    if !o.ok {
        *failures += 1;
    }
    println!("{} {name} [{:.3}s] {}", if o.ok { "PASS" } else { "FAIL" }, t.as_secs_f64(), o.note);
    keep
}

fn finding(name: &str, r: &Report, check: &str) {
    let c = r.check(check).expect("check");
    let w = c.witnesses.first().map(|w| format!("; first witness: {}", w.detail)).unwrap_or_default();
    println!("{} {name}: {}{w}", c.status.label(), c.claim);
}

fn main() -> ExitCode {
    let mut failures = 0;

    criterion(&mut failures, "lemma2: 100 seeded bases, dim V = 2", || {
        let start = Instant::now();
        let r = run(&preset("linalg-all", &["lemma2"]));
        (within(all_pass(&r, &["lemma2"], 100), start.elapsed(), Duration::from_secs(1)), ())
    });

    criterion(&mut failures, "examples 1/2: orientation parity, n = 1..4", || {
        (all_pass(&run(&preset("linalg-all", &["examples12-orientation"])), &["examples12-orientation"], 4), ())
    });

    let ex5 = criterion(&mut failures, "example 5: 21 relations on 10 bases", || {
        let ex5 = run(&preset("linalg-all", &["example5-relations", "example5-index-swapped"]));
        let c = ex5.check("example5-relations").expect("check");
        let o = all_pass(&ex5, &["example5-relations"], 10);
        let evals = c.evaluations;
        (Outcome { ok: o.ok && evals == 210, note: format!("{}, {evals} relation evaluations", o.note) }, ex5)
    });

    criterion(&mut failures, "example 7: Courant defects on R⁴, 10 points", || {
        (all_pass(&run(&preset("examples-courant", &["example7-constant", "example7-x1", "example7-nonclosed"])), &[
            "example7-constant",
            "example7-x1",
            "example7-nonclosed",
        ], 10), ())
    });

    criterion(&mut failures, "theorem 1(i): n = 1, Γ¹₂₂ = x1, 50 points, both sheets, α = 1 vanishes", || {
        let start = Instant::now();
        let r = run(&preset("thm1-n1", &["thm1-i"]));
        (within(all_pass(&r, &["thm1-i"], 50), start.elapsed(), Duration::from_secs(10)), ())
    });

    let (n2_flat, n2_curved) = criterion(&mut failures, "theorem 1(ii): n = 2 flat vanishes on 20 samples, nonflat witness, μ kernel 0", || {
        let n2_flat = run(&preset("thm1-n2-flat", &["thm1-ii", "thm1-iii", "remark2"]));
        let n2_curved = run(&preset("thm1-n2-curved", &["thm1-ii", "thm1-ii-mu", "thm1-iii", "remark2"]));
        let flat = all_pass(&n2_flat, &["thm1-ii"], 20);
        let curved = all_pass(&n2_curved, &["thm1-ii"], 20);
        let mu = n2_curved.check("thm1-ii-mu").expect("check");
        let kernels = mu.witnesses.first().map(|w| w.values.join(", ")).unwrap_or_default();
        let has_witness = n2_curved.check("thm1-ii").is_some_and(|c| !c.witnesses.is_empty());
        let o = Outcome {
            ok: flat.ok && curved.ok && has_witness && mu.status == Status::Pass,
            note: format!("flat {}; curved {}; μ kernels [{kernels}]", flat.note, curved.note),
        };
        (o, (n2_flat, n2_curved))
    });

    criterion(&mut failures, "theorem 1(iii): N of 𝒥₂ = 2·Q4^h at every sample", || {
        let n1 = run(&preset("thm1-n1", &["thm1-iii"]));
        let a = all_pass(&n1, &["thm1-iii"], 50);
        let b = all_pass(&n2_flat, &["thm1-iii"], 20);
        let c = all_pass(&n2_curved, &["thm1-iii"], 20);
        (Outcome { ok: a.ok && b.ok && c.ok, note: format!("n = 1 curved {}; n = 2 flat {}; n = 2 curved {}", a.note, b.note, c.note) }, ())
    });

    criterion(&mut failures, "remark 2: ℋ-projection of N of 𝓘_α equals Q4^h at 10 points", || {
        let mut sc = preset("thm1-n1", &["remark2"]);
        sc.samples.base_points = 10;
        let a = all_pass(&run(&sc), &["remark2"], 10);
        let b = all_pass(&n2_flat, &["remark2"], 20);
        (Outcome { ok: a.ok && b.ok, note: format!("n = 1 curved {}; n = 2 flat {}", a.note, b.note) }, ())
    });

    criterion(&mut failures, "oracle: n = 1, both α, 10 samples, zero residual, bracket identity zero", || {
        let start = Instant::now();
        let r = run(&preset("oracle-n1", &["oracle-alpha1", "oracle-alpha2", "oracle-eq32"]));
        (within(all_pass(&r, &["oracle-alpha1", "oracle-alpha2", "oracle-eq32"], 10), start.elapsed(), Duration::from_secs(60)), ())
    });

    criterion(&mut failures, "determinism: reports byte-identical across runs", || {
        let mut same = true;
        let mut bytes = 0;
        for name in ["linalg-all", "examples-courant", "thm1-n1"] {
            let sc = Scenario::preset(name).expect("preset");
            let a = run(&sc).to_json().expect("json");
            let b = run(&sc).to_json().expect("json");
            same &= a == b;
            bytes += a.len();
        }
        (Outcome { ok: same, note: format!("3 presets, {bytes} bytes compared") }, ())
    });

    finding("example 5 literal relation reading", &ex5, "example5-index-swapped");
    finding("remark 2, n = 2, Γ¹₂₂ = x1", &n2_curved, "remark2");

    println!("{} criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
