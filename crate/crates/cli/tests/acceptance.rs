//! Acceptance suite: one PASS/FAIL line per criterion, each with its own
//! runtime budget. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use metzler_core::graph::{
    build_torus, complete, corpus, cycle, directed_cycle, petersen, proposition1_residual, random_digraph, single_arc,
    RandomDigraphSpec,
};
use metzler_core::ledger::{discrepancy_ledger, Evidence, Verdict, REFUTED_ABOVE};
use metzler_core::linalg::{det_complex, max_row_sum, pencil, to_complex};
use metzler_core::polydet::{
    backtrackless_series_check, corollary_eval, corollary_eval_with, ihara_zeta_recip, theorem5_poly,
    weinstein_aronszajn_check, CorollaryKind, Transcription,
};
use metzler_core::sis::{estimate_decay, exact_decay, DecayOptions, DecayOutcome};
use metzler_core::spectra::{decay_bound, eigenvalues, metzler_spectrum_closed, multiset_distance, pair_block_roots};
use metzler_core::zeta::{
    identity_coin, identity_coin_zeta, limit_convergence_table, metzler_zeta_finite, metzler_zeta_finite_with,
    metzler_zeta_limit, random_stochastic_coin, random_unitary_coin, walk_zeta, CoinWalk, PrefactorExponent,
    TorusZetaForm,
};
use metzler_core::{poly_det_pencil, CMatrix, Complex64, Digraph, Error, MetzlerAssembly, RMatrix, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        summary: summary.into(),
    })
}

type Builder = fn(f64, f64) -> Result<Digraph>;

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20_240_601);
    r.set_stream(stream);
    r
}

fn random_rates(r: &mut ChaCha8Rng) -> (f64, f64) {
    (r.random_range(0.1..2.0), r.random_range(0.1..2.0))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

fn factorization() -> Result<Outcome> {
    let mut r = rng(1);
    let mut graphs: Vec<Digraph> = Vec::new();
    for _ in 0..200 {
        let n = r.random_range(2..=10);
        graphs.push(random_digraph(RandomDigraphSpec::new(n), &mut r)?);
    }
    for (d, side) in [(1, 3), (1, 4), (1, 7), (2, 3), (2, 4), (3, 3)] {
        graphs.push(build_torus(d, side, 1.0, 1.0)?);
    }
    for n in 3..=8 {
        graphs.push(cycle(n, 1.0, 1.0)?);
        graphs.push(directed_cycle(n, 1.0, 1.0)?);
    }
    graphs.push(petersen(1.0, 1.0)?);
    let mut worst = 0;
    for g in &graphs {
        worst = worst.max(proposition1_residual(&MetzlerAssembly::from_digraph(g)?));
    }
    outcome(
        worst == 0,
        format!("{} graphs, max integer residual {worst}", graphs.len()),
    )
}

fn factored_polynomial() -> Result<Outcome> {
    let mut r = rng(2);
    let (mut worst, mut failures) = (0.0f64, 0);
    for _ in 0..200 {
        let n = r.random_range(2..=8);
        let asm = MetzlerAssembly::from_digraph(&random_digraph(RandomDigraphSpec::new(n), &mut r)?)?;
        let f = theorem5_poly(&asm)?;
        let p = poly_det_pencil(&asm.a_cal)?;
        let mut ok = f.degree() == p.degree();
        for k in 0..=f.degree().max(p.degree()) {
            let (a, b) = (f.coeff(k), p.coeff(k));
            let diff = (a - b).abs();
            ok &= diff <= 1e-8 * b.abs() || diff <= 1e-10;
            if diff > 1e-10 {
                worst = worst.max(diff / b.abs());
            }
        }
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0,
        format!(
            "200 digraphs, {failures} mismatched, worst relative coefficient error {worst:.1e} (tol 1e-8, abs 1e-10)"
        ),
    )
}

/// `count` pole-free points on circles of radius `r`, skipping poles.
fn corollary_worst(kind: CorollaryKind, g: &Digraph, beta: f64, delta: f64, count: usize) -> Result<f64> {
    let asm = MetzlerAssembly::from_digraph(g)?;
    let a = to_complex(&asm.a_cal);
    let r = 0.5 / (1.0 + max_row_sum(&asm.a_cal));
    let mut worst = 0.0f64;
    let (mut used, mut k) = (0, 0);
    while used < count {
        if k > 8 * count {
            return Err(Error::InvalidInput(format!("only {used} pole-free points found")));
        }
        let u = Complex64::from_polar(
            r * (1.0 - 0.01 * (k / count) as f64),
            2.0 * PI * (k as f64 + 0.25) / count as f64,
        );
        k += 1;
        match corollary_eval(kind, g, beta, delta, u) {
            Ok(v) => {
                worst = worst.max(rel(v, det_complex(&pencil(&a, u))));
                used += 1;
            }
            Err(Error::Pole { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn corollaries() -> Result<Outcome> {
    let mut r = rng(3);
    let mut cases: Vec<(String, Digraph, Vec<CorollaryKind>)> = Vec::new();
    let all = vec![
        CorollaryKind::GeneralDigraph,
        CorollaryKind::Undirected,
        CorollaryKind::Regular,
    ];
    for n in 3..=6 {
        let (b, d) = random_rates(&mut r);
        cases.push((
            format!("dicycle{n}"),
            directed_cycle(n, b, d)?,
            vec![CorollaryKind::GeneralDigraph],
        ));
    }
    for (name, build) in [
        ("K3", (|b, d| complete(3, b, d)) as Builder),
        ("K4", |b, d| complete(4, b, d)),
        ("petersen", petersen),
        ("T1_4", |b, d| build_torus(1, 4, b, d)),
        ("T2_3", |b, d| build_torus(2, 3, b, d)),
    ] {
        let (b, d) = random_rates(&mut r);
        cases.push((name.into(), build(b, d)?, all.clone()));
    }
    let mut worst = 0.0f64;
    let mut printed_refuted = Vec::new();
    for (_, g, kinds) in &cases {
        let (beta, delta) = g.constant_rates().expect("constant rates");
        for &kind in kinds {
            worst = worst.max(corollary_worst(kind, g, beta, delta, 16)?);
            // The printed transcription must be visibly wrong somewhere for
            // the ledger to have something to list.
            let u = Complex64::new(0.05, 0.03);
            let direct = det_complex(&pencil(&to_complex(&MetzlerAssembly::from_digraph(g)?.a_cal), u));
            let printed = corollary_eval_with(kind, g, beta, delta, u, Transcription::Printed)?;
            if rel(printed, direct) > REFUTED_ABOVE && !printed_refuted.contains(&kind) {
                printed_refuted.push(kind);
            }
        }
    }
    let ledger = discrepancy_ledger()?;
    let required = [
        "constant-rate-g-u2",
        "general-digraph-diagonal",
        "regular-c-u2",
        "regular-c-u3",
        "regular-adjacency-u",
    ];
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|id| !ledger.iter().any(|e| e.id == *id && e.verdict == Verdict::Corrected))
        .collect();
    let unsupported = ledger
        .iter()
        .filter(|e| match &e.evidence {
            Evidence::Numeric { printed_error, .. } => {
                e.verdict == Verdict::Corrected && *printed_error <= REFUTED_ABOVE
            }
            Evidence::Structural { .. } => false,
        })
        .count()
        + ledger.iter().filter(|e| e.verdict == Verdict::Unconfirmed).count();
    let passed = worst <= 1e-9 && missing.is_empty() && unsupported == 0 && printed_refuted.len() == all.len();
    outcome(
        passed,
        format!(
            "{} graphs x 16 points, worst relative error {worst:.1e} (tol 1e-9); printed forms refuted for {}/3 kinds; \
             ledger {} entries, missing {missing:?}, unsupported {unsupported}",
            cases.len(),
            printed_refuted.len(),
            ledger.len()
        ),
    )
}

fn closed_spectrum() -> Result<Outcome> {
    let mut r = rng(4);
    let builders: [(&str, Builder); 4] = [
        ("C4", |b, d| cycle(4, b, d)),
        ("C5", |b, d| cycle(5, b, d)),
        ("petersen", petersen),
        ("T2_3", |b, d| build_torus(2, 3, b, d)),
    ];
    let (mut worst, mut worst_matching) = (0.0f64, 0.0f64);
    for (_, build) in builders {
        for _ in 0..20 {
            let (beta, delta) = random_rates(&mut r);
            let g = build(beta, delta)?;
            let closed = metzler_spectrum_closed(&g, beta, delta)?.eigenvalues;
            let num = eigenvalues(&MetzlerAssembly::from_digraph(&g)?.a_cal)?.eigenvalues;
            worst = worst.max(hausdorff(&closed, &num));
            worst_matching = worst_matching.max(multiset_distance(&closed, &num));
        }
    }
    let mut worst_zero = 0.0f64;
    for _ in 0..20 {
        let beta: f64 = r.random_range(0.1..2.0);
        let roots = pair_block_roots(beta, 0.0, Transcription::Rederived);
        let want = [Complex64::new(0.0, 0.0), Complex64::new(-2.0 * beta, 0.0)];
        worst_zero = worst_zero.max(multiset_distance(&roots, &want));
    }
    outcome(
        worst <= 1e-6 && worst_zero <= 1e-10,
        format!(
            "80 (graph, rates) cases, worst Hausdorff {worst:.1e} (matching {worst_matching:.1e}, tol 1e-6); \
             zero-recovery roots off by {worst_zero:.1e} (tol 1e-10)"
        ),
    )
}

fn ihara() -> Result<Outcome> {
    let graphs = [
        ("K3", complete(3, 1.0, 1.0)?),
        ("K4", complete(4, 1.0, 1.0)?),
        ("C5", cycle(5, 1.0, 1.0)?),
        ("petersen", petersen(1.0, 1.0)?),
        ("T2_3", build_torus(2, 3, 1.0, 1.0)?),
    ];
    let (mut worst_forms, mut worst_series) = (0.0f64, 0.0f64);
    for (_, g) in &graphs {
        let edges = g.undirected_edges();
        let n = g.n_vertices();
        for k in 1..=8 {
            let u = 0.04 * k as f64 * if k % 2 == 0 { -1.0 } else { 1.0 };
            let v = ihara_zeta_recip(n, &edges, u)?;
            worst_forms = worst_forms.max((v.edge_form - v.bass_form).abs() / v.edge_form.abs());
        }
        let max_deg = (0..n).map(|v| g.out_degree(v)).max().unwrap_or(2);
        let u = 0.3 / (max_deg as f64 - 1.0);
        let s = backtrackless_series_check(n, &edges, u, 20)?;
        worst_series = worst_series.max((s.series - s.zeta).abs() / s.zeta.abs());
    }
    let k3 = complete(3, 1.0, 1.0)?;
    let v = ihara_zeta_recip(3, &k3.undirected_edges(), 0.3)?;
    let want = (1.0f64 - 0.3f64.powi(3)).powi(2);
    let k3_err = (v.edge_form - want).abs().max((v.bass_form - want).abs());
    outcome(
        worst_forms <= 1e-10 && k3_err <= 1e-12 && worst_series <= 1e-8,
        format!(
            "edge vs vertex form {worst_forms:.1e} (tol 1e-10); K3 at u=0.3 off by {k3_err:.1e} (tol 1e-12); \
             order-20 series {worst_series:.1e} (tol 1e-8)"
        ),
    )
}

fn walk() -> Result<Outcome> {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let d = 1 + i % 2;
        let side = r.random_range(3..=6);
        let coin: CMatrix = match i % 3 {
            0 => random_unitary_coin(d, &mut r),
            1 => random_stochastic_coin(d, &mut r),
            _ => {
                // General complex coin, scaled to operator norm at most 1.
                let a = CMatrix::from_fn(2 * d, 2 * d, |_, _| {
                    Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
                });
                let scale = a.norm();
                a.unscale(scale)
            }
        };
        let u = Complex64::from_polar(r.random_range(0.0..0.3), r.random_range(0.0..2.0 * PI));
        let (direct, fourier) = walk_zeta(&CoinWalk::new(d, side, coin)?, u)?;
        worst = worst.max((direct.value - fourier.value).norm());
    }
    let mut worst_closed = 0.0f64;
    for d in 1..=2 {
        for side in 3..=6 {
            for u in [
                Complex64::new(0.5, 0.0),
                Complex64::new(-0.3, 0.2),
                Complex64::new(0.1, -0.25),
            ] {
                let (direct, _) = walk_zeta(&CoinWalk::new(d, side, identity_coin(d))?, u)?;
                worst_closed = worst_closed.max((direct.value - identity_coin_zeta(d, side, u)).norm());
            }
        }
    }
    outcome(
        worst <= 1e-9 && worst_closed <= 1e-12,
        format!("50 random coins, direct vs Fourier {worst:.1e} (tol 1e-9); identity closed form {worst_closed:.1e} (tol 1e-12)"),
    )
}

fn torus_zeta() -> Result<Outcome> {
    let printed = TorusZetaForm {
        exponent: PrefactorExponent::TwoDMinusOne,
        ..TorusZetaForm::default()
    };
    let (mut worst, mut printed_best) = (0.0f64, f64::INFINITY);
    for (d, side) in [(1, 4), (1, 8), (2, 3)] {
        for (beta, delta, u) in [(1.0, 1.0, 0.1), (0.4, 0.7, 0.05), (1.3, 0.3, -0.08)] {
            let (direct, spectral) = metzler_zeta_finite(d, side, beta, delta, u)?;
            worst = worst.max(rel(spectral.value, direct.value));
            let (_, alt) = metzler_zeta_finite_with(d, side, beta, delta, u, printed)?;
            printed_best = printed_best.min(rel(alt.value, direct.value));
        }
    }
    let conv = limit_convergence_table(1, 1.0, 1.0, 0.1, &[4, 8, 16, 32])?;
    let diffs: Vec<f64> = conv.rows.iter().filter_map(|r| r.diff).collect();
    let diff_text: Vec<String> = diffs.iter().map(|d| format!("{d:.1e}")).collect();
    let shrink = diffs.windows(2).all(|w| w[1] <= w[0] / 10.0 || w[1] <= 1e-14);
    let mut quad = 0.0f64;
    for d in 1..=2 {
        let q64 = metzler_zeta_limit(d, 1.0, 1.0, 0.1, 64)?.log_value;
        let q128 = metzler_zeta_limit(d, 1.0, 1.0, 0.1, 128)?;
        quad = quad.max((q128.log_value - q64).norm());
        quad = quad.max(q128.convergence.unwrap_or(f64::INFINITY));
    }
    outcome(
        worst <= 1e-9 && printed_best > REFUTED_ABOVE && shrink && quad < 1e-10,
        format!(
            "finite direct vs spectral {worst:.1e} (tol 1e-9); exponent 2d-1 off by >= {printed_best:.1e}, d-1 kept; \
             differences at N=8,16,32 [{}] shrink {shrink}; Q=64 vs 128 {quad:.1e} (tol 1e-10)",
            diff_text.join(", ")
        ),
    )
}

fn decay() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut passed = true;
    let mut worst_gap = f64::NEG_INFINITY;
    let mut count = 0;
    for (_, g) in corpus().into_iter().filter(|(_, g)| g.n_vertices() <= 10) {
        let bound = decay_bound(&MetzlerAssembly::from_digraph(&g)?)?.bound;
        let exact = exact_decay(&g)?;
        worst_gap = worst_gap.max(bound - exact);
        passed &= exact >= bound - 1e-8;
        count += 1;
    }
    lines.push(format!(
        "{count} corpus graphs, max(bound - exact) {worst_gap:.1e} (tol 1e-8)"
    ));
    for (name, g) in [("single arc", single_arc(1.0, 1.0)?), ("C4", cycle(4, 0.2, 1.0)?)] {
        let exact = exact_decay(&g)?;
        match estimate_decay(&g, 10_000, 10.0, 0, DecayOptions::default())? {
            DecayOutcome::Estimate(e) => {
                let z = (e.gamma_hat - exact) / e.stderr;
                passed &= z.abs() <= 3.0;
                lines.push(format!(
                    "{name}: estimate {:.4} +- {:.4} vs exact {exact:.4} ({z:+.1} stderr)",
                    e.gamma_hat, e.stderr
                ));
            }
            DecayOutcome::NoDecayObserved { final_fraction } => {
                passed = false;
                lines.push(format!("{name}: no decay observed, final fraction {final_fraction:.3}"));
            }
        }
    }
    outcome(passed, lines.join("; "))
}

fn rectangular_swap() -> Result<Outcome> {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (rows, cols) = (r.random_range(1..=8), r.random_range(1..=12));
        let a = RMatrix::from_fn(rows, cols, |_, _| r.random_range(-0.5..0.5));
        let b = RMatrix::from_fn(cols, rows, |_, _| r.random_range(-0.5..0.5));
        let (x, y) = weinstein_aronszajn_check(&a, &b)?;
        worst = worst.max((x - y).abs() / x.abs().max(1.0));
    }
    outcome(
        worst <= 1e-10,
        format!("100 pairs up to 8x12, worst {worst:.1e} (tol 1e-10)"),
    )
}

fn reproducibility() -> Result<Outcome> {
    let commands: [&[&str]; 7] = [
        &["verify", "--graph", "random:n=6,seed=3", "--seed", "5"],
        &[
            "verify",
            "--graph",
            "torus:d=2,N=3",
            "--beta",
            "0.4",
            "--delta",
            "0.7",
            "--seed",
            "9",
        ],
        &[
            "zeta",
            "walk",
            "--d",
            "2",
            "--N",
            "3,4",
            "--coin",
            "random-unitary",
            "--u",
            "0.2",
            "--seed",
            "11",
        ],
        &["zeta", "metzler", "--d", "1", "--N", "4,8,16"],
        &[
            "sis",
            "--graph",
            "cycle:n=4",
            "--beta",
            "0.2",
            "--delta",
            "1",
            "--trials",
            "2000",
            "--seed",
            "42",
        ],
        &["spectrum", "--graph", "petersen", "--beta", "0.3", "--delta", "0.7"],
        &["ledger"],
    ];
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_metzler"))
            .args(args)
            .output()
            .map_err(|e| Error::InvalidInput(format!("cannot run the CLI: {e}")))
    };
    let mut differing = Vec::new();
    for args in commands {
        let (a, b) = (run(args)?, run(args)?);
        if a.stdout != b.stdout || a.stdout.is_empty() || a.status.code() != b.status.code() {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} commands run twice, differing: {differing:?}", commands.len()),
    )
}

type Criterion = (&'static str, Option<u64>, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("non-backtracking factorization", Some(5), factorization),
        ("factored determinant polynomial", Some(60), factored_polynomial),
        ("constant-rate determinant forms", Some(30), corollaries),
        ("closed-form regular spectrum", Some(30), closed_spectrum),
        ("Ihara zeta forms", Some(10), ihara),
        ("coin-walk zeta", Some(30), walk),
        ("torus Metzler zeta", Some(60), torus_zeta),
        ("SIS decay bound", Some(120), decay),
        ("rectangular determinant swap", Some(2), rectangular_swap),
        ("CLI reproducibility", None, reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_budget = budget.map_or(true, |b| elapsed <= Duration::from_secs(b));
        let budget_text = budget.map_or("no limit".to_string(), |b| format!("limit {b}s"));
        let (passed, summary) = match result {
            Ok(o) => (o.passed && in_budget, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!passed);
        println!(
            "AC{:<2} {} {name}: {summary} [{:.2}s, {budget_text}]",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
