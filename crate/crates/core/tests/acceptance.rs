//! Acceptance suite: nine criteria, each printed as one PASS/FAIL line.
//! Runs without the libtest harness so the lines are always visible.

#![allow(clippy::needless_range_loop)]

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use sqc::analysis::{analyze, compute_alpha_eta, AnalysisOptions, Verdict};
use sqc::cli::{generate_example, run, to_json_string, ExampleName, Mode, ProblemInput};
use sqc::cones::{moreau_decompose, project_lorentz, ConeSpec};
use sqc::copositivity::{lorentz_copositive, lorentz_floor, sampled_copositive, CopositivityStatus};
use sqc::linalg::{spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};
use sqc::oracle::{
    geodesic_quasiconvexity_test, pairwise_test, sublevel_convexity_test, Counterexample, LevelSelection,
    OracleOptions, OracleOutcome,
};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: sqc::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_symmetric(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = scale * common::gaussian(rng, 1)[0];
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

fn oracle(samples: usize, seed: u64) -> OracleOptions {
    OracleOptions {
        samples,
        seed,
        ..OracleOptions::default()
    }
}

/// Criterion 1: Moreau decomposition identities for the orthant and the Lorentz cone.
fn moreau_suite() -> Check {
    let mut rng = common::rng(101);
    let mut count = 0;
    for n in [2, 3, 5, 8] {
        for (k, member) in [
            (ConeSpec::orthant(n), common::in_orthant as fn(&[f64], f64) -> bool),
            (ConeSpec::lorentz(n), common::in_lorentz),
        ] {
            for _ in 0..10_000 {
                let x: Vec<f64> = common::gaussian(&mut rng, n);
                let p = lib(moreau_decompose(&k, &x))?;
                let recon = x
                    .iter()
                    .zip(p.plus.iter().zip(&p.minus))
                    .map(|(xi, (a, b))| (xi - (a - b)).abs())
                    .fold(0.0, f64::max);
                let orth = common::dot(&p.plus, &p.minus).abs();
                ensure(recon <= 1e-9 && orth <= 1e-9, || format!("{} n={n} x={x:?}: recon {recon:e}, <+,-> {orth:e}", k.name()))?;
                // both cones are self-dual
                ensure(member(&p.plus, 1e-9) && member(&p.minus, 1e-9), || {
                    format!("{} n={n} x={x:?}: parts leave the cone", k.name())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} decompositions"))
}

/// Criterion 2: Closed-form Lorentz projection against descent on the reduced problem.
fn projection_equivalence() -> Check {
    let mut rng = common::rng(202);
    let mut worst = 0.0f64;
    for n in [3, 5] {
        for _ in 0..500 {
            let x: Vec<f64> = common::gaussian(&mut rng, n).iter().map(|v| 2.0 * v).collect();
            let p = project_lorentz(&x);
            let r = common::lorentz_projection_by_descent(&x);
            let d = p.plus.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            worst = worst.max(d);
            ensure(d <= 1e-6, || format!("n={n} x={x:?}: distance {d:e}"))?;
        }
    }
    Ok(format!("max deviation {worst:.2e}"))
}

/// Criterion 3: Exact Lorentz copositivity against sampled refutation, plus concavity
/// of `g(ρ) = λ_min(A − ρJ)`.
fn lorentz_copositivity() -> Check {
    let mut rng = common::rng(303);
    let (mut cop, mut not, mut inc) = (0, 0, 0);
    for n in [3, 5] {
        for i in 0..200 {
            let rows = match i % 3 {
                // PSD plus a positive multiple of J: copositive by construction
                0 => {
                    let g = random_symmetric(&mut rng, n, 1.0);
                    let rho = rng.random_range(0.0..2.0);
                    let mut a = vec![vec![0.0; n]; n];
                    for r in 0..n {
                        for c in 0..n {
                            a[r][c] = (0..n).map(|k| g[r][k] * g[c][k]).sum::<f64>() / n as f64;
                        }
                        a[r][r] += if r == 0 { rho } else { -rho };
                    }
                    a
                }
                1 => random_symmetric(&mut rng, n, 1.0),
                _ => {
                    let mut a = random_symmetric(&mut rng, n, 0.5);
                    let shift = rng.random_range(-0.5..2.5);
                    for (r, row) in a.iter_mut().enumerate() {
                        row[r] += shift;
                    }
                    a
                }
            };
            let a = lib(SymmetricMatrix::from_rows(&rows))?;
            let exact = lib(lorentz_copositive(&a, 1e-9))?;
            let refuter = lib(sampled_copositive(&a, &ConeSpec::lorentz(n), 2000, 1000 + i as u64, 1e-9))?;
            let refuted = refuter
                .witness
                .as_ref()
                .is_some_and(|w| common::in_lorentz(w, 1e-9) && common::quad(&rows, w) < -1e-9 * common::dot(w, w));
            match exact.status {
                CopositivityStatus::Copositive => {
                    cop += 1;
                    ensure(!refuted, || format!("n={n} #{i}: COPOSITIVE but the refuter holds a witness"))?;
                    let (m, _) = common::lorentz_cap_min(&rows, 4000, 7 + i as u64);
                    ensure(m >= -1e-8, || format!("n={n} #{i}: COPOSITIVE but sampled min {m:e}"))?;
                }
                CopositivityStatus::NotCopositive => {
                    not += 1;
                    let w = exact.witness.as_ref().ok_or("NOT_COPOSITIVE without witness")?;
                    let val = common::quad(&rows, w) / common::dot(w, w);
                    ensure(common::in_lorentz(w, 1e-9) && val < -1e-9, || {
                        format!("n={n} #{i}: witness fails re-verification (value {val:e})")
                    })?;
                }
                CopositivityStatus::Inconclusive => inc += 1,
            }
        }
    }
    // concavity spot-check with a test-side eigen-solver
    let mut triples = 0;
    for _ in 0..100 {
        let n = 3 + rng.random_range(0..3);
        let a = lib(SymmetricMatrix::from_rows(&random_symmetric(&mut rng, n, 1.0)))?;
        let (r1, r2) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let t: f64 = rng.random();
        let rm = t * r1 + (1.0 - t) * r2;
        let g = |rho: f64| lib(lorentz_floor(&a, rho));
        let (g1, g2, gm) = (g(r1)?, g(r2)?, g(rm)?);
        ensure(gm >= t * g1 + (1.0 - t) * g2 - 1e-9, || format!("concavity fails: {gm} < {t}·{g1} + (1−t)·{g2}"))?;
        let shifted = a.add_scaled(-rm, &SymmetricMatrix::lorentz_j(n));
        let independent = common::jacobi_eigenvalues(&shifted.to_rows())[0];
        ensure((independent - gm).abs() <= 1e-9, || format!("g(ρ) {gm} vs Jacobi {independent}"))?;
        triples += 1;
    }
    Ok(format!("{cop} copositive, {not} refuted with witness, {inc} inconclusive; {triples} concavity triples"))
}

/// Criterion 4: `α = 1/2` on the Lorentz cone with `vⁱ = eⁱ`.
fn alpha_reproduction() -> Check {
    let mut out = Vec::new();
    for n in [3, 5, 8] {
        let mut d: Vec<f64> = (0..n).map(|i| 1.0 + 0.4 * i as f64 / (n - 1) as f64).collect();
        d[0] = 0.0;
        let dec = lib(spectral_decompose(&lib(SymmetricMatrix::diag(&d))?, DEFAULT_GAP_TOL))?;
        let ae = lib(compute_alpha_eta(&dec, &ConeSpec::lorentz(n), &AnalysisOptions::default()))?;
        ensure((ae.alpha - 0.5).abs() <= 1e-6, || format!("n={n}: alpha = {}", ae.alpha))?;
        out.push(format!("n={n}: {:.12}", ae.alpha));
    }
    Ok(out.join(", "))
}

/// Criterion 5: Two-level matrices on the Lorentz cone: verdict equals `v ∈ ℒ ∪ −ℒ`,
/// confirmed by the geodesic oracle.
fn two_eigenvalue_characterization() -> Check {
    let mut rng = common::rng(505);
    let (mut cq, mut not) = (0, 0);
    let mut max_index = 0;
    for i in 0..200u64 {
        let n = 3 + (i % 3) as usize;
        let v = common::unit(&mut rng, n);
        let lambda = rng.random_range(-2.0..2.0);
        let mu = lambda + rng.random_range(0.2..3.0);
        let a = lib(SymmetricMatrix::two_level(&v, lambda, mu))?;
        let k = ConeSpec::lorentz(n);
        let member = v[0].abs() >= common::norm(&v[1..]);
        let report = analyze(&a, &k, &AnalysisOptions::default().with_seed(i));
        let expect = if member { Verdict::CertifiedQuasiconvex } else { Verdict::CertifiedNot };
        ensure(report.verdict == expect, || {
            format!("#{i} v={v:?}: verdict {} by {:?}, membership says {expect}", report.verdict, report.decided_by)
        })?;
        let opts = oracle(100_000, 9000 + i);
        let out = lib(geodesic_quasiconvexity_test(&a, &k, &opts))?;
        if member {
            cq += 1;
            ensure(!out.is_violated(), || format!("#{i}: oracle violation on a certified instance"))?;
        } else {
            not += 1;
            let cx = out.counterexample.as_ref().ok_or_else(|| format!("#{i}: no counterexample in 1e5 samples"))?;
            ensure(lib(cx.verify(&a, &k, opts.tol))?, || format!("#{i}: counterexample fails re-verification"))?;
            let (x, y) = cx.endpoints();
            ensure(common::geodesic_excess(&a.to_rows(), x, y, 2048) > 0.0, || format!("#{i}: test-side slerp sees no bump"))?;
            max_index = max_index.max(out.sample_index.unwrap_or(0));
        }
    }
    Ok(format!("{cq} quasi-convex, {not} refuted (latest counterexample at sample {max_index})"))
}

/// Criterion 6: Generator examples certify and survive 10⁵ oracle samples.
fn sufficient_soundness() -> Check {
    let names = [
        ExampleName::CounterggOrthant,
        ExampleName::CounterggLorentz,
        ExampleName::AlphaEtaLorentz,
        ExampleName::Householder,
    ];
    let mut runs = 0;
    for name in names {
        for n in [3, 4, 5] {
            let p = lib(generate_example(name, n, 42))?;
            let r = analyze(&p.matrix, &p.cone, &p.options);
            ensure(r.verdict == Verdict::CertifiedQuasiconvex, || {
                format!("{name} n={n}: {} by {:?}", r.verdict, r.decided_by)
            })?;
            let out = lib(geodesic_quasiconvexity_test(&p.matrix, &p.cone, &oracle(100_000, 600 + n as u64)))?;
            ensure(!out.is_violated(), || format!("{name} n={n}: oracle violation {:?}", out.counterexample))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} instances certified, no violation in 1e5 samples each"))
}

/// Both directions of the geodesic/sublevel correspondence on one outcome.
fn cross_consistent(a: &SymmetricMatrix, k: &ConeSpec, cx: &Counterexample, tol: f64) -> std::result::Result<(), String> {
    let sub = cx.to_sublevel(a).ok_or("no sublevel form")?;
    let geo = cx.to_geodesic(a).ok_or("no geodesic form")?;
    ensure(lib(sub.verify(a, k, tol))?, || "sublevel form fails".into())?;
    ensure(lib(geo.verify(a, k, tol))?, || "geodesic form fails".into())
}

/// Criterion 7: λ₂ strictly inside the cap range is refuted.
fn necessary_refutation() -> Check {
    let mut rng = common::rng(707);
    let k = ConeSpec::lorentz(3);
    let (mut by_analysis, mut checked) = (0, 0);
    for i in 0..100u64 {
        let t = rng.random_range(0.05..0.45);
        let mut rows = common::diag(&[0.0, t, 1.0]);
        let e = random_symmetric(&mut rng, 3, 0.005);
        for r in 0..3 {
            for c in 0..3 {
                rows[r][c] += e[r][c];
            }
        }
        let a = lib(SymmetricMatrix::from_rows(&rows))?;
        let report = analyze(&a, &k, &AnalysisOptions::default().with_seed(i));
        let opts = oracle(10_000, 7000 + i);
        let geo = lib(geodesic_quasiconvexity_test(&a, &k, &opts))?;
        let pair_level = lib(sublevel_convexity_test(&a, &k, &LevelSelection::PairMaximum, &opts))?;
        let sweep = lib(sublevel_convexity_test(&a, &k, &LevelSelection::Sweep(16), &opts))?;
        if report.verdict == Verdict::CertifiedNot {
            by_analysis += 1;
        } else {
            ensure(geo.is_violated() || sweep.is_violated(), || {
                format!("#{i} t={t}: {} and no oracle violation", report.verdict)
            })?;
        }
        if let Some(cx) = &geo.counterexample {
            // the pair-level sublevel test sees the same pair at c = max(q(x), q(y))
            let sub = pair_level.counterexample.as_ref().ok_or_else(|| format!("#{i}: geodesic violation without sublevel match"))?;
            ensure(sub.endpoints() == cx.endpoints(), || format!("#{i}: sublevel matched a different pair"))?;
            cross_consistent(&a, &k, cx, opts.tol).map_err(|e| format!("#{i}: {e}"))?;
            checked += 1;
        }
        for cx in [&pair_level.counterexample, &sweep.counterexample].into_iter().flatten() {
            cross_consistent(&a, &k, cx, opts.tol).map_err(|e| format!("#{i}: {e}"))?;
        }
    }
    Ok(format!("{by_analysis}/100 refuted by analysis; {checked} geodesic violations cross-checked"))
}

/// Criterion 8: Pairwise, sublevel and geodesic tests agree instance-wise.
fn equivalence_battery() -> Check {
    let mut rng = common::rng(808);
    let (mut violated, mut clean) = (0, 0);
    for i in 0..100u64 {
        let n = 3 + (i % 3) as usize;
        let k = if i % 2 == 0 { ConeSpec::lorentz(n) } else { ConeSpec::orthant(n) };
        let a = match i % 4 {
            0 => lib(SymmetricMatrix::from_rows(&random_symmetric(&mut rng, n, 1.0)))?,
            1 => {
                // low eigenvector inside the cone: quasi-convex
                let mut v = common::unit(&mut rng, n);
                v.iter_mut().for_each(|x| *x = x.abs() * 0.3);
                v[0] = 1.0;
                lib(SymmetricMatrix::two_level(&v, 0.0, 1.0))?
            }
            2 => {
                let v = common::unit(&mut rng, n);
                lib(SymmetricMatrix::two_level(&v, -1.0, 1.0))?
            }
            _ => {
                let mut d: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
                d[0] = -0.5;
                lib(SymmetricMatrix::diag(&d))?
            }
        };
        let opts = oracle(10_000, 8000 + i);
        let outs: [(&str, OracleOutcome); 3] = [
            ("geodesic", lib(geodesic_quasiconvexity_test(&a, &k, &opts))?),
            ("pairwise", lib(pairwise_test(&a, &k, &opts))?),
            ("sublevel", lib(sublevel_convexity_test(&a, &k, &LevelSelection::PairMaximum, &opts))?),
        ];
        let found: Vec<&str> = outs.iter().filter(|(_, o)| o.is_violated()).map(|(n, _)| *n).collect();
        ensure(found.is_empty() || found.len() == 3, || format!("#{i} {}: only {found:?} found a violation", k.name()))?;
        for (name, o) in &outs {
            if let Some(cx) = &o.counterexample {
                ensure(lib(cx.verify(&a, &k, opts.tol))?, || format!("#{i}: {name} counterexample fails"))?;
                let p = cx.to_pairwise(&a).ok_or_else(|| format!("#{i}: {name} has no pairwise form"))?;
                ensure(p.margin() > 0.0, || format!("#{i}: {name} pairwise form has margin {}", p.margin()))?;
                cross_consistent(&a, &k, cx, opts.tol).map_err(|e| format!("#{i} {name}: {e}"))?;
            }
        }
        if found.is_empty() {
            clean += 1;
        } else {
            violated += 1;
        }
    }
    Ok(format!("{violated} instances refuted by all three tests, {clean} clean for all three"))
}

fn suite_reports() -> std::result::Result<Vec<String>, String> {
    let mut problems: Vec<ProblemInput> = Vec::new();
    for name in ExampleName::ALL {
        problems.push(lib(generate_example(name, 4, 42))?);
    }
    let mut rng = common::rng(909);
    for i in 0..6 {
        let n = 3 + i % 2;
        problems.push(ProblemInput {
            matrix: lib(SymmetricMatrix::from_rows(&random_symmetric(&mut rng, n, 1.0)))?,
            cone: if i % 2 == 0 { ConeSpec::lorentz(n) } else { ConeSpec::orthant(n) },
            options: AnalysisOptions::default(),
            metadata: None,
            warnings: Vec::new(),
        });
    }
    let mut out = Vec::new();
    for p in &mut problems {
        p.options.oracle.samples = 2000;
        for mode in [Mode::Analyze, Mode::Oracle, Mode::Both] {
            out.push(lib(to_json_string(&run(p, mode)))?);
        }
    }
    Ok(out)
}

/// Criterion 9: Identical inputs and seeds give byte-identical reports.
fn determinism() -> Check {
    let first = suite_reports()?;
    let second = suite_reports()?;
    ensure(first == second, || "reports differ between runs".into())?;
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{} reports, {bytes} bytes identical", first.len()))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() {
    // the libtest protocol passes --list when enumerating tests
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 9] = [
        ("Moreau suite", Duration::from_secs(5), moreau_suite),
        ("projection oracle equivalence", Duration::from_secs(30), projection_equivalence),
        ("Lorentz copositivity", Duration::from_secs(60), lorentz_copositivity),
        ("alpha reproduction", Duration::from_secs(10), alpha_reproduction),
        ("two-eigenvalue Lorentz characterization", Duration::from_secs(300), two_eigenvalue_characterization),
        ("sufficient-condition soundness", Duration::from_secs(300), sufficient_soundness),
        ("necessary-condition refutation", Duration::from_secs(300), necessary_refutation),
        ("equivalence battery", Duration::from_secs(600), equivalence_battery),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over the {:.0} s budget", limit.as_secs_f64())),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({:.2} s) {detail}", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({:.2} s) {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
