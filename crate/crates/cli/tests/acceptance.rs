//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucoef::bounds::{
    bound_gamma, d2_lower_edge, eval_poly, g2_large, g2_small, g3_large, g3_small, lambda1, lambda_half, lambda_nu,
    ps_phi, solve_thresholds, PsPoint, Region, POLY_ALPHA1, POLY_ALPHA2, POLY_ALPHA_HALF, POLY_ALPHA_NU,
};
use ucoef::schwarz::{max_modulus, schur_to_coeffs, SchwarzCoeffs};
use ucoef::uclass::{
    build_function, lambda_star, membership_residual, RESIDUAL_ORDER, RESIDUAL_RADIUS, RESIDUAL_SAMPLES,
};
use ucoef::verify::{
    brute_force_gamma_max_with, cross_check_pipeline, random_schur, verify_sharpness, Sequential, DOMINANCE_TOL,
    SHARPNESS_SERIES_TOL, SHARPNESS_TOL,
};
use ucoef::{ClassParams, SearchConfig};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn params(a: f64, l: f64) -> ClassParams {
    ClassParams::new(a, l).unwrap()
}

/// `α_i = (i+1)/21`, `λ_j = λ⋆(α_i)·(j+1)/20`.
fn grid_20() -> Vec<ClassParams> {
    let mut v = Vec::with_capacity(400);
    for i in 0..20 {
        let a = (i + 1) as f64 / 21.0;
        let ls = lambda_star(a).unwrap();
        for j in 0..20 {
            v.push(params(a, (ls * (j + 1) as f64 / 20.0).min(ls)));
        }
    }
    v
}

fn roots_reproduction() -> Check {
    let start = Instant::now();
    let r = solve_thresholds().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_ucoef"))
        .args(["roots", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || format!("roots exited with {}", out.status))?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let printed = [
        ("alpha1", r.alpha1, 0.4825),
        ("alpha_half", r.alpha_half, 0.2512),
        ("alpha_nu", r.alpha_nu, 0.5337),
        ("alpha2", r.alpha2, 0.9555),
    ];
    for (i, (name, root, expected)) in printed.into_iter().enumerate() {
        ensure((root - expected).abs() < 5e-5, || format!("{name} = {root}"))?;
        ensure(doc[name].as_f64() == Some(root), || format!("{name} differs in CLI output"))?;
        ensure(r.residuals[i] < 1e-12, || format!("{name} residual {}", r.residuals[i]))?;
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("max residual {:.1e}, {elapsed:.1?}", r.residuals.iter().cloned().fold(0.0, f64::max)))
}

fn series_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let a = rng.gen_range(0.01..0.99);
        let l = lambda_star(a).unwrap() * rng.gen_range(0.001..=1.0);
        let w = schur_to_coeffs(&random_schur(&mut rng, 3));
        let d = cross_check_pipeline(&params(a, l), &w).map_err(|e| e.to_string())?;
        worst = worst.max(d);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("500 samples, max discrepancy {worst:.1e}, {elapsed:.1?}"))
}

fn dominance() -> Check {
    let start = Instant::now();
    let cfg = SearchConfig::default();
    let (mut runs, mut uncovered, mut worst) = (0, 0, f64::INFINITY);
    for p in grid_20() {
        for k in 1..=3 {
            if !bound_gamma(&p, k).map_err(|e| e.to_string())?.is_covered() {
                uncovered += 1;
                continue;
            }
            let rep = brute_force_gamma_max_with(&p, k, &cfg, &Sequential).map_err(|e| e.to_string())?;
            let gap = rep.gap.unwrap();
            ensure(gap >= -DOMINANCE_TOL, || {
                format!("k={k} at ({}, {}): empirical {} exceeds bound by {}", p.alpha(), p.lambda(), rep.empirical_max, -gap)
            })?;
            worst = worst.min(gap);
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "{runs} searches ({uncovered} uncovered gamma3 cells skipped), min gap {worst:.1e}, {elapsed:.1?} single-threaded"
    ))
}

fn sharpness() -> Check {
    let mut checked = 0;
    let (mut closed, mut series) = (0.0f64, 0.0f64);
    for p in grid_20() {
        for k in 1..=3 {
            let b = bound_gamma(&p, k).map_err(|e| e.to_string())?;
            let Some(value) = b.value else { continue };
            let s = verify_sharpness(&p, k).map_err(|e| format!("k={k} at ({}, {}): {e}", p.alpha(), p.lambda()))?;
            closed = closed.max((s.closed_form - value).abs());
            series = series.max((s.series - value).abs());
            checked += 1;
        }
    }
    ensure(closed <= SHARPNESS_TOL && series <= SHARPNESS_SERIES_TOL, || format!("errors {closed:e}, {series:e}"))?;
    Ok(format!("{checked} covered cells, closed-form error {closed:.1e}, series error {series:.1e}"))
}

fn continuity() -> Check {
    let r = solve_thresholds().map_err(|e| e.to_string())?;
    let (mut d2, mut d3) = (0.0f64, 0.0f64);
    for i in 0..200 {
        let a = r.alpha1 + (1.0 - r.alpha1) * i as f64 / 200.0;
        let p = params(a, lambda1(a).unwrap());
        d2 = d2.max((g2_small(&p) - g2_large(&p)).abs());
        let a = r.alpha_nu + (1.0 - r.alpha_nu) * i as f64 / 200.0;
        let p = params(a, lambda_nu(a).unwrap());
        d3 = d3.max((g3_small(&p) - g3_large(&p)).abs());
    }
    ensure(d2 < 1e-12 && d3 < 1e-12, || format!("jumps {d2:e}, {d3:e}"))?;
    Ok(format!("max jump {d2:.1e} at lambda1, {d3:.1e} at lambda_nu"))
}

fn threshold_signs() -> Check {
    let r = solve_thresholds().map_err(|e| e.to_string())?;
    let roots = [r.alpha1, r.alpha_half, r.alpha_nu, r.alpha2];
    let mut tested = 0;
    for i in 1..=500 {
        let a = i as f64 / 501.0;
        if roots.iter().any(|x| (a - x).abs() < 1e-9) {
            continue;
        }
        let ls = lambda_star(a).unwrap();
        let (l1, lh, ln) = (lambda1(a).unwrap(), lambda_half(a).unwrap(), lambda_nu(a).unwrap());
        ensure((l1 - ls).signum() == eval_poly(&POLY_ALPHA1, a).signum(), || format!("lambda1 at {a}"))?;
        ensure((lh - ls).signum() == eval_poly(&POLY_ALPHA_HALF, a).signum(), || format!("lambda_half at {a}"))?;
        ensure((ln - ls).signum() == eval_poly(&POLY_ALPHA_NU, a).signum(), || format!("lambda_nu at {a}"))?;
        ensure((lh <= ln) == (eval_poly(&POLY_ALPHA2, a) >= 0.0), || format!("lambda_half vs lambda_nu at {a}"))?;
        tested += 1;
    }
    Ok(format!("{tested} grid points, 4 comparisons each"))
}

fn ps_points() -> Vec<PsPoint> {
    let mut v = Vec::new();
    for i in 0..33 {
        let x = i as f64 / 32.0;
        let y = (i * 7 % 33) as f64 / 32.0;
        v.push(PsPoint::new(-0.5 + x, -1.0 + 2.0 * y));
        let mu = 0.5 + 1.5 * x;
        let lo = d2_lower_edge(mu);
        v.push(PsPoint::new(mu, lo + (1.0 - lo) * y));
        v.push(PsPoint::new(-2.0 + 4.0 * x, 1.0 + 3.0 * y));
    }
    v.push(PsPoint::new(2.0, 1.0));
    v
}

fn functional_dominance() -> Check {
    let points = ps_points();
    ensure(points.len() == 100 && points.iter().all(|p| p.region != Region::Uncovered), || "bad point set".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut omegas: Vec<SchwarzCoeffs> = (1..=3).map(|k| SchwarzCoeffs::unit(k, 3)).collect();
    omegas.extend((3..500).map(|_| schur_to_coeffs(&random_schur(&mut rng, 3))));
    let mut margin = f64::INFINITY;
    for pt in &points {
        let phi = ps_phi(pt).map_err(|e| e.to_string())?;
        for w in &omegas {
            let (c1, c2, c3) = (w.get(1), w.get(2), w.get(3));
            let psi = (c3 + c1 * c2 * pt.mu + c1 * c1 * c1 * pt.nu).norm();
            ensure(psi <= phi + 1e-9, || format!("psi {psi} > phi {phi} at ({}, {})", pt.mu, pt.nu))?;
            margin = margin.min(phi - psi);
        }
        if pt.region == Region::D3 {
            let psi = pt.nu.abs();
            let c1 = SchwarzCoeffs::unit(1, 3);
            let got = (c1.get(3) + c1.get(1) * c1.get(2) * pt.mu + c1.get(1).powu(3) * pt.nu).norm();
            ensure(got == psi && phi == psi, || format!("c1 extremal gives {got}, phi {phi}, nu {}", pt.nu))?;
        }
    }
    Ok(format!("100 points x 500 functions, min margin {margin:.1e}"))
}

fn membership() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let a = rng.gen_range(0.01..0.99);
        let p = params(a, lambda_star(a).unwrap() * rng.gen_range(0.001..=1.0));
        let w = schur_to_coeffs(&random_schur(&mut rng, 3));
        let f = build_function(&p, &w, RESIDUAL_ORDER).map_err(|e| e.to_string())?;
        let res = membership_residual(&f, &p, RESIDUAL_RADIUS, RESIDUAL_SAMPLES).map_err(|e| e.to_string())?;
        let cap = p.lambda() * max_modulus(&w, RESIDUAL_RADIUS, RESIDUAL_SAMPLES);
        ensure(res <= cap + 5e-3, || format!("residual {res} above {cap} at ({}, {})", p.alpha(), p.lambda()))?;
        worst = worst.max(res - cap);
    }
    Ok(format!("50 samples, max excess {worst:.1e}"))
}

fn proof_constants() -> Check {
    let r = solve_thresholds().map_err(|e| e.to_string())?;
    let g = |a: f64| (3.0 * (1.0 - a) * (3.0 - a)).sqrt() / (2.0 - a);
    let n = 100_000;
    let (arg, max) = (0..=n)
        .map(|i| r.alpha_nu + (r.alpha2 - r.alpha_nu) * i as f64 / n as f64)
        .map(|a| (a, g(a)))
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    ensure(arg == r.alpha_nu, || format!("max attained at {arg}, not alpha_nu"))?;
    let cap = format!("{max:.4}");
    ensure(cap == "1.2667", || format!("max = {max}"))?;
    let m = 1.2667f64;
    let edge = 4.0 / 27.0 * (1.0 + m).powi(3) - (1.0 + m);
    let edge_s = format!("{edge:.3}");
    ensure(edge_s == "-0.541", || format!("edge = {edge}"))?;
    Ok(format!("max {max:.6} at alpha_nu, edge value {edge:.6}"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ucoef")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("ucoef-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let commands: [&[&str]; 4] = [
        &["verify", "--alpha", "0.6", "--lambda", "0.5", "--k", "2", "--json", "--random-samples", "300", "--seed", "5"],
        &["verify", "--alpha", "0.3", "--lambda", "0.2", "--k", "3"],
        &["regimes", "--alpha-steps", "40", "--lambda-steps", "40"],
        &["regimes", "--alpha-steps", "25", "--lambda-steps", "30", "--linear", "--json"],
    ];
    let mut compared = 0;
    for (n, cmd) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "4", "4"] {
            let mut args = cmd.to_vec();
            args.extend(["--threads", threads]);
            outputs.push(run_cli(&args)?);
            let path = dir.join(format!("{n}-{threads}.out"));
            let path_s = path.to_string_lossy().into_owned();
            let mut args = args.clone();
            args.extend(["--out", path_s.as_str()]);
            run_cli(&args)?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{cmd:?} output depends on the run"))?;
        compared += outputs.len();
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{compared} outputs across threads 1, 2, 4 byte-identical"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("roots reproduction", roots_reproduction),
        ("series vs closed form", series_equivalence),
        ("dominance", dominance),
        ("sharpness", sharpness),
        ("regime continuity", continuity),
        ("threshold equivalence", threshold_signs),
        ("Prokhorov-Szynal consistency", functional_dominance),
        ("membership residual", membership),
        ("proof constants", proof_constants),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
