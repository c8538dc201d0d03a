//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::time::{Duration, Instant};

use chm_core::analysis::{aligned_block_positions, census, real_block_search, RealBlock};
use chm_core::families::{
    all_symmetric_params, build_bjorck, build_fourier, build_h2, build_hermitian, derive_h2, first_valid_szollosi,
    hermitian_theta_min, H2Params, HermitianParams,
};
use chm_core::monomial::{MonomialPair, MonomialUnitary};
use chm_core::mub::{
    exclusion_verdict, is_mub_set, verify_eighteen_contradiction, verify_symmetric_minus_one, EighteenGrid,
    VerdictStatus,
};
use chm_core::search::{seek_trio, SearchConfig};
use chm_core::{validate_chm, Chm, Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn random_h2(rng: &mut ChaCha8Rng) -> H2Params {
    let mut p = H2Params::from_arg(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
    let [s2, s3, s4] = H2Params::all_signs()[rng.gen_range(0..8)];
    (p.s2, p.s3, p.s4) = (s2, s3, s4);
    p
}

fn random_copy(h: &Chm, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<Chm, String> {
    let pair = MonomialPair {
        left: MonomialUnitary::random(h.dim(), rng),
        right: MonomialUnitary::random(h.dim(), rng),
    };
    let m = pair.apply(h.matrix()).map_err(|e| e.to_string())?;
    validate_chm(m, tol).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hermitian_samples(n: usize) -> Vec<f64> {
    let t0 = hermitian_theta_min();
    (0..n)
        .map(|k| {
            let s = k as f64 / (n - 1) as f64;
            let t = t0 + s * (PI - t0);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .collect()
}

fn szollosi_alphas() -> [C64; 5] {
    [
        C64::new(0.0, 0.0),
        C64::new(0.3, 0.2),
        C64::new(0.5, 0.0),
        C64::new(-0.4, 0.6),
        C64::new(0.1, -0.7),
    ]
}

fn c1(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut uni, mut orth, mut cons) = (0.0_f64, 0.0_f64, 0.0_f64);
    for k in 0..100 {
        let p = random_h2(&mut rng);
        let h = build_h2(&p, tol).map_err(|e| format!("draw {k}: {e}"))?;
        let cert = h.certificate();
        uni = uni.max(cert.unimodular_dev);
        orth = orth.max(cert.orthogonal_dev);
        cons = cons.max(derive_h2(&p, tol).map_err(|e| e.to_string())?.consistency);
    }
    ensure(uni <= 1e-9 && orth <= 1e-8 && cons < 1e-9, || {
        format!("unimodular {uni:.2e}, orthogonal {orth:.2e}, consistency {cons:.2e}")
    })?;
    Ok(format!("100 draws; max unimodular {uni:.1e}, orthogonal {orth:.1e}, consistency {cons:.1e}"))
}

/// Row pairs `i<j` and column pairs `k<l` with `(j-i)(l-k) = d/2 mod d`.
fn congruence_oracle(d: usize) -> usize {
    let mut n = 0;
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                for l in k + 1..d {
                    n += ((j - i) * (l - k) % d == d / 2) as usize;
                }
            }
        }
    }
    n
}

fn c2(tol: &Tolerances) -> Outcome {
    let f = build_fourier(6).map_err(|e| e.to_string())?;
    let count = census(&f, tol).count;
    let oracle = congruence_oracle(6);
    ensure(count == 45 && oracle == 45, || format!("census {count}, oracle {oracle}"))?;
    Ok(format!("census {count} = oracle {oracle}"))
}

fn c3(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let aligned = aligned_block_positions();
    let mut nine = 0;
    for k in 0..100 {
        let h = build_h2(&random_h2(&mut rng), tol).map_err(|e| e.to_string())?;
        let c = census(&h, tol);
        nine += (c.count == 9) as usize;
        ensure(aligned.iter().all(|p| c.contains(p)), || format!("draw {k} misses an aligned block"))?;
    }
    ensure(nine >= 95, || format!("only {nine}/100 have census 9"))?;
    Ok(format!("{nine}/100 census 9; aligned blocks present in all"))
}

fn c4(tol: &Tolerances) -> Outcome {
    let b = census(&build_bjorck().map_err(|e| e.to_string())?, tol).count;
    ensure(b > 9, || format!("bjorck census {b}"))?;
    let mut herm_min = usize::MAX;
    for theta in hermitian_samples(20) {
        let h = build_hermitian(&HermitianParams::new(theta, 1), tol).map_err(|e| format!("theta {theta}: {e}"))?;
        herm_min = herm_min.min(census(&h, tol).count);
    }
    ensure(herm_min > 18, || format!("hermitian min census {herm_min}"))?;
    let mut sz_min = usize::MAX;
    for alpha in szollosi_alphas() {
        let (_, h) = first_valid_szollosi(alpha, tol).map_err(|e| format!("alpha {alpha}: {e}"))?;
        sz_min = sz_min.min(census(&h, tol).count);
    }
    ensure(sz_min > 9, || format!("szollosi min census {sz_min}"))?;
    Ok(format!("bjorck {b}; hermitian min {herm_min} over 20; szollosi min {sz_min} over 5"))
}

fn c5(tol: &Tolerances) -> Outcome {
    let rep = verify_eighteen_contradiction(&EighteenGrid::default(), tol).map_err(|e| e.to_string())?;
    for c in &rep.candidates {
        ensure(c.equation_residuals.iter().all(|&r| r < 1e-6), || format!("candidate {c:?}"))?;
        ensure(c.m66_residual < 1e-6, || format!("m66 residual {:.2e} at {c:?}", c.m66_residual))?;
    }
    ensure(rep.violations == 0, || format!("{} violations", rep.violations))?;
    Ok(format!(
        "64^3 x 8 grid: {} candidates, 0 violations, max |m66+1| {:.1e}, {} degenerate points skipped",
        rep.candidates.len(),
        rep.max_m66_residual,
        rep.skipped_degenerate
    ))
}

fn c6(tol: &Tolerances) -> Outcome {
    let rep = verify_symmetric_minus_one(50, 106, tol).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for c in &rep.instances {
        ensure(c.error.is_none(), || format!("{c:?}"))?;
        ensure(c.residual_34 < 1e-9 && c.residual_43 < 1e-9 && c.symmetry_residual < 1e-9, || {
            format!("{c:?}")
        })?;
        ensure(
            c.verdict.is_some_and(|s| s != VerdictStatus::NotExcludedByTheseCriteria),
            || format!("{c:?}"),
        )?;
        worst = worst.max(c.residual_34).max(c.symmetry_residual);
    }
    Ok(format!("{} instances; worst residual {worst:.1e}", rep.instances.len()))
}

fn c7_fixtures(tol: &Tolerances) -> Result<Vec<(String, Chm)>, String> {
    let e = |e: chm_core::ChmError| e.to_string();
    let mut v = vec![
        ("F6".to_string(), build_fourier(6).map_err(e)?),
        ("C6".to_string(), build_bjorck().map_err(e)?),
    ];
    for theta in hermitian_samples(5) {
        v.push((format!("hermitian({theta:.3})"), build_hermitian(&HermitianParams::new(theta, 1), tol).map_err(e)?));
    }
    for alpha in szollosi_alphas() {
        v.push((format!("szollosi({alpha})"), first_valid_szollosi(alpha, tol).map_err(e)?.1));
    }
    for p in all_symmetric_params() {
        v.push((format!("symmetric({:?},{})", p.phi_sign, p.fixed_point), p.build(tol).map_err(e)?));
    }
    Ok(v)
}

fn c7(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut fixtures = c7_fixtures(tol)?;
    let excluded_count = fixtures.len();
    let generic = build_h2(&H2Params::from_arg(0.7, 1.3, 0.4), tol).map_err(|e| e.to_string())?;
    fixtures.push(("generic h2".to_string(), generic));
    for (k, (name, h)) in fixtures.iter().enumerate() {
        let v = exclusion_verdict(h, tol).map_err(|e| e.to_string())?;
        if k < excluded_count {
            ensure(v.is_excluded(), || format!("{name} not excluded"))?;
        } else {
            ensure(v.status == VerdictStatus::NotExcludedByTheseCriteria, || format!("{name}: {:?}", v.status))?;
        }
        for _ in 0..50 {
            let w = exclusion_verdict(&random_copy(h, &mut rng, tol)?, tol).map_err(|e| e.to_string())?;
            ensure(w.status == v.status, || format!("{name}: {:?} became {:?}", v.status, w.status))?;
        }
    }
    Ok(format!("{excluded_count} excluded fixtures, generic h2 not excluded, stable under 50 equivalences each"))
}

fn c8(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut p = random_h2(&mut rng);
    p.z1 = C64::new(-1.0, 0.0);
    let h = build_h2(&p, tol).map_err(|e| e.to_string())?;
    let n = real_block_search(&h, 2, 3, tol).map_err(|e| e.to_string())?.blocks.len();
    ensure(n > 0, || "no (2,3) block with z1 = -1".to_string())?;
    let f = build_fourier(6).map_err(|e| e.to_string())?;
    let fb = real_block_search(&f, 2, 3, tol).map_err(|e| e.to_string())?;
    let want = RealBlock {
        rows: vec![0, 3],
        cols: vec![0, 2, 4],
    };
    ensure(fb.blocks.contains(&want), || "F6 block rows {0,3} x {0,2,4} missing".to_string())?;
    for k in 0..100 {
        let g = build_h2(&random_h2(&mut rng), tol).map_err(|e| e.to_string())?;
        for (r, c) in [(2, 3), (3, 2)] {
            let b = real_block_search(&g, r, c, tol).map_err(|e| e.to_string())?;
            ensure(b.blocks.is_empty(), || format!("generic draw {k} has a ({r},{c}) block"))?;
        }
    }
    Ok(format!("z1=-1: {n} (2,3) blocks; F6 block found; 100 generic draws clean"))
}

fn c9(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut fixtures = c7_fixtures(tol)?;
    fixtures.push((
        "generic h2".to_string(),
        build_h2(&H2Params::from_arg(0.7, 1.3, 0.4), tol).map_err(|e| e.to_string())?,
    ));
    for (name, h) in &fixtures {
        let base = census(h, tol).count;
        for _ in 0..100 {
            let c = census(&random_copy(h, &mut rng, tol)?, tol).count;
            ensure(c == base, || format!("{name}: {base} became {c}"))?;
        }
    }
    Ok(format!("{} fixtures x 100 equivalences", fixtures.len()))
}

fn c10(tol: &Tolerances) -> Outcome {
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for d in [2, 3] {
        let cfg = SearchConfig {
            dim: d,
            restarts: 8,
            max_iters: 10_000,
            ..SearchConfig::default()
        };
        let res = seek_trio(&cfg).map_err(|e| e.to_string())?;
        let (_, rep) = is_mub_set(&res.best_bases, tol).map_err(|e| e.to_string())?;
        ensure((rep.max_defect - res.best_defect).abs() < 1e-12, || "defect mismatch".to_string())?;
        parts.push(format!("d={d} best {:.2e}", res.best_defect));
        if res.best_defect.is_nan() || res.best_defect >= 1e-8 {
            failures.push(format!("d={d} best defect {:.3e} >= 1e-8", res.best_defect));
        }
    }
    let cfg = SearchConfig {
        dim: 6,
        restarts: 32,
        max_iters: 10_000,
        ..SearchConfig::default()
    };
    let res = seek_trio(&cfg).map_err(|e| e.to_string())?;
    parts.push(format!("d=6 best {:.3e} (report only)", res.best_defect));
    if failures.is_empty() {
        Ok(parts.join("; "))
    } else {
        Err(format!("{} [{}]", failures.join("; "), parts.join("; ")))
    }
}

fn cli_run(args: &[&str], log: &Path) -> (i32, String) {
    let mut argv = vec!["chm".to_string(), "--run-log".to_string(), log.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = chm_cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn strip_timestamp(line: &str) -> Result<serde_json::Value, String> {
    let mut v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("record is not an object")?.remove("timestamp");
    Ok(v)
}

fn c11(_tol: &Tolerances) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).display().to_string();
    let (f6, dph, cen, exc, eig, sym, sea, tra, scn) = (
        p("f6.json"),
        p("dephased.json"),
        p("census.json"),
        p("verdict.json"),
        p("eighteen.json"),
        p("symmetric.json"),
        p("search.json"),
        p("trace.csv"),
        p("scan.csv"),
    );
    let cases: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["gen", "h2", "--theta", "0.7", "--phi", "1.3", "--z1-arg", "0.4", "--out", &f6], vec![&f6]),
        (vec!["census", "--in", &f6, "--out", &cen], vec![&cen]),
        (vec!["exclude", "--in", &f6, "--out", &exc], vec![&exc]),
        (vec!["dephase", "--in", &f6, "--out", &dph], vec![&dph]),
        (vec!["verify", "eighteen", "--resolution", "10", "--out", &eig], vec![&eig]),
        (vec!["--seed", "5", "verify", "symmetric", "--samples", "3", "--out", &sym], vec![&sym]),
        (
            vec!["--seed", "5", "search", "--dim", "3", "--restarts", "3", "--max-iters", "200", "--out", &sea, "--trace-csv", &tra],
            vec![&sea, &tra],
        ),
        (vec!["--seed", "5", "scan", "--family", "h2", "--grid", "random:30", "--out", &scn], vec![&scn]),
    ];
    let log = dir.path().join("runs.jsonl");
    for (args, files) in &cases {
        let mut snapshots = Vec::new();
        for _ in 0..2 {
            let before = std::fs::read_to_string(&log).unwrap_or_default().lines().count();
            let (code, stdout) = cli_run(args, &log);
            let contents: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap_or_default()).collect();
            let text = std::fs::read_to_string(&log).map_err(|e| e.to_string())?;
            let lines: Vec<&str> = text.lines().collect();
            ensure(lines.len() == before + 1, || format!("{args:?}: expected one new record"))?;
            let rec = strip_timestamp(lines[lines.len() - 1])?;
            snapshots.push((code, stdout, contents, rec));
        }
        ensure(snapshots[0] == snapshots[1], || format!("{args:?}: runs differ"))?;
        ensure(snapshots[0].2.iter().all(|c| !c.is_empty()), || format!("{args:?}: empty output"))?;
    }
    Ok(format!("{} subcommands byte-identical across repeat runs", cases.len()))
}

fn main() {
    let tol = Tolerances::default();
    type Check = fn(&Tolerances) -> Outcome;
    let criteria: [(&str, Check, Option<Duration>); 11] = [
        ("constructor validity", c1, Some(Duration::from_secs(5))),
        ("census oracle", c2, Some(Duration::from_secs(1))),
        ("nine-count genericity", c3, None),
        ("family count claims", c4, None),
        ("eighteen-case contradiction", c5, Some(Duration::from_secs(600))),
        ("symmetric consequence", c6, None),
        ("exclusion engine", c7, None),
        ("real-block detector", c8, None),
        ("census invariance", c9, None),
        ("search positive controls", c10, None),
        ("cli determinism", c11, None),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check(&tol);
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > *limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:.0?}"));
            }
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failed += result.is_err() as usize;
        println!("criterion {:>2} [{tag}] {name}: {detail} ({elapsed:.2?})", k + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
