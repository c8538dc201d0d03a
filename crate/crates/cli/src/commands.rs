use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use chm_core::analysis::census;
use chm_core::chm::count_ones;
use chm_core::families::{
    check_family_name, first_valid_szollosi, FamilySpec, H2Params, HermitianParams, PhiSign, SymmetricParams,
    SzollosiParams,
};
use chm_core::io::{from_str_auto, parse_complex_token, to_json_string, to_text_string};
use chm_core::mub::{exclusion_verdict, verify_eighteen_contradiction, verify_symmetric_minus_one, EighteenGrid};
use chm_core::search::{family_scan, seek_trio, ParamGrid, SearchConfig};
use chm_core::{dephase, validate_chm, Chm, ChmError, Tolerances};
use serde_json::{json, Value};

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 3,
            CliError::Usage(_) | CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ChmError> for CliError {
    fn from(e: ChmError) -> Self {
        match e {
            ChmError::UnknownFamily(_) | ChmError::InvalidConfig(_) | ChmError::InvalidTolerances(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub code: i32,
    pub summary: Value,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

impl Outcome {
    fn ok(summary: Value) -> Self {
        Self {
            code: 0,
            summary,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn input(mut self, p: &Path) -> Self {
        self.inputs.push(p.to_path_buf());
        self
    }

    fn output(mut self, p: &Path) -> Self {
        self.outputs.push(p.to_path_buf());
        self
    }

    fn code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn read_chm(path: &Path, tol: &Tolerances) -> CliResult<Chm> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let m = from_str_auto(&text).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(validate_chm(m, tol)?)
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> CliResult<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| CliError::Io(e.to_string()))
}

fn to_pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

/// Resolves a family name and flags into a concrete spec and matrix.
pub fn build_family(name: &str, a: &FamilyArgs, tol: &Tolerances) -> CliResult<(FamilySpec, Chm)> {
    check_family_name(name)?;
    let spec = match name {
        "fourier" => FamilySpec::Fourier { d: a.d },
        "bjorck" => FamilySpec::Bjorck,
        "h2" => {
            let signs = match a.signs.as_deref() {
                None => [1, 1, 1],
                Some(&[s2, s3, s4]) if [s2, s3, s4].iter().all(|s| *s == 1 || *s == -1) => [s2, s3, s4],
                Some(other) => return Err(CliError::Usage(format!("--signs {other:?}: expected three values of +-1"))),
            };
            let mut p = H2Params::from_arg(a.theta, a.phi, a.z1_arg);
            (p.s2, p.s3, p.s4) = (signs[0], signs[1], signs[2]);
            FamilySpec::H2(p)
        }
        "hermitian" => FamilySpec::Hermitian(HermitianParams::new(a.theta, a.branch)),
        "symmetric" => FamilySpec::Symmetric(SymmetricParams {
            phi_sign: match a.phi_sign {
                PhiChoice::Zero => PhiSign::Zero,
                PhiChoice::Pi => PhiSign::Pi,
            },
            fixed_point: a.fixed_point,
        }),
        "szollosi" => {
            let alpha = match &a.alpha {
                Some(s) => parse_complex_token(s).map_err(|e| CliError::Usage(format!("--alpha: {e}")))?,
                None => return Err(CliError::Usage("szollosi needs --alpha".into())),
            };
            match a.sel.as_deref() {
                Some(&[x, y, u, v]) => FamilySpec::Szollosi(SzollosiParams::new(alpha, [x, y, u, v])),
                Some(_) => return Err(CliError::Usage("--sel takes four indices".into())),
                None => {
                    let (p, h) = first_valid_szollosi(alpha, tol)?;
                    return Ok((FamilySpec::Szollosi(p), h));
                }
            }
        }
        _ => unreachable!("name checked above"),
    };
    let h = spec.build(tol)?;
    Ok((spec, h))
}

fn gen(a: &GenArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    let (spec, h) = build_family(&a.family, &a.params, tol)?;
    let prov = spec.provenance();
    let text = match a.format {
        Format::Json => to_json_string(h.matrix(), Some(&prov)),
        Format::Text => to_text_string(h.matrix()),
    };
    write_file(&a.out, &text)?;
    say(out, format!("wrote {} ({}, d={})", a.out.display(), spec.name(), h.dim()))?;
    Ok(Outcome::ok(json!({ "family": spec.name(), "dim": h.dim(), "provenance": prov })).output(&a.out))
}

fn census_cmd(a: &CensusArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    let h = read_chm(&a.input, tol)?;
    let c = census(&h, tol);
    say(out, format!("count: {}", c.count))?;
    if !c.borderline.is_empty() {
        say(out, format!("borderline: {}", c.borderline.len()))?;
    }
    let mut o = Outcome::ok(json!({ "count": c.count, "borderline": c.borderline.len() })).input(&a.input);
    if let Some(p) = &a.out {
        write_file(p, &to_pretty(&c))?;
        o = o.output(p);
    }
    Ok(o)
}

fn exclude(a: &ExcludeArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    let (h, source) = match (&a.input, &a.family) {
        (Some(p), _) => (read_chm(p, tol)?, json!({ "file": p.display().to_string() })),
        (None, Some(f)) => {
            let (spec, h) = build_family(f, &a.params, tol)?;
            (h, spec.provenance())
        }
        (None, None) => return Err(CliError::Usage("exclude needs --in or --family".into())),
    };
    let v = exclusion_verdict(&h, tol)?;
    say(out, v.summary())?;
    let code = if v.is_excluded() { 0 } else { 2 };
    let mut o = Outcome::ok(json!({
        "status": v.status.as_str(),
        "census": v.evidence.census_count,
        "citations": v.citations,
        "source": source,
    }))
    .code(code);
    if let Some(p) = &a.input {
        o = o.input(p);
    }
    if let Some(p) = &a.out {
        write_file(p, &to_pretty(&v))?;
        o = o.output(p);
    }
    Ok(o)
}

fn dephase_cmd(a: &DephaseArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    let h = read_chm(&a.input, tol)?;
    let (d, _) = dephase(&h, tol)?;
    let text = match a.format {
        Format::Json => to_json_string(d.matrix(), Some(&json!({ "dephased": true }))),
        Format::Text => to_text_string(d.matrix()),
    };
    write_file(&a.out, &text)?;
    let ones = count_ones(d.matrix(), tol.eps_entry);
    say(out, format!("wrote {} (ones: {ones})", a.out.display()))?;
    Ok(Outcome::ok(json!({ "ones": ones })).input(&a.input).output(&a.out))
}

fn verify(cmd: &VerifyCommand, seed: u64, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    match cmd {
        VerifyCommand::Eighteen(a) => {
            let grid = EighteenGrid {
                resolution: a.resolution,
                polish_budget: a.polish_budget,
                seed_threshold: a.seed_threshold,
            };
            let rep = verify_eighteen_contradiction(&grid, tol)?;
            write_file(&a.out, &to_pretty(&rep))?;
            say(out, rep.index_note.as_str())?;
            say(out, format!("grid: {0}x{0}x{0} x 8 sign branches", grid.resolution))?;
            say(
                out,
                format!(
                    "skipped: {} degenerate, {} inconsistent",
                    rep.skipped_degenerate, rep.skipped_inconsistent
                ),
            )?;
            say(out, format!("seeds: {} (unconverged {})", rep.seeds, rep.unconverged))?;
            say(out, format!("candidates: {}", rep.candidates.len()))?;
            say(out, format!("max |m66+1|: {:.3e}", rep.max_m66_residual))?;
            say(out, format!("violations: {}", rep.violations))?;
            let code = if rep.violations == 0 { 0 } else { 3 };
            Ok(Outcome::ok(json!({
                "candidates": rep.candidates.len(),
                "violations": rep.violations,
                "max_m66_residual": rep.max_m66_residual,
            }))
            .code(code)
            .output(&a.out))
        }
        VerifyCommand::Symmetric(a) => {
            let rep = verify_symmetric_minus_one(a.samples, seed, tol)?;
            write_file(&a.out, &to_pretty(&rep))?;
            say(out, rep.index_note.as_str())?;
            for c in &rep.instances {
                let status = c.verdict.map_or("none", |s| s.as_str());
                let line = match &c.error {
                    Some(e) => format!("{:?} fixed point {}: error: {e}", c.phi_sign, c.fixed_point),
                    None => format!(
                        "{:?} fixed point {}: |h(3,4)+1|={:.2e} |h(4,3)+1|={:.2e} asym={:.2e} verdict={status} {}",
                        c.phi_sign,
                        c.fixed_point,
                        c.residual_34,
                        c.residual_43,
                        c.symmetry_residual,
                        if c.passed { "PASS" } else { "FAIL" }
                    ),
                };
                say(out, line)?;
            }
            let code = if rep.all_passed { 0 } else { 3 };
            Ok(Outcome::ok(json!({ "all_passed": rep.all_passed, "instances": rep.instances.len() }))
                .code(code)
                .output(&a.out))
        }
    }
}

pub const D6_NOTE: &str =
    "four MUBs in dimension 6 are widely conjectured not to exist; this result is a numerical report, not a claim";

fn search(a: &SearchArgs, seed: u64, out: &mut dyn Write) -> CliResult<Outcome> {
    let cfg = SearchConfig {
        dim: a.dim,
        restarts: a.restarts,
        max_iters: a.max_iters,
        master_seed: seed,
        target_defect: a.target,
        stagnation_window: a.window,
        record_trace: a.trace_csv.is_some(),
    };
    let res = seek_trio(&cfg)?;
    let note = (a.dim == 6).then_some(D6_NOTE);
    write_file(&a.out, &to_pretty(&json!({ "note": note, "result": res })))?;
    let mut o = Outcome::ok(json!({
        "best_defect": res.best_defect,
        "best_restart": res.best_restart,
        "iterations_used": res.iterations_used,
    }))
    .output(&a.out);
    if let Some(p) = &a.trace_csv {
        let mut w = csv::Writer::from_path(p).map_err(|e| CliError::Io(e.to_string()))?;
        w.write_record(["restart", "round", "defect"]).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &res.restarts {
            for (k, d) in r.trace.iter().enumerate() {
                w.write_record([r.index.to_string(), (k + 1).to_string(), format!("{d:e}")])
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        w.flush().map_err(|e| io_err(p, e))?;
        o = o.output(p);
    }
    say(
        out,
        format!(
            "best defect: {:.3e} (restart {} of {}, target {:.1e})",
            res.best_defect, res.best_restart, cfg.restarts, cfg.target_defect
        ),
    )?;
    if let Some(n) = note {
        say(out, format!("note: {n}"))?;
    }
    Ok(o)
}

fn scan(a: &ScanArgs, seed: u64, tol: &Tolerances, out: &mut dyn Write) -> CliResult<Outcome> {
    let grid = ParamGrid::parse(&a.grid, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let rows = family_scan(&a.family, &grid, tol)?;
    let mut w = csv::Writer::from_path(&a.out).map_err(|e| CliError::Io(e.to_string()))?;
    for r in &rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| io_err(&a.out, e))?;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for r in &rows {
        let key = r.verdict.clone().unwrap_or_else(|| "error".to_string());
        *tally.entry(key).or_default() += 1;
    }
    say(out, format!("rows: {}", rows.len()))?;
    for (k, v) in &tally {
        say(out, format!("{k}: {v}"))?;
    }
    Ok(Outcome::ok(json!({ "rows": rows.len(), "tally": tally })).output(&a.out))
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<Outcome> {
    let tol = Tolerances::default();
    match &cli.command {
        Command::Gen(a) => gen(a, &tol, out),
        Command::Census(a) => census_cmd(a, &tol, out),
        Command::Exclude(a) => exclude(a, &tol, out),
        Command::Dephase(a) => dephase_cmd(a, &tol, out),
        Command::Verify(v) => verify(v, cli.seed, &tol, out),
        Command::Search(a) => search(a, cli.seed, out),
        Command::Scan(a) => scan(a, cli.seed, &tol, out),
    }
}

pub fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gen(_) => "gen",
        Command::Census(_) => "census",
        Command::Exclude(_) => "exclude",
        Command::Dephase(_) => "dephase",
        Command::Verify(VerifyCommand::Eighteen(_)) => "verify eighteen",
        Command::Verify(VerifyCommand::Symmetric(_)) => "verify symmetric",
        Command::Search(_) => "search",
        Command::Scan(_) => "scan",
    }
}
