//! Subcommand implementations. Each handler prints its report and maps
//! failures onto the exit-code taxonomy: user/validation problems become
//! [`CliError::Usage`] (exit 2), mathematical disagreements discovered at
//! run time become [`CliError::Inconsistency`] (exit 3).

use std::path::Path;
use std::time::Instant;

use num_traits::Signed;
use serde_json::{json, Value};

use spinchain::chipoly::{x_closed, x_recursive, IsingIndex};
use spinchain::crystal::{build_tables, RecursionVariant};
use spinchain::exact::{format_decimal, format_rational, parse_rational, rational_to_f64};
use spinchain::gibbs::{count_probability, criteria_report, magnetization_distribution};
use spinchain::global::{ising_ratio_exact, recurse_global, recurse_global_numeric};
use spinchain::oracle::{Enumerator, GlobalBoundary};
use spinchain::verify::{all_passed, poly_checks, run_all, VerifyOptions};
use spinchain::{
    Beta, BoundaryPair, EvalMode, InteractionProfile, Interval, Rational, Spin,
};

use crate::report::{csv_field, mode_json, print_json, render_value, spectrum_csv, Format};

pub enum CliError {
    /// Bad input: unknown values, malformed files, cap violations. Exit 2.
    Usage(String),
    /// The mathematics disagreed where it must not. Exit 3.
    Inconsistency(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub struct Ctx {
    pub format: Format,
    pub precision: u32,
}

fn load_profile(path: &Path) -> Result<InteractionProfile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read profile file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed profile {}: {e}", path.display())))
}

fn parse_window(text: &str) -> Result<Interval, CliError> {
    let (m, n) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("window must look like m..n, got '{text}'")))?;
    let m = m
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("bad window start '{m}': {e}")))?;
    let n = n
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("bad window end '{n}': {e}")))?;
    Interval::new(m, n).map_err(usage)
}

/// Exactly one of --beta / --tau.
fn require_mode(
    beta: Option<&str>,
    tau: Option<&str>,
    precision: u32,
) -> Result<EvalMode, CliError> {
    optional_mode(beta, tau, precision)?
        .ok_or_else(|| CliError::Usage("provide --beta B (decimal) or --tau T (exact)".into()))
}

/// At most one of --beta / --tau; both parse as exact rationals.
fn optional_mode(
    beta: Option<&str>,
    tau: Option<&str>,
    precision: u32,
) -> Result<Option<EvalMode>, CliError> {
    match (beta, tau) {
        (None, None) => Ok(None),
        (Some(b), None) => {
            let beta = parse_rational(b).map_err(usage)?;
            if !beta.is_positive() {
                return Err(CliError::Usage(format!("--beta must be positive, got {b}")));
            }
            Ok(Some(EvalMode::Decimal {
                beta,
                digits: precision,
            }))
        }
        (None, Some(t)) => {
            let tau = parse_rational(t).map_err(usage)?;
            if !tau.is_positive() {
                return Err(CliError::Usage(format!("--tau must be positive, got {t}")));
            }
            Ok(Some(EvalMode::ExactTau(tau)))
        }
        (Some(_), Some(_)) => unreachable!("clap forbids --beta with --tau"),
    }
}

pub fn global(
    ctx: &Ctx,
    profile_path: &Path,
    n_max: u32,
    beta: Option<&str>,
    tau: Option<&str>,
) -> Result<(), CliError> {
    let profile = load_profile(profile_path)?;
    let mode = require_mode(beta, tau, ctx.precision)?;
    let pairs = recurse_global(n_max, &profile).map_err(usage)?;
    let mut rows = Vec::new();
    for pair in &pairs {
        let z_plus = pair.z_plus.evaluate_mode(&mode).map_err(usage)?;
        let z_pm = pair.z_pm.evaluate_mode(&mode).map_err(usage)?;
        let ratio = &z_plus / &z_pm;
        rows.push((
            pair.n,
            render_value(&z_plus, &mode),
            render_value(&z_pm, &mode),
            render_value(&ratio, &mode),
        ));
    }
    match ctx.format {
        Format::Json => print_json(&json!({
            "command": "global",
            "nmax": n_max,
            "mode": mode_json(&mode),
            "rows": rows.iter().map(|(n, zp, zpm, ratio)| json!({
                "n": n, "z_plus": zp, "z_pm": zpm, "ratio": ratio,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("n,z_plus,z_pm,ratio");
            for (n, zp, zpm, ratio) in &rows {
                println!("{n},{zp},{zpm},{ratio}");
            }
        }
    }
    Ok(())
}

pub fn crystal(
    ctx: &Ctx,
    profile_path: &Path,
    window: &str,
    variant: RecursionVariant,
    beta: Option<&str>,
    tau: Option<&str>,
    check: bool,
) -> Result<(), CliError> {
    let profile = load_profile(profile_path)?;
    let window = parse_window(window)?;
    let mode = optional_mode(beta, tau, ctx.precision)?;
    let table = build_tables(window, &profile, variant).map_err(usage)?;

    let mut mismatches = Vec::new();
    if check {
        let oracle = Enumerator::default();
        for length in 1..=table.max_length() {
            let sub = Interval::new(window.m(), window.m() + length as i64 - 1).map_err(usage)?;
            for r in 0..=length {
                let x = oracle
                    .crystal(sub, &profile, BoundaryPair::PLUS_PLUS, r, Spin::Down)
                    .map_err(usage)?;
                let y = oracle
                    .crystal(sub, &profile, BoundaryPair::MINUS_PLUS, r, Spin::Up)
                    .map_err(usage)?;
                if table.x(length, r).ok() != Some(&x) {
                    mismatches.push(format!("x at length {length}, r {r}"));
                }
                if table.y(length, r).ok() != Some(&y) {
                    mismatches.push(format!("y at length {length}, r {r}"));
                }
            }
        }
    }

    let entry_value = |s: &spinchain::Spectrum| -> Result<Value, CliError> {
        Ok(match &mode {
            None => serde_json::to_value(s).expect("serializable"),
            Some(mode) => Value::String(render_value(&s.evaluate_mode(mode).map_err(usage)?, mode)),
        })
    };
    match ctx.format {
        Format::Json => {
            let mut entries = Vec::new();
            for length in 0..=table.max_length() {
                for r in 0..=length {
                    entries.push(json!({
                        "length": length,
                        "r": r,
                        "x": entry_value(table.x(length, r).map_err(usage)?)?,
                        "y": entry_value(table.y(length, r).map_err(usage)?)?,
                    }));
                }
            }
            let mut out = json!({
                "command": "crystal",
                "window": format!("{}..{}", window.m(), window.n()),
                "variant": variant.to_string(),
                "mode": mode.as_ref().map(mode_json),
                "entries": entries,
            });
            if check {
                out["check"] = json!({
                    "passed": mismatches.is_empty(),
                    "mismatches": mismatches,
                });
            }
            print_json(&out);
        }
        Format::Csv => {
            println!("length,r,x,y");
            for length in 0..=table.max_length() {
                for r in 0..=length {
                    let render = |s: &spinchain::Spectrum| -> Result<String, CliError> {
                        Ok(match &mode {
                            None => spectrum_csv(s),
                            Some(mode) => {
                                render_value(&s.evaluate_mode(mode).map_err(usage)?, mode)
                            }
                        })
                    };
                    println!(
                        "{length},{r},{},{}",
                        render(table.x(length, r).map_err(usage)?)?,
                        render(table.y(length, r).map_err(usage)?)?,
                    );
                }
            }
            for miss in &mismatches {
                println!("mismatch,,{},", csv_field(miss));
            }
        }
    }
    if check && !mismatches.is_empty() {
        return Err(CliError::Inconsistency(format!(
            "{} crystal entries disagree with enumeration (variant {variant})",
            mismatches.len()
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn poly(
    ctx: &Ctx,
    n: Option<u32>,
    r: Option<u32>,
    recursive: bool,
    eval: Option<&str>,
    verify: bool,
    n_max: u32,
) -> Result<(), CliError> {
    if verify {
        let rows = poly_checks(n_max);
        if all_passed(&rows) {
            println!("identities: OK");
            return Ok(());
        }
        for row in rows.iter().filter(|r| !r.passed) {
            println!("identities: FAIL - {}: {}", row.name, row.detail);
        }
        return Err(CliError::Inconsistency(
            "homogeneous-chain identities failed".into(),
        ));
    }
    let (Some(n), Some(r)) = (n, r) else {
        return Err(CliError::Usage(
            "provide --n N and --r R (or --verify for the identity sweep)".into(),
        ));
    };
    IsingIndex::new(n, r).map_err(usage)?;
    let (route, polynomial) = if recursive {
        ("recursive", x_recursive(n, r))
    } else {
        ("closed", x_closed(n, r))
    };
    let value = match eval {
        None => None,
        Some(text) => {
            let s = parse_rational(text).map_err(usage)?;
            Some(format_rational(&polynomial.evaluate_exact(&s)))
        }
    };
    match ctx.format {
        Format::Json => {
            let mut out = json!({
                "command": "poly",
                "n": n,
                "r": r,
                "route": route,
                "polynomial": polynomial.to_string(),
                "coefficients": polynomial.terms().map(|(p, c)| json!({
                    "s_power": p,
                    "value": c.to_string(),
                })).collect::<Vec<_>>(),
            });
            if let Some(v) = &value {
                out["value"] = json!(v);
            }
            print_json(&out);
        }
        Format::Csv => {
            if let Some(v) = &value {
                println!("value");
                println!("{v}");
            } else {
                println!("s_power,coefficient");
                for (p, c) in polynomial.terms() {
                    println!("{p},{c}");
                }
            }
        }
    }
    Ok(())
}

pub fn prob(
    ctx: &Ctx,
    profile_path: &Path,
    window: &str,
    boundary: &str,
    beta: Option<&str>,
    tau: Option<&str>,
    event: &str,
) -> Result<(), CliError> {
    let profile = load_profile(profile_path)?;
    let window = parse_window(window)?;
    let boundary = BoundaryPair::parse(boundary)
        .ok_or_else(|| CliError::Usage(format!("boundary must be ++, -+, +- or --, got '{boundary}'")))?;
    let mode = require_mode(beta, tau, ctx.precision)?;
    // The counted spin opposes the left boundary spin, matching the
    // fixed-count classes the tables index.
    let counted = boundary.left.flipped();
    let header = json!({
        "command": "prob",
        "window": format!("{}..{}", window.m(), window.n()),
        "boundary": boundary.to_string(),
        "counted": counted.to_string(),
        "mode": mode_json(&mode),
    });
    if event == "all" {
        let distribution = magnetization_distribution(window, &profile, boundary, counted, &mode)
            .map_err(usage)?;
        match ctx.format {
            Format::Json => {
                let mut out = header;
                out["event"] = json!("all");
                out["distribution"] = distribution
                    .iter()
                    .enumerate()
                    .map(|(r, p)| json!({"r": r, "probability": render_value(p, &mode)}))
                    .collect::<Vec<_>>()
                    .into();
                print_json(&out);
            }
            Format::Csv => {
                println!("r,probability");
                for (r, p) in distribution.iter().enumerate() {
                    println!("{r},{}", render_value(p, &mode));
                }
            }
        }
        return Ok(());
    }
    let r: usize = event
        .strip_prefix("r=")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| CliError::Usage(format!("event must be r=K or all, got '{event}'")))?;
    let p = count_probability(window, &profile, boundary, counted, r, &mode).map_err(usage)?;
    match ctx.format {
        Format::Json => {
            let mut out = header;
            out["event"] = json!(format!("r={r}"));
            out["probability"] = json!(render_value(&p, &mode));
            print_json(&out);
        }
        Format::Csv => {
            println!("r,probability");
            println!("{r},{}", render_value(&p, &mode));
        }
    }
    Ok(())
}

pub fn diagnose(
    ctx: &Ctx,
    profile_path: &Path,
    window: &str,
    k_max: i64,
) -> Result<(), CliError> {
    let profile = load_profile(profile_path)?;
    let window = parse_window(window)?;
    if k_max < 1 {
        return Err(CliError::Usage(format!("--kmax must be at least 1, got {k_max}")));
    }
    let report = criteria_report(&profile, window, k_max, ctx.precision).map_err(usage)?;
    match ctx.format {
        Format::Json => print_json(&json!({
            "command": "diagnose",
            "window": format!("{}..{}", window.m(), window.n()),
            "kmax": k_max,
            "note": "diagnostic only: finite-window evidence, no verdict on the infinite chain",
            "partial_sums": report.partial_sums.iter().map(|(n, s)| json!({
                "upto": n,
                "sum": format_decimal(s, ctx.precision),
            })).collect::<Vec<_>>(),
            "trend": report.trend.to_string(),
            "violations": report.violations.iter().map(|v| json!({
                "n": v.n,
                "k": v.k,
                "sum": format_rational(&v.sum),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("kind,n,k,value");
            for (n, s) in &report.partial_sums {
                println!("partial_sum,{n},,{}", format_decimal(s, ctx.precision));
            }
            println!("trend,,,{}", csv_field(&report.trend.to_string()));
            for v in &report.violations {
                println!("violation,{},{},{}", v.n, v.k, format_rational(&v.sum));
            }
        }
    }
    Ok(())
}

pub fn verify(
    ctx: &Ctx,
    n_max: u32,
    profiles: &str,
    window_len_max: usize,
    poly_n_max: u32,
) -> Result<(), CliError> {
    if profiles != "builtin" {
        return Err(CliError::Usage(format!(
            "only the builtin profile trio is supported, got '{profiles}'"
        )));
    }
    let rows = run_all(&VerifyOptions {
        global_n_max: n_max,
        window_len_max,
        poly_n_max,
    });
    let passed = all_passed(&rows);
    match ctx.format {
        Format::Json => print_json(&json!({
            "command": "verify",
            "passed": passed,
            "rows": rows.iter().map(|row| json!({
                "name": row.name,
                "passed": row.passed,
                "detail": row.detail,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("name,passed,detail");
            for row in &rows {
                println!(
                    "{},{},{}",
                    csv_field(&row.name),
                    row.passed,
                    csv_field(&row.detail)
                );
            }
        }
    }
    if passed {
        Ok(())
    } else {
        let failed = rows.iter().filter(|r| !r.passed).count();
        Err(CliError::Inconsistency(format!(
            "{failed} of {} verification checks failed",
            rows.len()
        )))
    }
}

pub fn bench(ctx: &Ctx, sizes: Option<&str>) -> Result<(), CliError> {
    let sizes: Vec<u32> = match sizes {
        None => vec![10, 1000, 100_000],
        Some(text) if text.trim().is_empty() => Vec::new(),
        Some(text) => text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|e| CliError::Usage(format!("bad size '{s}': {e}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let profile = InteractionProfile::constant(Rational::from_integer(1.into()));
    let beta = Beta::new(std::f64::consts::LN_2).expect("positive");
    let tau = Rational::new(1.into(), 2.into());
    let oracle = Enumerator::default();
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for &n in &sizes {
        let mut oracle_ms = None;
        let mut exact_ms = None;
        if n <= 8 {
            let started = Instant::now();
            let enumerated = oracle
                .global(n, &profile, GlobalBoundary::Plus)
                .map_err(usage)?;
            oracle_ms = Some(started.elapsed().as_millis() as u64);
            let recursed = recurse_global(n, &profile).map_err(usage)?;
            if recursed[n as usize].z_plus != enumerated {
                disagreements.push(format!("oracle vs recursion at n={n}"));
            }
        }
        if n <= 512 {
            let started = Instant::now();
            recurse_global(n, &profile).map_err(usage)?;
            exact_ms = Some(started.elapsed().as_millis() as u64);
        }
        let started = Instant::now();
        let numeric = recurse_global_numeric(n, &profile, &beta).map_err(usage)?;
        let numeric_ms = started.elapsed().as_millis() as u64;
        let started = Instant::now();
        let closed = ising_ratio_exact(n, &tau).map_err(usage)?;
        let closed_ms = started.elapsed().as_millis() as u64;
        let numeric_ratio = numeric[n as usize].ratio();
        let agree = (numeric_ratio - rational_to_f64(&closed)).abs() < 1e-9;
        if !agree {
            disagreements.push(format!("numeric recursion vs closed-form ratio at n={n}"));
        }
        rows.push(json!({
            "n": n,
            "oracle_ms": oracle_ms,
            "exact_recursion_ms": exact_ms,
            "numeric_recursion_ms": numeric_ms,
            "closed_form_ms": closed_ms,
            "agree": agree,
        }));
    }
    match ctx.format {
        Format::Json => print_json(&json!({
            "command": "bench",
            "note": "timings are informational and vary between runs; the agreement flags are the test",
            "rows": rows,
        })),
        Format::Csv => {
            println!("n,oracle_ms,exact_recursion_ms,numeric_recursion_ms,closed_form_ms,agree");
            for row in &rows {
                let cell = |key: &str| match &row[key] {
                    Value::Null => String::new(),
                    v => v.to_string(),
                };
                println!(
                    "{},{},{},{},{},{}",
                    row["n"],
                    cell("oracle_ms"),
                    cell("exact_recursion_ms"),
                    cell("numeric_recursion_ms"),
                    cell("closed_form_ms"),
                    row["agree"],
                );
            }
        }
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(CliError::Inconsistency(disagreements.join("; ")))
    }
}
