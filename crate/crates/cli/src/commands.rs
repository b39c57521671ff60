use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use cf_core::cyclic::{ruzsa_sweep, solve_cf_z_with, solve_k_m, window_ladder, WindowSupport};
use cf_core::fejer_riesz::{
    autocorrelate, autocorrelate_zm, factor_z_seeded, factor_zm, WindowedSequence,
};
use cf_core::group::{check_cf_condition, parse_omega, support_trace};
use cf_core::group_solver::matrix::{
    parse_reduction_matrix, run_instance, InstanceOutcome, DEFAULT_REDUCTION_MATRIX,
};
use cf_core::group_solver::{self, ExtremalProblem, ExtremalResult, FieldComparison};
use cf_core::posdef::is_posdef;
use cf_core::{
    CyclicTrace, Error, Field, FiniteGroup, GroupDescriptor, GroupFunction, PdCertificate, Verdict,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{num, print, print_json, Format, Table};
use crate::{
    CheckpdArgs, FactorArgs, RunConfig, SolveArgs, TableArgs, TableKind, VerifyArgs, EXIT_NOT_PD,
    EXIT_OK, EXIT_SOLVER, EXIT_USAGE,
};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidGroup(_)
            | Error::ElementOutOfRange { .. }
            | Error::LengthMismatch { .. }
            | Error::IdentityMissing
            | Error::NotSubgroup(_)
            | Error::InvalidArgument(_)
            | Error::NotHermitian { .. }
            | Error::TransferPrecondition { .. }
            | Error::Parse(_) => EXIT_USAGE,
            Error::NotPositiveDefinite(_) => EXIT_NOT_PD,
            _ => EXIT_SOLVER,
        };
        let mut message = e.to_string();
        if matches!(e, Error::AdmmNoConvergence { .. }) {
            message.push_str("; try --rho 0.1 or --rho 10");
        }
        Self { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    if let Some(path) = spec.strip_prefix("csv:") {
        return Ok(FiniteGroup::from_csv_str(&read(Path::new(path))?)?);
    }
    let desc: GroupDescriptor = spec.parse()?;
    Ok(FiniteGroup::make(&desc)?)
}

fn parse_values(text: &str) -> Result<Vec<Complex64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<Complex64>()
                .map_err(|e| Failure::usage(format!("bad value '{}': {e}", t.trim())))
        })
        .collect()
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn complex_cell(z: Complex64) -> [Value; 2] {
    [json!(z.re), json!(z.im)]
}

#[derive(Serialize)]
struct SolveReport<'a> {
    schema: &'static str,
    group: &'a str,
    group_order: usize,
    z: usize,
    nu: i64,
    point: usize,
    field: Field,
    omega: Vec<usize>,
    omega_was_symmetric: bool,
    trace: CyclicTrace,
    cf_condition: Option<usize>,
    result: ExtremalResult,
}

pub fn solve(cfg: &RunConfig, args: &SolveArgs) -> Outcome {
    let g = load_group(&args.group)?;
    let omega = parse_omega(&g, &args.omega, args.z)?;
    if !omega.was_symmetric {
        eprintln!(
            "warning: Ω is not symmetric; using Ω ∩ Ω⁻¹ = {{{}}}",
            join(&omega.mask.indices())
        );
    }
    let point = g.pow(args.z, args.nu);
    let trace = support_trace(&g, &omega.mask, point)?;
    let cf_condition = check_cf_condition(&g, &omega.mask, point)?;
    let problem = ExtremalProblem::new(g.clone(), omega.mask.clone(), point, args.field)?
        .with_sweep(cfg.sweep)
        .with_admm(cfg.admm);
    let result = group_solver::solve(&problem)?;
    let report = SolveReport {
        schema: "cf.solve/1",
        group: &args.group,
        group_order: g.order(),
        z: args.z,
        nu: args.nu,
        point,
        field: args.field,
        omega: omega.mask.indices(),
        omega_was_symmetric: omega.was_symmetric,
        trace,
        cf_condition,
        result,
    };
    let witness_table = || {
        let mut t = Table::new(vec!["index", "label", "re", "im"]);
        for (x, v) in report.result.witness.values().iter().enumerate() {
            let [re, im] = complex_cell(*v);
            t.push(vec![json!(x), json!(g.label(x)), re, im]);
        }
        t
    };
    match cfg.format {
        Format::Json => print_json(&report)?,
        Format::Csv => print(&witness_table().csv()?)?,
        Format::Plain => {
            let r = &report.result;
            let cf = match report.cf_condition {
                Some(n) => format!("N = {n}"),
                None => "not satisfied".into(),
            };
            let mut out = String::new();
            out += &format!("group: {} (order {})\n", report.group, report.group_order);
            out += &format!(
                "point: {} = z^{} (order {})\n",
                point,
                args.nu,
                g.element_order(point)
            );
            out += &format!("omega: {{{}}}\n", join(&report.omega));
            out += &format!("trace: {}\n", report.trace);
            out += &format!("cf_condition: {cf}\n");
            out += &format!("field: {}\n", report.field);
            out += &format!("value: {}\n", num(r.value));
            out += &format!("certified_lower_bound: {}\n", num(r.certified_lower_bound));
            out += &format!(
                "witness_verdict: {} (min eigenvalue {})\n",
                r.certificate.verdict,
                num(r.certificate.min_eigenvalue)
            );
            out += &format!("sweep_angle: {}\n", num(r.sweep_angle));
            out += &format!(
                "admm: {} iterations, primal {}, dual {}, {} subproblems\n",
                r.diagnostics.iterations,
                num(r.diagnostics.primal_residual),
                num(r.diagnostics.dual_residual),
                r.subproblems
            );
            out += "witness:\n";
            for line in witness_table().plain().lines() {
                out += &format!("  {line}\n");
            }
            print(&out)?;
        }
    }
    Ok(EXIT_OK)
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_table(cfg: &RunConfig, kind: &str, table: &Table) -> Result<(), Failure> {
    match cfg.format {
        Format::Plain => print(&table.plain())?,
        Format::Csv => print(&table.csv()?)?,
        Format::Json => print_json(&json!({
            "schema": "cf.table/1",
            "kind": kind,
            "columns": table.columns,
            "rows": table.rows,
        }))?,
    }
    Ok(())
}

fn range(args: &TableArgs, from: usize, to: usize) -> Result<Vec<usize>, Failure> {
    let (a, b) = (args.from.unwrap_or(from), args.to.unwrap_or(to));
    if a > b {
        return Err(Failure::usage(format!("empty range {a}..={b}")));
    }
    Ok((a..=b).collect())
}

pub fn table(cfg: &RunConfig, args: &TableArgs) -> Outcome {
    let (name, table) = match args.kind {
        TableKind::CfWindow => {
            let ns = range(args, 1, 10)?;
            if ns.contains(&0) {
                return Err(Failure::usage("window radius must be at least 1"));
            }
            let rows = ns
                .par_iter()
                .map(|&n| {
                    let s = solve_cf_z_with(
                        n,
                        &WindowSupport::full(n),
                        1,
                        args.field,
                        &cfg.sweep,
                        &cfg.admm,
                    )?;
                    let exact = (PI / (n + 2) as f64).cos();
                    Ok(vec![
                        json!(n),
                        json!(s.value),
                        json!(exact),
                        json!((s.value - exact).abs()),
                    ])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mut t = Table::new(vec!["N", "value", "cos(pi/(N+2))", "gap"]);
            rows.into_iter().for_each(|r| t.push(r));
            ("cf_window", t)
        }
        TableKind::KmPunctured => {
            let ms: Vec<usize> = range(args, 4, 20)?
                .into_iter()
                .filter(|m| m % 2 == 0 && *m >= 2)
                .collect();
            let rows = ms
                .par_iter()
                .map(|&m| {
                    let residues: Vec<i64> = (0..m as i64).filter(|&k| k != m as i64 / 2).collect();
                    let s = solve_k_m(m, &CyclicTrace::new(m, &residues)?, 1)?;
                    let exact = 0.5 * (1.0 + (2.0 * PI / m as f64).cos());
                    Ok(vec![
                        json!(m),
                        json!(s.value),
                        json!(exact),
                        json!((s.value - exact).abs()),
                    ])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mut t = Table::new(vec!["m", "value", "(1+cos(2pi/m))/2", "gap"]);
            rows.into_iter().for_each(|r| t.push(r));
            ("km_punctured", t)
        }
        TableKind::Ruzsa => {
            let ms = range(args, 2, 12)?;
            if ms.contains(&0) {
                return Err(Failure::usage("modulus must be positive"));
            }
            let rows = ms
                .par_iter()
                .map(|&m| {
                    let s = ruzsa_sweep(m)?;
                    Ok(vec![
                        json!(m),
                        json!(s.cases),
                        json!(s.violations),
                        json!(s.min_ratio),
                        json!(s.bound),
                        json!(s.extremal_trace.to_string()),
                    ])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mut t = Table::new(vec![
                "m",
                "cases",
                "violations",
                "min K/CF",
                "cos(pi/m)",
                "argmin",
            ]);
            rows.into_iter().for_each(|r| t.push(r));
            ("ruzsa", t)
        }
        TableKind::Ladder => {
            let moduli = if args.moduli.is_empty() {
                (2 * args.n + 1..=24.max(2 * args.n + 1)).collect()
            } else {
                args.moduli.clone()
            };
            if moduli.contains(&0) {
                return Err(Failure::usage("modulus must be positive"));
            }
            let rows = window_ladder(args.n, &moduli)?;
            let mut t = Table::new(vec!["m", "K_m", "cos(pi/(N+2))", "K_m - limit"]);
            for r in rows {
                t.push(vec![json!(r.m), json!(r.k_m), json!(r.limit), json!(r.gap)]);
            }
            ("ladder", t)
        }
    };
    emit_table(cfg, name, &table)?;
    Ok(EXIT_OK)
}

fn comparison(o: &InstanceOutcome, field: Field) -> Option<&FieldComparison> {
    o.report.comparisons.iter().find(|c| c.field == field)
}

pub fn verify(cfg: &RunConfig, args: &VerifyArgs) -> Outcome {
    let text = match &args.matrix {
        Some(p) => read(p)?,
        None => DEFAULT_REDUCTION_MATRIX.to_string(),
    };
    let instances = parse_reduction_matrix(&text)?;
    let outcomes = instances
        .par_iter()
        .map(|inst| {
            run_instance(inst, &cfg.sweep, &cfg.admm)
                .map_err(|e| Failure::usage(format!("line {}: {e}", inst.line)))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let all = passed == outcomes.len();
    let opt = |v: Option<f64>| v.map_or(Value::Null, |x| json!(x));
    match cfg.format {
        Format::Json => print_json(&json!({
            "schema": "cf.verify/1",
            "passed": passed,
            "total": outcomes.len(),
            "instances": outcomes,
        }))?,
        _ => {
            let mut t = Table::new(vec![
                "status",
                "line",
                "group",
                "omega",
                "z",
                "trace",
                "real",
                "real_gap",
                "complex",
                "complex_gap",
                "expected_gap",
            ]);
            for o in &outcomes {
                let (re, cx) = (comparison(o, Field::Real), comparison(o, Field::Complex));
                let trace = o
                    .report
                    .trace
                    .as_ref()
                    .map_or(String::new(), |t| t.to_string());
                t.push(vec![
                    json!(if o.pass { "PASS" } else { "FAIL" }),
                    json!(o.instance.line),
                    json!(o.instance.group),
                    json!(o.instance.omega),
                    json!(o.instance.z),
                    json!(trace),
                    opt(re.and_then(|c| c.group_value)),
                    opt(re.and_then(|c| c.gap)),
                    opt(cx.and_then(|c| c.group_value)),
                    opt(cx.and_then(|c| c.gap)),
                    opt(o.expected_gap),
                ]);
            }
            if cfg.format == Format::Csv {
                print(&t.csv()?)?;
            } else {
                print(&t.plain())?;
                print(&format!("{passed}/{} PASS\n", outcomes.len()))?;
            }
            for o in outcomes.iter().filter(|o| !o.pass) {
                for c in &o.report.comparisons {
                    if let Some(err) = &c.error {
                        eprintln!("line {} ({}): {err}", o.instance.line, c.field);
                    }
                }
            }
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_NOT_PD })
}

pub fn factor(cfg: &RunConfig, args: &FactorArgs) -> Outcome {
    let values = match (&args.values, &args.file) {
        (Some(v), _) => Some(parse_values(v)?),
        (None, Some(_)) => None,
        (None, None) => return Err(Failure::usage("give --values or --file")),
    };
    let (domain, theta, error) = if args.modular {
        let psi = match values {
            Some(v) => v,
            None => parse_json::<GroupFunction>(args.file.as_ref().unwrap())?
                .values()
                .to_vec(),
        };
        let theta = factor_zm(&psi, args.tol)?;
        let back = autocorrelate_zm(&theta);
        let err = back
            .iter()
            .zip(&psi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        (format!("Z_{}", psi.len()), theta, err)
    } else {
        let psi = match values {
            Some(v) => {
                if v.len() % 2 == 0 {
                    return Err(Failure::usage(format!(
                        "{} values given; a sequence on [-N, N] has 2N+1",
                        v.len()
                    )));
                }
                WindowedSequence::new((v.len() - 1) / 2, v)?
            }
            None => parse_json::<WindowedSequence>(args.file.as_ref().unwrap())?,
        };
        let theta = factor_z_seeded(&psi, args.tol, cfg.seed)?;
        let err = autocorrelate(&theta).max_distance(&psi);
        (format!("Z (N = {})", psi.radius()), theta, err)
    };
    let mut t = Table::new(vec!["k", "re", "im"]);
    for (k, v) in theta.iter().enumerate() {
        let [re, im] = complex_cell(*v);
        t.push(vec![json!(k), re, im]);
    }
    match cfg.format {
        Format::Json => print_json(&json!({
            "schema": "cf.factor/1",
            "domain": if args.modular { "modular" } else { "integers" },
            "theta": theta.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "reconstruction_error": error,
            "seed": cfg.seed,
        }))?,
        Format::Csv => print(&t.csv()?)?,
        Format::Plain => {
            let mut out = format!("domain: {domain}\ntheta:\n");
            for line in t.plain().lines() {
                out += &format!("  {line}\n");
            }
            out += &format!("reconstruction_error: {}\n", num(error));
            print(&out)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn checkpd(cfg: &RunConfig, args: &CheckpdArgs) -> Outcome {
    let g = load_group(&args.group)?;
    let f = match (&args.values, &args.file) {
        (Some(v), _) => GroupFunction::new(parse_values(v)?),
        (None, Some(p)) => parse_json::<GroupFunction>(p)?,
        (None, None) => return Err(Failure::usage("give --values or --file")),
    };
    let cert: PdCertificate = is_posdef(&g, &f, args.tol)?;
    match cfg.format {
        Format::Json => print_json(&json!({
            "schema": "cf.checkpd/1",
            "group": args.group,
            "certificate": cert,
        }))?,
        Format::Csv => {
            let mut t = Table::new(vec![
                "verdict",
                "min_eigenvalue",
                "hermitian_residual",
                "tolerance",
            ]);
            t.push(vec![
                json!(cert.verdict.to_string()),
                json!(cert.min_eigenvalue),
                json!(cert.hermitian_residual),
                json!(cert.tolerance),
            ]);
            print(&t.csv()?)?;
        }
        Format::Plain => print(&format!(
            "verdict: {}\nmin_eigenvalue: {}\nhermitian_residual: {}\ntolerance: {}\n",
            cert.verdict,
            num(cert.min_eigenvalue),
            num(cert.hermitian_residual),
            num(cert.tolerance)
        ))?,
    }
    Ok(if cert.verdict == Verdict::NotPd {
        EXIT_NOT_PD
    } else {
        EXIT_OK
    })
}
