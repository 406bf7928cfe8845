mod args;

use anyhow::{bail, Context, Result};
use args::{BmArgs, Cli, Command, Format, OutputArgs, TripleKindArg, VerifyArgs, YoungCmd};
use clap::Parser;
use orlicz_lab::dilation_gauge::{crude_lower, crude_upper, default_mu_grid, gauge_upper_auto};
use orlicz_lab::experiments::{EXPERIMENTS, SCHEMA_VERSION};
use orlicz_lab::io::{format_real, sampled_rows};
use orlicz_lab::roots::log_space;
use orlicz_lab::{
    boyd_indices, check_delta2, check_triple, evaluate_bm, gauge_lower, luxemburg_norm, parse_function, parse_symbol,
    parse_young, run_experiment, ExperimentConfig, Grid, Method, Real, TripleKind, VerificationReport, YoungTriple,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

const THREADS_ENV: &str = "ORLICZ_LAB_THREADS";

/// What a command produced: a JSON result, a numeric table and a verdict.
struct Outcome {
    result: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    /// Replaces the default stdout rendering (the table as CSV).
    text: Option<String>,
    ok: bool,
}

impl Outcome {
    fn scalar(name: &'static str, value: f64) -> Self {
        Outcome {
            result: json!({ name: Real(value) }),
            header: vec![name],
            rows: vec![vec![value]],
            text: Some(show(value)),
            ok: true,
        }
    }
}

/// Rounds to 9 significant digits; the norm bisection stops at 1e-10 relative.
fn show(v: f64) -> String {
    if !v.is_finite() || v == 0.0 {
        return format_real(v);
    }
    let r: f64 = format!("{v:.8e}").parse().unwrap_or(v);
    format_real(r)
}

fn csv_text(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| format_real(v)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn emit(command: &Command, output: &OutputArgs, outcome: Outcome) -> Result<ExitCode> {
    match &outcome.text {
        Some(t) => println!("{t}"),
        None => print!("{}", csv_text(&outcome.header, &outcome.rows)),
    }
    if let Some(path) = &output.out {
        let config = serde_json::to_value(command)?;
        let body = match output.format {
            Format::Json => {
                let doc = json!({ "schema_version": SCHEMA_VERSION, "command": config, "result": outcome.result });
                serde_json::to_string_pretty(&doc)? + "\n"
            }
            Format::Csv => format!("# config: {config}\n{}", csv_text(&outcome.header, &outcome.rows)),
        };
        std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if outcome.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn young(cmd: &YoungCmd) -> Result<Outcome> {
    Ok(match cmd {
        YoungCmd::Eval { phi, x, .. } => {
            let v = parse_young(phi)?.eval(*x);
            Outcome { header: vec!["x", "phi"], rows: vec![vec![*x, v]], ..Outcome::scalar("phi", v) }
        }
        YoungCmd::Inverse { phi, y, .. } => {
            if !(*y >= 0.0) {
                bail!("--y must be ≥ 0, got {y}");
            }
            let v = parse_young(phi)?.inverse(*y);
            Outcome { header: vec!["y", "x"], rows: vec![vec![*y, v]], ..Outcome::scalar("inverse", v) }
        }
        YoungCmd::Complement { phi, y, x_max, points, .. } => {
            let psi = parse_young(phi)?.complement(*x_max, *points)?;
            let ys = if y.is_empty() { log_space(1e-2, 1e2, 41) } else { y.clone() };
            let rows: Vec<Vec<f64>> = ys.iter().map(|&t| vec![t, psi.eval(t)]).collect();
            let text = (ys.len() == 1).then(|| show(rows[0][1]));
            Outcome {
                result: json!({ "label": psi.label(), "values": rows.iter().map(|r| [Real(r[0]), Real(r[1])]).collect::<Vec<_>>() }),
                header: vec!["y", "psi"],
                rows,
                text,
                ok: true,
            }
        }
        YoungCmd::Delta2 { phi, lo, hi, .. } => {
            let d = check_delta2(&parse_young(phi)?, *lo, *hi)?;
            Outcome {
                result: json!({ "holds": d.holds, "k": Real(d.k) }),
                header: vec!["lo", "hi", "k", "holds"],
                rows: vec![vec![*lo, *hi, d.k, d.holds as u8 as f64]],
                text: Some(format!("holds={} K={}", d.holds, show(d.k))),
                ok: d.holds,
            }
        }
        YoungCmd::Triple { phi1, phi2, phi3, kind, tol, .. } => {
            let triple = YoungTriple::new(parse_young(phi1)?, parse_young(phi2)?, parse_young(phi3)?);
            let kind = match kind {
                TripleKindArg::Hoelder => TripleKind::Hoelder,
                TripleKindArg::YoungConv => TripleKind::YoungConv,
            };
            let c = check_triple(kind, &triple, &log_space(1e-6, 1e6, 241))?;
            let holds = c.holds(*tol);
            Outcome {
                result: json!({ "holds": holds, "max_violation": Real(c.max_violation), "worst_x": Real(c.worst_x) }),
                header: vec!["max_violation", "worst_x", "holds"],
                rows: vec![vec![c.max_violation, c.worst_x, holds as u8 as f64]],
                text: Some(format!("holds={holds} max_violation={} worst_x={}", show(c.max_violation), show(c.worst_x))),
                ok: holds,
            }
        }
    })
}

fn bm(a: &BmArgs) -> Result<Outcome> {
    let grid = Grid::new(a.grid.half_width, a.grid.n)?;
    let symbol = parse_symbol(&a.symbol)?;
    let f = parse_function(&a.f, grid)?;
    let g = parse_function(&a.g, grid)?;
    let methods: Vec<Method> = if a.method == "all" {
        Method::ALL.into_iter().filter(|m| m.accepts(&symbol)).collect()
    } else {
        vec![a.method.parse()?]
    };
    let mut outputs = Vec::with_capacity(methods.len());
    for m in &methods {
        outputs.push(evaluate_bm(&symbol, &f, &g, *m)?);
    }
    let first = &outputs[0];
    let mut deviations = serde_json::Map::new();
    let mut worst = 0.0f64;
    for (m, out) in methods.iter().zip(&outputs).skip(1) {
        let d = first.max_abs_diff(out);
        worst = worst.max(d);
        deviations.insert(m.name().into(), serde_json::to_value(Real(d))?);
    }
    let ok = worst <= a.tol;
    let text = (methods.len() > 1).then(|| {
        let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
        format!("methods={} max_deviation={} within_tol={ok}", names.join(","), show(worst))
    });
    let rows = sampled_rows(first);
    Ok(Outcome {
        result: json!({
            "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "deviation_from_first": deviations,
            "max_deviation": Real(worst),
            "values": rows.iter().map(|r| r.iter().map(|&v| Real(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        header: vec!["x", "re", "im"],
        rows,
        text,
        ok,
    })
}

fn run_command(cmd: &Command) -> Result<ExitCode> {
    let (outcome, output) = match cmd {
        Command::Young(y) => {
            let output = match y {
                YoungCmd::Eval { output, .. }
                | YoungCmd::Inverse { output, .. }
                | YoungCmd::Complement { output, .. }
                | YoungCmd::Delta2 { output, .. }
                | YoungCmd::Triple { output, .. } => output,
            };
            (young(y)?, output)
        }
        Command::Norm(a) => {
            let grid = Grid::new(a.grid.half_width, a.grid.n)?;
            let f = parse_function(&a.f, grid)?;
            let v = luxemburg_norm(&f, &parse_young(&a.phi)?, a.gamma)?;
            (Outcome::scalar("norm", v), &a.output)
        }
        Command::Gauge(a) => {
            let phi = parse_young(&a.phi)?;
            let lambdas = if a.lambda.is_empty() { log_space(0.125, 8.0, 25) } else { a.lambda.clone() };
            let mu = default_mu_grid();
            let mut rows = Vec::with_capacity(lambdas.len());
            for &l in &lambdas {
                rows.push(vec![l, gauge_lower(&phi, l, &mu)?, gauge_upper_auto(&phi, l)?, crude_lower(l), crude_upper(l)]);
            }
            let result = json!(rows.iter().map(|r| r.iter().map(|&v| Real(v)).collect::<Vec<_>>()).collect::<Vec<_>>());
            let header = vec!["lambda", "lower", "upper", "crude_lo", "crude_hi"];
            (Outcome { result, header, rows, text: None, ok: true }, &a.output)
        }
        Command::Boyd(a) => {
            let b = boyd_indices(&parse_young(&a.phi)?, a.decades)?;
            let outcome = Outcome {
                result: serde_json::to_value(b)?,
                header: vec!["lower_index", "upper_index", "residual"],
                rows: vec![vec![b.lower_index, b.upper_index, b.residual]],
                text: Some(format!(
                    "lower_index={} upper_index={} residual={}",
                    show(b.lower_index),
                    show(b.upper_index),
                    show(b.residual)
                )),
                ok: true,
            };
            (outcome, &a.output)
        }
        Command::Bm(a) => (bm(a)?, &a.output),
        Command::Verify(a) => return verify(a),
    };
    emit(cmd, output, outcome)
}

fn apply_overrides(cfg: &mut ExperimentConfig, a: &VerifyArgs) -> Result<()> {
    match (a.p1, a.p2, a.p3) {
        (Some(p1), Some(p2), Some(p3)) => {
            cfg.triples = vec![[format!("power:p={p1}"), format!("power:p={p2}"), format!("power:p={p3}")]]
        }
        (None, None, None) => {}
        _ => bail!("--p1, --p2 and --p3 must be given together"),
    }
    if let Some(v) = a.a {
        cfg.params.a = v;
    }
    if let Some(v) = a.n_max {
        cfg.params.n_max = v;
    }
    if let Some(v) = a.trials {
        cfg.trials = v;
    }
    if let Some(v) = a.half_width {
        cfg.grid.half_width = v;
    }
    if let Some(v) = a.n {
        cfg.grid.n = v;
    }
    if a.seed.is_some() {
        cfg.seed = a.seed;
    }
    apply_tolerances(cfg, a);
    Ok(())
}

fn apply_tolerances(cfg: &mut ExperimentConfig, a: &VerifyArgs) {
    let t = &mut cfg.tolerances;
    for (slot, v) in [
        (&mut t.exact, a.tol_exact),
        (&mut t.identity, a.tol_identity),
        (&mut t.limit, a.tol_limit),
        (&mut t.slope, a.tol_slope),
    ] {
        if let Some(v) = v {
            *slot = v;
        }
    }
}

fn report_line(r: &VerificationReport) -> String {
    let checked = r.claims.iter().filter(|c| c.verdict != orlicz_lab::Verdict::Info).count();
    let passed = r.claims.iter().filter(|c| c.verdict == orlicz_lab::Verdict::Pass).count();
    let mut line = format!(
        "{:<16} {}  claims {passed}/{checked}  trials {}",
        r.experiment,
        if r.passed() { "PASS" } else { "FAIL" },
        r.trials.len()
    );
    for c in r.claims.iter().filter(|c| c.verdict == orlicz_lab::Verdict::Fail) {
        let _ = write!(line, "\n    failed {}: {}", c.name, c.detail);
    }
    line
}

fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let configs = if a.name == "all" {
        let shaping = a.config.is_some()
            || a.p1.is_some()
            || a.p2.is_some()
            || a.p3.is_some()
            || a.a.is_some()
            || a.n_max.is_some()
            || a.trials.is_some()
            || a.half_width.is_some()
            || a.n.is_some();
        if shaping {
            bail!("`verify all` accepts only --seed, --out and tolerance flags");
        }
        let mut list = Vec::with_capacity(EXPERIMENTS.len());
        for name in EXPERIMENTS {
            let mut cfg = ExperimentConfig::defaults(name)?;
            cfg.seed = a.seed;
            apply_tolerances(&mut cfg, a);
            list.push(cfg);
        }
        list
    } else {
        let mut cfg = match &a.config {
            Some(path) => {
                let cfg = ExperimentConfig::load(path)?;
                if cfg.name != a.name {
                    bail!("config names experiment '{}' but '{}' was requested", cfg.name, a.name);
                }
                cfg
            }
            None => ExperimentConfig::defaults(&a.name)?,
        };
        apply_overrides(&mut cfg, a)?;
        vec![cfg]
    };
    for cfg in &configs {
        if cfg.is_randomized() {
            cfg.required_seed().context("pass --seed")?;
        }
    }
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut all_ok = true;
    for cfg in &configs {
        let report = run_experiment(cfg)?;
        println!("{}", report_line(&report));
        if let Some(dir) = &a.out {
            report.write_to(Path::new(dir))?;
        }
        all_ok &= report.passed();
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run_command(&cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
