mod config;
mod json;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use garnier::garnier::{expand_solution, residual};
use garnier::matrix::Matrix2;
use garnier::monodromy::{closed_form_monodromy, compare_monodromy, group_identities};
use garnier::ode::{local_exponents, LimitEquationId, Point};
use garnier::pipeline::{limit_setup, numeric_loops};
use garnier::Error;
use serde_json::{json, Value};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "garnier", version, about = "Special solutions and monodromy of the degenerate Garnier system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Series expansion of one solution.
    Expand,
    /// Residual of the expansion in the Hamiltonian system.
    Verify,
    /// Closed-form monodromy tuple with its group identities.
    MonodromyClosed,
    /// Numeric loop monodromy of a limit equation.
    MonodromyNumeric,
    /// Numeric loops of a limit equation against their closed forms.
    Compare,
    /// Coefficients, constants and local exponents of a limit equation.
    Limits,
    /// A generic parameter tuple from the seeded sampler.
    SampleParams,
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonGenericParams(_) | Error::GammaPole(_) => 2,
            Error::InvalidArgument(_) | Error::UnsupportedLimit(_) => 1,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(inner) => inner.into(),
            Err(e) => Failure { code: 1, message: format!("{e:#}") },
        }
    }
}

/// Report plus whether its checks passed.
struct Report {
    body: Value,
    ok: bool,
}

fn passing(body: Value) -> Report {
    Report { body, ok: true }
}

fn limit_id(cfg: &RunConfig) -> LimitEquationId {
    LimitEquationId::new(cfg.equation.into(), cfg.solution_id())
}

fn invariants(m: &Matrix2) -> Value {
    json!({ "trace": garnier::complex::CxJson::from(m.trace()), "det": garnier::complex::CxJson::from(m.det()),
            "eigenvalues": m.eigenvalues().map(garnier::complex::CxJson::from) })
}

fn run(cmd: Command, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        Command::SampleParams => {
            let p = garnier::pipeline::sample_params(cfg.seed)?;
            Ok(passing(json!({ "seed": cfg.seed, "params": p, "genericity": p.check_generic() })))
        }
        Command::Expand => {
            let p = cfg.load_params()?;
            let e = expand_solution(&p, cfg.solution_id(), cfg.order())?;
            let r = residual(&e);
            Ok(passing(e.to_json(r.relative)))
        }
        Command::Verify => {
            let p = cfg.load_params()?;
            let e = expand_solution(&p, cfg.solution_id(), cfg.order())?;
            let r = residual(&e);
            let ok = r.relative < cfg.tol_series;
            Ok(Report {
                body: json!({ "solution": cfg.solution, "order": cfg.order, "params": p, "residual": r,
                              "tolerance": cfg.tol_series, "pass": ok }),
                ok,
            })
        }
        Command::MonodromyClosed => {
            let p = cfg.load_params()?;
            let t = closed_form_monodromy(&p, cfg.solution_id())?;
            let ids = group_identities(&t, &p);
            let tol = cfg.tol_monodromy.unwrap_or(1e-10);
            let ok = ids.max_deviation() < tol;
            let mut body = serde_json::to_value(&t).map_err(anyhow::Error::from)?;
            body["params"] = serde_json::to_value(p).map_err(anyhow::Error::from)?;
            body["identities"] = json!({ "report": ids, "max_deviation": ids.max_deviation(), "tolerance": tol, "pass": ok });
            Ok(Report { body, ok })
        }
        Command::MonodromyNumeric | Command::Compare => {
            let p = cfg.load_params()?;
            let id = limit_id(cfg);
            let (ode, closed, pts) = limit_setup(id, &p)?;
            let num = numeric_loops(&ode, &pts, None)?;
            let tol = cfg.tol_monodromy.unwrap_or(1e-6);
            let per: Vec<Value> = closed
                .iter()
                .zip(&num)
                .map(|((name, want), got)| {
                    let rep = compare_monodromy(&[(name, *got)], &[(name, *want)]);
                    json!({ "label": name, "report": rep })
                })
                .collect();
            let worst = per
                .iter()
                .filter_map(|v| v["report"]["max_deviation"].as_f64())
                .fold(0.0, f64::max);
            let ok = worst < tol;
            let body = if matches!(cmd, Command::Compare) {
                json!({ "equation": id.to_string(), "params": p, "comparisons": per,
                        "max_deviation": worst, "tolerance": tol, "pass": ok })
            } else {
                let loops: Vec<Value> = closed
                    .iter()
                    .zip(&num)
                    .map(|((name, _), m)| json!({ "label": name, "matrix": m, "invariants": invariants(m) }))
                    .collect();
                json!({ "equation": id.to_string(), "params": p, "loops": loops,
                        "max_deviation": worst, "tolerance": tol, "pass": ok })
            };
            Ok(Report { body, ok })
        }
        Command::Limits => {
            let p = cfg.load_params()?;
            let id = limit_id(cfg);
            let (ode, _, _) = limit_setup(id, &p)?;
            let exps: Vec<Value> = ode
                .singular_points()
                .into_iter()
                .map(Point::Finite)
                .chain(std::iter::once(Point::Infinity))
                .filter_map(|pt| {
                    local_exponents(&ode, pt).ok().map(|e| json!({ "at": format!("{pt:?}"), "exponents": e.map(garnier::complex::CxJson::from) }))
                })
                .collect();
            Ok(passing(json!({ "params": p, "equation": ode.to_json(), "local_exponents": exps })))
        }
    }
}

fn emit(cfg: &RunConfig, body: &Value) -> Result<(), Failure> {
    let text = json::to_string(body).map_err(|e| Failure { code: 4, message: e.to_string() })?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure { code: 1, message: format!("writing {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli.command, &cli.config).and_then(|r| emit(&cli.config, &r.body).map(|_| r.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: check above tolerance");
            ExitCode::from(3)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
