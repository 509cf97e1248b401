//! The five subcommands. Each returns a JSON report and an exit code.

use std::path::{Path, PathBuf};

use pxbiharm::certificate::{certify_dim1_scan, certify_h_scan, default_nu, Certificate};
use pxbiharm::modular::property_battery;
use pxbiharm::solver::{deflate_and_search, lambda_sweep, sweep_csv, verify_weak_solution, weak_residual_ratio, SolutionSet};
use pxbiharm::{certify, certify_dim1, Domain, Error, ProblemInstance};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Directions used by the weak-solution check on each reported solution.
pub const WEAK_CHECK_DIRECTIONS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    /// 0 success or feasible, 1 valid but infeasible.
    pub exit: u8,
    /// One line for stderr.
    pub summary: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesesFailed(m) => CliError::Infeasible(format!("hypotheses failed: {m}")),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn instance(cfg: &RunConfig, lambda: f64) -> Result<ProblemInstance, CliError> {
    Ok(cfg.problem().instantiate_unchecked(cfg.grid_n, lambda)?)
}

pub fn cmd_check_spaces(cfg: &RunConfig) -> Result<Report, CliError> {
    let parts = cfg.problem().parts(cfg.grid_n)?;
    let report = property_battery(&parts.grid, &parts.p, cfg.solver.seed, cfg.spaces.cases)?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let summary = if failed.is_empty() {
        format!("all {} property checks passed", report.checks.len())
    } else {
        format!("failed checks: {}", failed.join(", "))
    };
    Ok(Report { exit: u8::from(!report.all_passed), json: serde_json::to_value(&report).expect("serializable"), summary })
}

pub fn cmd_hypotheses(cfg: &RunConfig) -> Result<Report, CliError> {
    let inst = instance(cfg, 1.0)?;
    let report = &inst.hypotheses;
    Ok(Report {
        exit: u8::from(report.any_fail()),
        json: serde_json::to_value(report).expect("serializable"),
        summary: report.summary(),
    })
}

/// Certificate chosen by the `certificate` block: the one-dimensional
/// theorem when `dim1` is set, otherwise the general one at a fixed or
/// scanned `h`.
pub fn certificate_for(cfg: &RunConfig, inst: &ProblemInstance) -> Result<Certificate, CliError> {
    let c = &cfg.certificate;
    let cert = if c.dim1 {
        let nu = c.nu.unwrap_or_else(|| default_nu(&inst.p));
        match (c.l, c.h) {
            (Some(l), Some(h)) => certify_dim1(inst, l, h, nu)?,
            (None, None) => certify_dim1_scan(inst, nu)?,
            _ => return Err(CliError::Invalid("certificate.l and certificate.h must be given together".into())),
        }
    } else {
        match c.h {
            Some(h) => certify(inst, c.r, h)?,
            None => certify_h_scan(inst, c.r, c.h_scan)?,
        }
    };
    Ok(cert)
}

fn interval_text(cert: &Certificate) -> String {
    match cert.lambda_interval {
        Some([lo, hi]) => format!("lambda in ({lo:.6e}, {hi:.6e})"),
        None => format!("no certified interval: {}", cert.reasons.join("; ")),
    }
}

pub fn cmd_certify(cfg: &RunConfig) -> Result<Report, CliError> {
    let inst = instance(cfg, 1.0)?;
    let cert = certificate_for(cfg, &inst)?;
    Ok(Report {
        exit: u8::from(!cert.is_feasible()),
        json: serde_json::to_value(&cert).expect("serializable"),
        summary: interval_text(&cert),
    })
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn coordinate_header(domain: &Domain) -> &'static str {
    match domain {
        Domain::Interval { .. } => "x",
        Domain::Rectangle { .. } => "x,y",
        Domain::BallRadial { .. } => "r",
    }
}

/// One row per node: coordinates, then one column per solution.
pub fn solutions_csv(inst: &ProblemInstance, set: &SolutionSet) -> String {
    let grid = &inst.grid;
    let two_d = matches!(grid.domain, Domain::Rectangle { .. });
    let mut out = String::from(coordinate_header(&grid.domain));
    for j in 1..=set.len() {
        out.push_str(&format!(",u_{j}"));
    }
    out.push('\n');
    for (i, c) in grid.coords.iter().enumerate() {
        out.push_str(&format!("{:e}", c[0]));
        if two_d {
            out.push_str(&format!(",{:e}", c[1]));
        }
        for p in &set.points {
            out.push_str(&format!(",{:e}", p.u.values[i]));
        }
        out.push('\n');
    }
    out
}

fn hypotheses_block(inst: &ProblemInstance) -> Result<(), CliError> {
    if inst.hypotheses.any_fail() {
        return Err(CliError::Infeasible(format!("hypotheses failed: {}", inst.hypotheses.summary())));
    }
    Ok(())
}

pub fn cmd_solve(cfg: &RunConfig, base: &Path) -> Result<Report, CliError> {
    let lambda = cfg.lambda.ok_or_else(|| CliError::Invalid("solve needs lambda (config `lambda` or --lambda)".into()))?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(CliError::Invalid(format!("lambda = {lambda}: lambda > 0 is a parameter of the problem")));
    }
    let inst = instance(cfg, lambda)?;
    hypotheses_block(&inst)?;
    let opts = &cfg.solver;
    let set = deflate_and_search(&inst, opts.k_max, opts.n_starts, opts);
    let csv_path = resolve(base, &cfg.output.solutions);
    write_file(&csv_path, &solutions_csv(&inst, &set))?;
    let solutions: Vec<Value> = set
        .points
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let seed = opts.seed.wrapping_add(j as u64);
            json!({
                "index": j + 1,
                "energy": p.energy,
                "residual_norm": p.residual_norm,
                "sup_norm": p.u.values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
                "weak_residual_ratio": weak_residual_ratio(&inst, &p.u, WEAK_CHECK_DIRECTIONS, seed),
                "weak_solution": verify_weak_solution(&inst, &p.u, WEAK_CHECK_DIRECTIONS, seed, opts.tol),
                "starts_used": p.starts_used,
                "iterations": p.iterations,
            })
        })
        .collect();
    let json = json!({
        "lambda": lambda,
        "n_solutions": set.len(),
        "starts_tried": set.starts_tried,
        "solutions": solutions,
        "pairwise_dist": set.pairwise_dist,
        "solutions_csv": csv_path.display().to_string(),
    });
    Ok(Report {
        exit: u8::from(set.is_empty()),
        json,
        summary: format!("{} distinct solution(s) at lambda = {lambda:e}; wrote {}", set.len(), csv_path.display()),
    })
}

pub fn cmd_sweep(cfg: &RunConfig, base: &Path) -> Result<Report, CliError> {
    let inst = instance(cfg, 1.0)?;
    hypotheses_block(&inst)?;
    let (interval, source) = match cfg.sweep.interval {
        Some(i) => (i, "config"),
        None => {
            let cert = certificate_for(cfg, &inst)?;
            match cert.lambda_interval {
                Some(i) => (i, "certificate"),
                None => return Err(CliError::Infeasible(interval_text(&cert))),
            }
        }
    };
    let rows = lambda_sweep(&inst, interval, cfg.sweep.m, &cfg.solver)?;
    let csv_path = resolve(base, &cfg.output.sweep);
    write_file(&csv_path, &sweep_csv(&rows))?;
    let json = json!({
        "interval": interval,
        "interval_source": source,
        "rows": rows,
        "sweep_csv": csv_path.display().to_string(),
    });
    let counts: Vec<String> = rows.iter().map(|r| r.n_solutions.to_string()).collect();
    Ok(Report { exit: 0, json, summary: format!("counts per lambda: [{}]; wrote {}", counts.join(", "), csv_path.display()) })
}
