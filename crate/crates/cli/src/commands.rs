use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use lattice_speedup_core::bounds::{asymptotic_bound, precalc_bound};
use lattice_speedup_core::cost_sim::{compare_to_ansatz, simulate_cost_naive, simulate_cost_profile, CostSchedule};
use lattice_speedup_core::lattice::{classical_dp_path, random_subgraph, Edge, EdgeOracle, Grid, PathInstance};
use lattice_speedup_core::optimizer::{
    check_appendix, published_k1, published_t, AlphaSchedule, MinimizeConfig, OptSolution, Warm,
};
use lattice_speedup_core::polynomials::build_p;
use lattice_speedup_core::saddle::{verify_sandwich, SaddleOptions, SandwichTarget};
use lattice_speedup_core::smc::{smc_bruteforce, smc_dp, smc_dp_pairs, BoundedAnswer, SmcAnswer, SmcInstance};
use lattice_speedup_core::LatticeProfile;

use crate::args::*;
use crate::output::{emit, sig6, Report};
use crate::solver::{solve_cell, solve_grid};
use crate::UsageError;

/// Reference constants at `alpha = 1/4`.
pub const R_INF_QUARTER: f64 = 0.278279;
pub const C_QUARTER: f64 = 0.664554;

fn config(s: &SolverArgs) -> MinimizeConfig {
    MinimizeConfig { restarts: s.restarts, seed: s.seed, ..MinimizeConfig::default() }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("parsing {}: {e}", path.display())).into())
}

fn solution_json(s: &OptSolution, published: Option<f64>) -> Value {
    json!({
        "D": s.d,
        "K": s.k,
        "T": s.evaluation.t,
        "T_D": s.objective,
        "published": published,
        "alpha": s.schedule.rows(),
        "vars": s.vars,
        "diagnostics": s.diagnostics,
    })
}

/// `--verify` comparison of one value; prints to stderr and returns whether it passed.
fn check(label: &str, computed: f64, published: f64, tol: f64) -> bool {
    let diff = computed - published;
    if diff < -tol {
        eprintln!("IMPROVED {label}: computed {computed:.6} is below the reference {published:.6} by {:.2e}", -diff);
        false
    } else if diff > tol || !diff.is_finite() {
        eprintln!("MISMATCH {label}: computed {computed:.6}, reference {published:.6}, diff {diff:.2e}");
        false
    } else {
        true
    }
}

pub fn tables(a: &TablesArgs) -> Result<bool> {
    let cfg = config(&a.solver);
    let grid = solve_grid(a.d.1, a.k.1, &cfg, a.solver.threads)?;
    let mut header = vec!["D".to_string(), "K".to_string()];
    header.extend((1..=a.d.1).map(|j| format!("T_{j}")));
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut ok = true;
    for k in a.k.0..=a.k.1 {
        for d in a.d.0..=a.d.1 {
            let s = &grid[k - 1][d - 1];
            let mut row = vec![d.to_string(), k.to_string()];
            row.extend((0..a.d.1).map(|j| s.evaluation.t.get(j).map_or(String::new(), |&t| sig6(t))));
            rows.push(row);
            let published = published_t(d, k);
            if a.verify {
                match published {
                    Some(p) => ok &= check(&format!("D={d} K={k}"), s.objective, p, a.tol),
                    None => eprintln!("no reference value for D={d} K={k}"),
                }
            }
            cells.push(solution_json(s, published));
        }
    }
    emit(&a.output, &Report { header, rows, json: json!({ "tol": a.tol, "cells": cells }) })?;
    if a.verify {
        eprintln!("{}", if ok { "verify: PASS" } else { "verify: FAIL" });
    }
    Ok(ok)
}

pub fn figure(a: &FigureArgs) -> Result<bool> {
    let cfg = config(&a.solver);
    let mut prev: Option<OptSolution> = None;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut ok = true;
    for d in 1..=a.d.1 {
        let s = solve_cell(d, 1, &cfg, Warm { prev_digit: prev.as_ref(), prev_level: None }, a.solver.threads)?;
        if d >= a.d.0 {
            let advantage = d as f64 + 1.0 - s.objective;
            rows.push(vec![d.to_string(), sig6(s.objective), sig6(advantage)]);
            let published = published_k1(d);
            if a.verify {
                match published {
                    Some(p) => ok &= check(&format!("D={d}"), s.objective, p, a.tol),
                    None => eprintln!("no reference value for D={d}"),
                }
            }
            points.push(json!({ "D": d, "T_D": s.objective, "advantage": advantage, "published": published }));
        }
        prev = Some(s);
    }
    let header = ["D", "T_D", "advantage"].map(String::from).to_vec();
    emit(&a.output, &Report { header, rows, json: json!({ "tol": a.tol, "points": points }) })?;
    if a.verify {
        eprintln!("{}", if ok { "verify: PASS" } else { "verify: FAIL" });
    }
    Ok(ok)
}

pub fn appendix(a: &AppendixArgs) -> Result<bool> {
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for d in a.d.0..=a.d.1 {
        let r = check_appendix(d)?;
        let status = if r.passed() { "ok" } else { "mismatch" };
        rows.push(vec![
            d.to_string(),
            sig6(*r.published.last().expect("D >= 1")),
            sig6(r.evaluation.objective()),
            format!("{:.3e}", r.max_t_error()),
            format!("{:.3e}", r.min_slack()),
            status.to_string(),
        ]);
        if a.verify && !r.passed() {
            ok = false;
            for m in &r.mismatches {
                eprintln!("MISMATCH D={d}: {m:?}");
            }
        }
        reports.push(json!({ "passed": r.passed(), "report": r }));
    }
    let header = ["D", "T_D_published", "T_D_computed", "max_T_error", "min_slack", "status"].map(String::from).to_vec();
    emit(&a.output, &Report { header, rows, json: Value::Array(reports) })?;
    if a.verify {
        eprintln!("{}", if ok { "verify: PASS" } else { "verify: FAIL" });
    }
    Ok(ok)
}

pub fn bounds(a: &BoundsArgs) -> Result<bool> {
    let header = ["alpha", "r_inf", "c_alpha", "D", "x_D", "F_alpha", "F_over_D_plus_1"].map(String::from).to_vec();
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut ok = true;
    for &alpha in &a.alpha {
        let asym = asymptotic_bound(alpha)?;
        let head = vec![alpha.to_string(), sig6(asym.r_inf), sig6(asym.c_alpha)];
        let mut table = Vec::new();
        match a.d {
            None => rows.push([head.clone(), vec![String::new(); 4]].concat()),
            Some((lo, hi)) => {
                for d in lo..=hi {
                    let b = precalc_bound(d as f64, alpha)?;
                    let ratio = b.f / (d as f64 + 1.0);
                    rows.push([head.clone(), vec![d.to_string(), sig6(b.x), sig6(b.f), sig6(ratio)]].concat());
                    table.push(json!({ "D": d, "x_D": b.x, "F_alpha": b.f, "F_over_D_plus_1": ratio }));
                }
            }
        }
        if a.verify && alpha == 0.25 {
            ok &= check("r_inf(1/4)", asym.r_inf, R_INF_QUARTER, a.tol);
            ok &= check("c_(1/4)", asym.c_alpha, C_QUARTER, a.tol);
        }
        out.push(json!({ "alpha": alpha, "r_inf": asym.r_inf, "c_alpha": asym.c_alpha, "table": table }));
    }
    if a.verify && !a.alpha.contains(&0.25) {
        eprintln!("--verify checks alpha = 0.25, which was not requested");
    }
    emit(&a.output, &Report { header, rows, json: Value::Array(out) })?;
    if a.verify {
        eprintln!("{}", if ok { "verify: PASS" } else { "verify: FAIL" });
    }
    Ok(ok)
}

pub fn coeff(a: &CoeffArgs) -> Result<bool> {
    let profile = LatticeProfile::new(a.profile.clone());
    let (target, exact) = match a.which {
        PolyKind::P => {
            let exact = a.w.first().map(|&w| build_p(&profile).coeff(w as i64).to_string());
            (SandwichTarget::P, exact)
        }
        PolyKind::S => {
            let t = a.t.clone().unwrap_or_else(|| vec![1.0; profile.max_digit() + 1]);
            (SandwichTarget::S { k: a.k, layers: a.levels, t }, None)
        }
    };
    let r = verify_sandwich(&profile, &a.w, &target, &SaddleOptions::default())?;
    let coefficient = exact.map_or_else(|| json!(r.log_coefficient.exp()), Value::String);
    let json = json!({
        "profile": profile,
        "targets": r.targets,
        "n": r.n,
        "coefficient": coefficient,
        "log_coefficient": r.log_coefficient,
        "saddle_value": r.saddle.value,
        "saddle_x": r.saddle.x,
        "saddle_converged": r.saddle.converged,
        "saddle_boundary": r.saddle.boundary,
        "ratio": r.ratio,
        "upper_bound_holds": r.upper_bound_holds,
    });
    emit(&a.output, &Report::json_only(json))?;
    Ok(true)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmcFile {
    n: usize,
    #[serde(rename = "D")]
    d: u32,
    sets: Vec<Vec<usize>>,
}

pub fn smc(a: &SmcArgs) -> Result<bool> {
    let f: SmcFile = read_json(&a.instance)?;
    let inst = SmcInstance::from_one_based(f.n, f.sets, f.d)?;
    let json = match a.solver {
        SmcSolver::Dp | SmcSolver::Pairs => {
            let ans = if a.solver == SmcSolver::Dp { smc_dp(&inst)? } else { smc_dp_pairs(&inst)? };
            match ans {
                SmcAnswer::Cover(k) => json!({ "k": k }),
                SmcAnswer::Infeasible => json!({ "infeasible": true }),
            }
        }
        SmcSolver::Brute if !inst.is_feasible() => json!({ "infeasible": true }),
        SmcSolver::Brute => match smc_bruteforce(&inst, a.k_max) {
            BoundedAnswer::Cover(k) => json!({ "k": k }),
            BoundedAnswer::ExceedsLimit => json!({ "exceeds_limit": true, "k_max": a.k_max }),
        },
    };
    emit(&a.output, &Report::json_only(json))?;
    Ok(true)
}

pub fn simulate(a: &SimulateArgs) -> Result<bool> {
    let profile = LatticeProfile::new(a.profile.clone());
    let schedule = CostSchedule { alpha: AlphaSchedule::new(a.alpha.0.clone())?, flooring: !a.no_floor };
    let report =
        if a.naive { simulate_cost_naive(&profile, &schedule)? } else { simulate_cost_profile(&profile, &schedule)? };
    let mut json = json!({
        "profile": profile,
        "method": if a.naive { "naive" } else { "profile" },
        "flooring": schedule.flooring,
        "layer_weights": schedule.layer_weights(&profile),
        "total": report.total,
        "precalc": report.precalc,
        "search_levels": report.search_levels,
        "classical": report.classical,
        "depth": report.depth,
        "depth_bound": report.depth_bound(),
        "memo_size": report.memo_size,
    });
    if let Some(t) = &a.t {
        let cmp = compare_to_ansatz(&profile, &schedule, t)?;
        json["ansatz"] = json!({ "T": t, "value": cmp.ansatz, "ratio": report.total / cmp.ansatz });
    }
    emit(&a.output, &Report::json_only(json))?;
    Ok(true)
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum PathFile {
    Explicit { d: Vec<u32>, edges: Vec<(usize, usize)> },
    Random { profile: Vec<u32>, p: f64, seed: u64 },
}

pub fn path(a: &PathArgs) -> Result<bool> {
    let oracle = match read_json::<PathFile>(&a.instance)? {
        PathFile::Explicit { d, edges } => {
            let edges: Vec<Edge> = edges.into_iter().map(|(tail, coord)| Edge { tail, coord }).collect();
            EdgeOracle::from_edges(Grid::new(&d)?, &edges)?
        }
        PathFile::Random { profile, p, seed } => random_subgraph(&LatticeProfile::new(profile), p, seed)?,
    };
    let mut inst = PathInstance::whole(oracle).context("instance needs at least one coordinate with d_i >= 1")?;
    let out = classical_dp_path(&mut inst);
    emit(&a.output, &Report::json_only(json!({ "reachable": out.reachable, "queries": out.queries })))?;
    Ok(true)
}
