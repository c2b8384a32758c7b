//! Acceptance criteria 1 to 7. Each test writes one `criterion N: PASS|FAIL`
//! line straight to stderr, so the line shows even when output is captured.

use std::collections::VecDeque;
use std::io::Write;
use std::sync::OnceLock;
use std::thread;

use lattice_speedup::commands::{C_QUARTER, R_INF_QUARTER};
use lattice_speedup::solver::{solve_cell, solve_grid};
use lattice_speedup_core::bounds::{
    asymptotic_bound, c_alpha, multinomial_layer_count, precalc_bound, search_exponent, F_alpha,
};
use lattice_speedup_core::cost_sim::{simulate_cost_naive, simulate_cost_profile, CostSchedule};
use lattice_speedup_core::lattice::{classical_dp_path, random_subgraph_on, EdgeOracle, Grid, PathInstance, Vertex};
use lattice_speedup_core::optimizer::{
    check_appendix, published_k1, published_t, AlphaSchedule, MinimizeConfig, OptSolution, Warm,
};
use lattice_speedup_core::saddle::{verify_sandwich, SaddleOptions, SandwichTarget};
use lattice_speedup_core::smc::{smc_bruteforce, smc_dp, smc_dp_pairs, BoundedAnswer, SmcAnswer, SmcInstance};
use lattice_speedup_core::LatticeProfile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID_TOL: f64 = 1e-3;
const CURVE_TOL: f64 = 1e-3;
const CONSTANT_TOL: f64 = 1e-5;
const COST_REL_TOL: f64 = 1e-9;

fn report(n: u32, failures: &[String], summary: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {n}: {status} ({summary})");
    for f in failures.iter().take(20) {
        let _ = writeln!(err, "  criterion {n}: {f}");
    }
    drop(err);
    assert!(failures.is_empty(), "criterion {n} failed: {} problem(s), first: {}", failures.len(), failures[0]);
}

fn threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

fn grid() -> &'static Vec<Vec<OptSolution>> {
    static GRID: OnceLock<Vec<Vec<OptSolution>>> = OnceLock::new();
    GRID.get_or_init(|| solve_grid(6, 5, &MinimizeConfig::default(), threads()).expect("grid solve"))
}

fn curve() -> &'static Vec<(usize, f64)> {
    static CURVE: OnceLock<Vec<(usize, f64)>> = OnceLock::new();
    CURVE.get_or_init(|| {
        let cfg = MinimizeConfig::default();
        let mut prev: Option<OptSolution> = None;
        let mut out = Vec::new();
        for d in 1..=18 {
            let s = solve_cell(d, 1, &cfg, Warm { prev_digit: prev.as_ref(), prev_level: None }, threads())
                .expect("curve solve");
            out.push((d, s.objective));
            prev = Some(s);
        }
        out
    })
}

#[test]
fn criterion_1_grid_reproduction() {
    let g = grid();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        for d in 1..=6 {
            let t = g[k - 1][d - 1].objective;
            let p = published_t(d, k).unwrap();
            worst = worst.max((t - p).abs());
            if !((t - p).abs() <= GRID_TOL) {
                failures.push(format!("D={d} K={k}: {t:.6} vs {p:.6}"));
            }
        }
    }
    report(1, &failures, &format!("30 cells, max |diff| {worst:.2e}, tol {GRID_TOL:e}"));
}

#[test]
fn criterion_2_curve_reproduction() {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for &(d, t) in curve() {
        let p = published_k1(d).unwrap();
        worst = worst.max((t - p).abs());
        if !((t - p).abs() <= CURVE_TOL) {
            failures.push(format!("D={d}: {t:.6} vs {p:.6}"));
        }
    }
    report(2, &failures, &format!("D = 1..18, max |diff| {worst:.2e}, tol {CURVE_TOL:e}"));
}

#[test]
fn criterion_3_published_blocks() {
    // thresholds are the core's T_TOLERANCE (1e-4) and SLACK_TOLERANCE (-1e-4)
    let mut failures = Vec::new();
    for d in 1..=6 {
        let r = check_appendix(d).unwrap();
        if !r.passed() {
            failures.push(format!(
                "D={d}: max |T error| {:.3e}, min slack {:.3e}, {:?}",
                r.max_t_error(),
                r.min_slack(),
                r.mismatches
            ));
        }
    }
    report(3, &failures, "D = 1..6, |T error| <= 1e-4, slack >= -1e-4");
}

#[test]
fn criterion_4_constants_and_range() {
    let mut failures = Vec::new();
    let b = asymptotic_bound(0.25).unwrap();
    if !((b.c_alpha - C_QUARTER).abs() <= CONSTANT_TOL) {
        failures.push(format!("c_(1/4) = {:.7}", b.c_alpha));
    }
    if !((b.r_inf - R_INF_QUARTER).abs() <= CONSTANT_TOL) {
        failures.push(format!("r_inf(1/4) = {:.7}", b.r_inf));
    }
    let mut values: Vec<(usize, f64)> = grid().iter().flatten().map(|s| (s.d, s.objective)).collect();
    values.extend(curve().iter().copied());
    for &(d, t) in &values {
        let lo = (d as f64 + 1.0) / std::f64::consts::E;
        if !(lo <= t && t < d as f64 + 1.0) {
            failures.push(format!("D={d}: T_D = {t} outside [{lo}, {})", d + 1));
        }
    }
    report(4, &failures, &format!("constants within {CONSTANT_TOL:e}, {} exponents in range", values.len()));
}

#[test]
fn criterion_5_saddle_sandwich() {
    let opts = SaddleOptions::default();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = 0;
    while cases < 240 {
        let n1 = rng.gen_range(0..=40u32);
        let n2 = rng.gen_range(0..=40 - n1);
        if n1 + n2 == 0 {
            continue;
        }
        let profile = LatticeProfile::new(vec![0, n1, n2]);
        let w = rng.gen_range(0..=profile.max_weight()) as u32;
        let r = verify_sandwich(&profile, &[w], &SandwichTarget::P, &opts).unwrap();
        if !r.upper_bound_holds || r.ratio > 1.0 + 1e-9 {
            failures.push(format!("n1={n1} n2={n2} W={w}: ratio {}", r.ratio));
        }
        cases += 1;
    }
    // ratio^{1/n} must rise towards 1 along each family
    type Family = (&'static str, Vec<(LatticeProfile, Vec<u32>)>, SandwichTarget);
    let families: Vec<Family> = vec![
        (
            "central binomial",
            [5u32, 10, 20, 40].iter().map(|&h| (LatticeProfile::new(vec![0, 2 * h]), vec![h])).collect(),
            SandwichTarget::P,
        ),
        (
            "central trinomial",
            [2u32, 4, 8, 16, 32].iter().map(|&n| (LatticeProfile::uniform(2, n), vec![n])).collect(),
            SandwichTarget::P,
        ),
        (
            "search polynomial",
            [4u32, 8, 16, 32].iter().map(|&n| (LatticeProfile::new(vec![0, n]), vec![n / 4, n / 2])).collect(),
            SandwichTarget::S { k: 1, layers: 1, t: vec![1.0, 1.5] },
        ),
    ];
    for (name, members, target) in &families {
        let mut last = 0.0;
        for (p, w) in members {
            let r = verify_sandwich(p, w, target, &opts).unwrap();
            if !(r.upper_bound_holds && r.ratio > last && r.ratio <= 1.0 + 1e-9) {
                failures.push(format!("{name}, n={}: ratio {} after {last}", p.active(), r.ratio));
            }
            last = r.ratio;
        }
    }
    report(5, &failures, &format!("{cases} random cases with n <= 40, D <= 2, and 3 monotone families"));
}

fn bfs(grid: &Grid, oracle: &EdgeOracle, s: &[u32], t: &[u32]) -> bool {
    let mut adj = vec![Vec::new(); grid.len()];
    for e in oracle.present_edges() {
        adj[e.tail].push(e.tail + grid.stride(e.coord));
    }
    let inside = |v: usize| grid.coords(v).iter().zip(s).zip(t).all(|((x, lo), hi)| lo <= x && x <= hi);
    let (src, dst) = (grid.index(s), grid.index(t));
    let mut seen = vec![false; grid.len()];
    let mut queue = VecDeque::from([src]);
    seen[src] = true;
    while let Some(v) = queue.pop_front() {
        if v == dst {
            return true;
        }
        for &w in &adj[v] {
            if !seen[w] && inside(w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

#[test]
fn criterion_6_oracle_equivalences() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let path_cases = 1200;
    for _ in 0..path_cases {
        let n = rng.gen_range(1..=4usize);
        let dims: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let (mut s, mut t) = (Vec::new(), Vec::new());
        for &d in &dims {
            let (a, b) = (rng.gen_range(0..=d), rng.gen_range(0..=d));
            s.push(a.min(b));
            t.push(a.max(b));
        }
        if s == t {
            if t[0] < dims[0] {
                t[0] += 1;
            } else {
                s[0] -= 1;
            }
        }
        let grid = Grid::new(&dims).unwrap();
        let oracle = random_subgraph_on(grid.clone(), rng.gen_range(0.2..0.9), rng.gen()).unwrap();
        let expected = bfs(&grid, &oracle, &s, &t);
        let mut inst = PathInstance::new(Vertex(s.clone()), Vertex(t.clone()), oracle).unwrap();
        if classical_dp_path(&mut inst).reachable != expected {
            failures.push(format!("path dims {dims:?} s {s:?} t {t:?}"));
        }
    }

    let schedules = [
        CostSchedule::new(AlphaSchedule::single(vec![0.314447, 0.337219]).unwrap()),
        CostSchedule { flooring: false, ..CostSchedule::new(AlphaSchedule::single(vec![0.314447, 0.337219]).unwrap()) },
        CostSchedule::new(AlphaSchedule::new(vec![vec![0.2, 0.15], vec![0.35, 0.4]]).unwrap()),
        CostSchedule::new(AlphaSchedule::uniform(2, &[0.1, 0.25, 0.4]).unwrap()),
    ];
    let mut cost_cases = 0;
    for s in &schedules {
        for n0 in 0..=4u32 {
            for n1 in 0..=4 - n0 {
                for n2 in 0..=4 - n0 - n1 {
                    let p = LatticeProfile::new(vec![n0, n1, n2]);
                    let a = simulate_cost_naive(&p, s).unwrap().total;
                    let b = simulate_cost_profile(&p, s).unwrap().total;
                    if !((a - b).abs() <= COST_REL_TOL * a.abs().max(1.0)) {
                        failures.push(format!("cost {:?}: {a} vs {b}", p.counts()));
                    }
                    cost_cases += 1;
                }
            }
        }
    }

    let smc_cases = 600;
    for _ in 0..smc_cases {
        let n = rng.gen_range(1..=4usize);
        let m = rng.gen_range(1..=4usize);
        let d = rng.gen_range(0..=3u32);
        let sets: Vec<Vec<usize>> =
            (0..m).map(|_| (0..rng.gen_range(1..=n)).map(|_| rng.gen_range(0..n)).collect()).collect();
        let inst = SmcInstance::new(n, sets.clone(), d).unwrap();
        let a = smc_dp(&inst).unwrap();
        let b = smc_dp_pairs(&inst).unwrap();
        let c = smc_bruteforce(&inst, n as u32 * d);
        let agree = a == b
            && match a {
                SmcAnswer::Cover(k) => c == BoundedAnswer::Cover(k),
                SmcAnswer::Infeasible => c == BoundedAnswer::ExceedsLimit,
            };
        if !agree {
            failures.push(format!("smc n={n} D={d} sets {sets:?}: {a:?} {b:?} {c:?}"));
        }
    }
    report(
        6,
        &failures,
        &format!("{path_cases} path instances, {cost_cases} cost instances, {smc_cases} set-multicover instances"),
    );
}

#[test]
fn criterion_7_lower_bound_properties() {
    let mut failures = Vec::new();
    let alphas: Vec<f64> = (1..50).map(|i| i as f64 / 100.0).collect();
    let mut last_c = 0.0;
    for &a in &alphas {
        let c = c_alpha(a).unwrap();
        if !(c > last_c) {
            failures.push(format!("c_alpha not increasing at {a}"));
        }
        last_c = c;
        let mut prev = f64::INFINITY;
        for d in 1..=200 {
            let df = d as f64;
            let b = precalc_bound(df, a).unwrap();
            let (lo, hi) = b.x_bounds();
            if !(lo <= b.x && b.x <= hi) {
                failures.push(format!("x bound alpha {a} D {d}: {lo} <= {} <= {hi}", b.x));
            }
            let f = F_alpha(df, a).unwrap();
            let v = f / (df + 1.0);
            if !(v < prev) {
                failures.push(format!("F/(D+1) not decreasing at alpha {a} D {d}"));
            }
            prev = v;
            if !(f >= (df + 1.0) * c) {
                failures.push(format!("F below (D+1)c at alpha {a} D {d}"));
            }
        }
    }
    for d in 1..=5u64 {
        for n in (d + 1..=60).step_by(d as usize + 1) {
            if !multinomial_layer_count(n, d).unwrap().bound_holds() {
                failures.push(format!("multinomial n {n} D {d}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let schedules = 500;
    for _ in 0..schedules {
        let d = rng.gen_range(1..=30u64);
        let mut rest: Vec<f64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0.2501..0.5)).collect();
        rest.sort_by(f64::total_cmp);
        let mut chain = vec![rng.gen_range(0.0..=0.25)];
        chain.extend(rest);
        chain.push(0.5);
        let e = search_exponent(&chain, d).unwrap();
        if !e.bound_holds() {
            failures.push(format!("search exponent {chain:?} D {d}: {}", e.total));
        }
    }
    report(7, &failures, &format!("49 alphas x D = 1..200, multinomials n <= 60, {schedules} schedules"));
}
