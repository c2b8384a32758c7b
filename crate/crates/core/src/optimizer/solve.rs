use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::reference::published_block;
use super::{evaluate_t, AlphaSchedule, InnerVars, OptEvaluation};
use crate::error::invalid;
use crate::linalg::dot;
use crate::math;
use crate::polynomials::chain_terms;
use crate::{Error, Result};

/// Settings for the multi-start minimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MinimizeConfig {
    /// Jittered restarts on top of the deterministic starts.
    pub restarts: usize,
    pub seed: u64,
    /// Gradient tolerance of the final inner solve.
    pub tol: f64,
    pub max_outer: usize,
    pub max_inner: usize,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        Self { restarts: 16, seed: 0, tol: 1e-9, max_outer: 40, max_inner: 600 }
    }
}

/// Where a starting point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StartKind {
    Default,
    Published,
    ExtendDigit,
    InsertTop,
    InsertBottom,
    Jitter,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Start {
    pub index: usize,
    pub kind: StartKind,
    z: Vec<f64>,
}

/// Outcome of one local solve.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalSolution {
    pub start: usize,
    pub kind: StartKind,
    /// `None` when the decoded point is not a valid, feasible schedule.
    pub found: Option<(AlphaSchedule, InnerVars, OptEvaluation)>,
    pub objective: f64,
    pub evaluations: usize,
    pub outer_iterations: usize,
    /// Largest constraint violation of the smooth program at termination.
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptDiagnostics {
    pub starts: usize,
    pub feasible_starts: usize,
    pub evaluations: usize,
    pub best_start: usize,
    pub best_kind: StartKind,
    /// Feasible starts whose objective is within `1e-6` of the best.
    pub agreeing_starts: usize,
    /// Largest minus smallest feasible local objective.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptSolution {
    pub d: usize,
    pub k: usize,
    pub schedule: AlphaSchedule,
    pub vars: InnerVars,
    pub evaluation: OptEvaluation,
    /// `T_D`.
    pub objective: f64,
    pub diagnostics: OptDiagnostics,
}

/// Earlier solutions used to seed a solve.
#[derive(Debug, Clone, Copy, Default)]
pub struct Warm<'a> {
    /// Solution for `(D-1, K)`.
    pub prev_digit: Option<&'a OptSolution>,
    /// Solution for `(D, K-1)`.
    pub prev_level: Option<&'a OptSolution>,
}

struct Search {
    k: usize,
    d: usize,
    m: usize,
    shifts: Vec<usize>,
    exps: Vec<f64>,
}

/// The smooth program in log coordinates.
///
/// Variables: `theta` (`K*D`, softmax gaps of the alpha columns), `u = ln x`,
/// `u_k = ln x_{k,.}` for each level and `t_d = ln T_d`. Every constraint reads
/// `g(z) >= 0` and the objective is `t_D`.
pub struct OptProblem {
    d: usize,
    k: usize,
    n: usize,
    block: Vec<usize>,
    searches: Vec<Search>,
}

impl OptProblem {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(invalid!(InvalidArgument, "need D >= 1 and K >= 1"));
        }
        let mut block = Vec::with_capacity(k);
        let mut off = k * d + 1;
        for lvl in 1..=k {
            block.push(off);
            off += k + 2 - lvl;
        }
        let n = off + d;
        let mut searches = Vec::new();
        for dd in 1..=d {
            for lvl in 1..=k {
                let terms = chain_terms(dd as u32, lvl, k);
                let m = k + 2 - lvl;
                let shifts = terms.iter().map(|c| c.shift).collect();
                let exps = terms.iter().flat_map(|c| c.exps.iter().map(|&p| p as f64)).collect();
                searches.push(Search { k: lvl, d: dd, m, shifts, exps });
            }
        }
        Ok(Self { d, k, n, block, searches })
    }

    pub fn digits(&self) -> usize {
        self.d
    }

    pub fn layers(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    fn theta(&self, k: usize, d: usize) -> usize {
        (k - 1) * self.d + d - 1
    }

    fn u(&self) -> usize {
        self.k * self.d
    }

    fn t(&self, d: usize) -> usize {
        self.n - self.d + d - 1
    }

    fn constraint_count(&self) -> usize {
        self.d * (self.k + 1)
    }

    /// `(s, alpha)` per digit: `s[d-1]` has `K+1` softmax weights and
    /// `alpha[d-1][k-1]` for `k = 1..=K+1`.
    fn alphas(&self, z: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let (kk, dd) = (self.k, self.d);
        let mut s_all = Vec::with_capacity(dd);
        let mut a_all = Vec::with_capacity(dd);
        for d in 1..=dd {
            let mut th: Vec<f64> = (1..=kk).map(|k| z[self.theta(k, d)]).collect();
            th.push(0.0);
            let mx = th.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut s: Vec<f64> = th.iter().map(|&v| math::exp(v - mx)).collect();
            let tot: f64 = s.iter().sum();
            s.iter_mut().for_each(|v| *v /= tot);
            let mut a = Vec::with_capacity(kk + 1);
            let mut acc = 0.0;
            for &sm in &s[..kk] {
                acc += sm;
                a.push(0.5 * acc);
            }
            a.push(0.5);
            s_all.push(s);
            a_all.push(a);
        }
        (s_all, a_all)
    }

    /// Constraint values, plus `sum_i coef[i] * grad g_i` added into `grad`.
    fn constraints(&self, z: &[f64], out: &mut [f64], grad: Option<(&[f64], &mut [f64])>) {
        let (s, a) = self.alphas(z);
        let kk = self.k;
        let u = z[self.u()];
        let mut grad = grad;
        let mut scratch = Vec::new();
        let mut idx = 0;
        for d in 1..=self.d {
            let df = d as f64;
            let td = z[self.t(d)];
            let al = &a[d - 1];
            // precalculation
            let mx = if u > 0.0 { df * u } else { 0.0 };
            let mut sum = 0.0;
            let mut mean = 0.0;
            for i in 0..=d {
                let w = math::exp(i as f64 * u - mx);
                sum += w;
                mean += i as f64 * w;
            }
            mean /= sum;
            out[idx] = td - (mx + math::ln(sum)) + al[0] * df * u;
            if let Some((coef, g)) = grad.as_mut() {
                let c = coef[idx];
                if c != 0.0 {
                    g[self.t(d)] += c;
                    g[self.u()] += c * (al[0] * df - mean);
                    for m in 1..=kk {
                        let da = s[d - 1][m - 1] * (if m <= 1 { 0.5 } else { 0.0 } - al[0]);
                        g[self.theta(m, d)] += c * df * u * da;
                    }
                }
            }
            idx += 1;
            for se in self.searches.iter().filter(|se| se.d == d) {
                let off = self.block[se.k - 1];
                let uk = &z[off..off + se.m];
                scratch.clear();
                let mut mx = f64::NEG_INFINITY;
                for (tau, &sh) in se.shifts.iter().enumerate() {
                    let e = &se.exps[tau * se.m..(tau + 1) * se.m];
                    let ts = if sh == 0 { 0.0 } else { z[self.t(sh)] };
                    let v = 2.0 * ts + dot(e, uk);
                    mx = mx.max(v);
                    scratch.push(v);
                }
                let mut sum = 0.0;
                for v in scratch.iter_mut() {
                    *v = math::exp(*v - mx);
                    sum += *v;
                }
                let lin: f64 = (0..se.m).map(|jl| al[se.k + jl - 1] * uk[jl]).sum();
                out[idx] = 2.0 * td - (mx + math::ln(sum)) + df * lin;
                if let Some((coef, g)) = grad.as_mut() {
                    let c = coef[idx];
                    if c != 0.0 {
                        g[self.t(d)] += 2.0 * c;
                        for (tau, &sh) in se.shifts.iter().enumerate() {
                            let w = scratch[tau] / sum;
                            if sh > 0 {
                                g[self.t(sh)] -= 2.0 * c * w;
                            }
                            let e = &se.exps[tau * se.m..(tau + 1) * se.m];
                            for jl in 0..se.m {
                                g[off + jl] -= c * w * e[jl];
                            }
                        }
                        for jl in 0..se.m {
                            let lvl = se.k + jl;
                            g[off + jl] += c * df * al[lvl - 1];
                            if lvl > kk {
                                continue;
                            }
                            for m in 1..=kk {
                                let da = s[d - 1][m - 1] * (if m <= lvl { 0.5 } else { 0.0 } - al[lvl - 1]);
                                g[self.theta(m, d)] += c * df * uk[jl] * da;
                            }
                        }
                    }
                }
                idx += 1;
            }
        }
    }

    /// Map a point to a schedule and saddle variables.
    pub fn decode(&self, z: &[f64]) -> Result<(AlphaSchedule, InnerVars)> {
        let (_, a) = self.alphas(z);
        let rows = (1..=self.k).map(|k| (1..=self.d).map(|d| a[d - 1][k - 1]).collect()).collect();
        let schedule = AlphaSchedule::new(rows)?;
        let xs = (1..=self.k)
            .map(|k| {
                let off = self.block[k - 1];
                z[off..off + self.k + 2 - k].iter().map(|&v| math::exp(v)).collect()
            })
            .collect();
        Ok((schedule, InnerVars::new(math::exp(z[self.u()]), xs)))
    }

    /// Map a schedule, saddle variables and exponents to a point.
    pub fn encode(&self, schedule: &AlphaSchedule, vars: &InnerVars, t: &[f64]) -> Result<Vec<f64>> {
        if schedule.layers() != self.k || schedule.max_digit() != self.d || t.len() != self.d {
            return Err(invalid!(InvalidArgument, "shape does not match D = {}, K = {}", self.d, self.k));
        }
        let mut z = vec![0.0; self.n];
        for d in 1..=self.d {
            let last = 1.0 - 2.0 * schedule.alpha(self.k, d);
            let mut prev = 0.0;
            for k in 1..=self.k {
                let a = schedule.alpha(k, d);
                z[self.theta(k, d)] = math::ln(2.0 * (a - prev) / last);
                prev = a;
            }
        }
        z[self.u()] = math::ln(vars.x);
        for k in 1..=self.k {
            let off = self.block[k - 1];
            let row = vars.xs.get(k - 1).filter(|r| r.len() == self.k + 2 - k);
            let Some(row) = row else {
                return Err(invalid!(InvalidArgument, "x variables do not match K = {}", self.k));
            };
            for (j, &v) in row.iter().enumerate() {
                z[off + j] = math::ln(v);
            }
        }
        for d in 1..=self.d {
            z[self.t(d)] = math::ln(t[d - 1]);
        }
        Ok(z)
    }

    fn default_start(&self) -> Vec<f64> {
        let (kk, dd) = (self.k, self.d);
        let rows = (1..=kk).map(|k| vec![0.3 + 0.15 * (k - 1) as f64 / kk as f64; dd]).collect();
        let schedule = AlphaSchedule::new(rows).expect("valid default schedule");
        let xs = (1..=kk)
            .map(|k| {
                let mut v = vec![-2.0 / (kk + 1 - k) as f64; kk + 2 - k];
                v[0] = 1.7;
                v.into_iter().map(math::exp).collect()
            })
            .collect();
        let t: Vec<f64> = (1..=dd).map(|d| 0.999 * (d as f64 + 1.0)).collect();
        self.encode(&schedule, &InnerVars::new(math::exp(-0.5), xs), &t).expect("consistent shape")
    }

    fn published_start(&self) -> Option<Vec<f64>> {
        if self.k != 1 {
            return None;
        }
        let b = published_block(self.d)?;
        let schedule = AlphaSchedule::single(b.alpha.to_vec()).ok()?;
        self.encode(&schedule, &InnerVars::new(b.x, vec![vec![b.x11, b.x12]]), b.t).ok()
    }

    fn extend_digit(&self, prev: &OptSolution) -> Option<Vec<f64>> {
        if prev.k != self.k || prev.d + 1 != self.d {
            return None;
        }
        let p = OptProblem::new(prev.d, prev.k).ok()?;
        let old = p.encode(&prev.schedule, &prev.vars, &prev.evaluation.t).ok()?;
        let mut z = vec![0.0; self.n];
        for k in 1..=self.k {
            for d in 1..=prev.d {
                z[self.theta(k, d)] = old[p.theta(k, d)];
            }
            let last = old[p.theta(k, prev.d)];
            z[self.theta(k, self.d)] =
                if prev.d >= 2 { 2.0 * last - old[p.theta(k, prev.d - 1)] } else { last };
        }
        let copy = self.block[0]..self.t(1);
        z[self.u()] = old[p.u()];
        z[copy.clone()].copy_from_slice(&old[p.block[0]..p.t(1)]);
        for d in 1..=prev.d {
            z[self.t(d)] = old[p.t(d)];
        }
        z[self.t(self.d)] = math::ln(prev.objective + 0.95);
        Some(z)
    }

    fn insert_level(&self, prev: &OptSolution, top: bool) -> Option<Vec<f64>> {
        if prev.d != self.d || prev.k + 1 != self.k {
            return None;
        }
        let old = prev.schedule.rows();
        let mut rows = Vec::with_capacity(self.k);
        let mut xs = Vec::with_capacity(self.k);
        if top {
            rows.extend(old.iter().cloned());
            rows.push((1..=self.d).map(|d| 0.5 * (prev.schedule.alpha(prev.k, d) + 0.5)).collect());
            for row in &prev.vars.xs {
                // split the segment ending at the middle layer
                let mut r = row.clone();
                let last = *r.last()?;
                let half = math::sqrt(last);
                *r.last_mut()? = half;
                r.push(half);
                xs.push(r);
            }
            xs.push(prev.vars.xs.last()?.clone());
        } else {
            rows.push(old[0].iter().map(|a| 0.5 * a).collect());
            rows.extend(old.iter().cloned());
            let mut first = prev.vars.xs[0].clone();
            first.insert(0, first[0]);
            xs.push(first);
            xs.extend(prev.vars.xs.iter().cloned());
        }
        let schedule = AlphaSchedule::new(rows).ok()?;
        self.encode(&schedule, &InnerVars::new(prev.vars.x, xs), &prev.evaluation.t).ok()
    }

    /// Deterministic starts, then jittered copies of them.
    pub fn starts(&self, config: &MinimizeConfig, warm: Warm<'_>) -> Vec<Start> {
        let mut base: Vec<(StartKind, Vec<f64>)> = vec![(StartKind::Default, self.default_start())];
        if let Some(z) = self.published_start() {
            base.push((StartKind::Published, z));
        }
        if let Some(z) = warm.prev_digit.and_then(|p| self.extend_digit(p)) {
            base.push((StartKind::ExtendDigit, z));
        }
        if let Some(p) = warm.prev_level {
            if let Some(z) = self.insert_level(p, true) {
                base.push((StartKind::InsertTop, z));
            }
            if let Some(z) = self.insert_level(p, false) {
                base.push((StartKind::InsertBottom, z));
            }
        }
        let nb = base.len();
        let mut out: Vec<Start> =
            base.iter().enumerate().map(|(i, (kind, z))| Start { index: i, kind: *kind, z: z.clone() }).collect();
        let tag = ((self.d as u64) << 40) ^ ((self.k as u64) << 20);
        for i in 0..config.restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ tag ^ i as u64);
            let mut z = base[i % nb].1.clone();
            let tstart = self.t(1);
            for (j, v) in z.iter_mut().enumerate() {
                *v += if j >= tstart { rng.gen_range(0.0..0.3) } else { rng.gen_range(-0.5..0.5) };
            }
            out.push(Start { index: nb + i, kind: StartKind::Jitter, z });
        }
        out
    }

    /// Augmented Lagrangian value and gradient.
    fn lagrangian(&self, z: &[f64], lam: &[f64], rho: f64, gvals: &mut [f64], grad: &mut [f64]) -> f64 {
        self.constraints(z, gvals, None);
        let mut val = z[self.t(self.d)];
        let mut coef = vec![0.0; gvals.len()];
        for i in 0..gvals.len() {
            let p = (lam[i] - rho * gvals[i]).max(0.0);
            val += (p * p - lam[i] * lam[i]) / (2.0 * rho);
            coef[i] = -p;
        }
        grad.iter_mut().for_each(|g| *g = 0.0);
        grad[self.t(self.d)] = 1.0;
        self.constraints(z, gvals, Some((&coef, grad)));
        val
    }

    /// Minimize `L(., lam, rho)` by BFGS; returns evaluations used.
    fn bfgs(&self, z: &mut [f64], lam: &[f64], rho: f64, tol: f64, max_iter: usize) -> usize {
        let n = self.n;
        let mut gv = vec![0.0; lam.len()];
        let mut g = vec![0.0; n];
        let mut g_new = vec![0.0; n];
        let mut trial = vec![0.0; n];
        let mut h = vec![0.0; n * n];
        let reset = |h: &mut Vec<f64>| {
            h.iter_mut().for_each(|v| *v = 0.0);
            (0..n).for_each(|i| h[i * n + i] = 1.0);
        };
        reset(&mut h);
        let mut fresh = true;
        let mut f = self.lagrangian(z, lam, rho, &mut gv, &mut g);
        let mut evals = 1;
        for _ in 0..max_iter {
            if g.iter().all(|v| v.abs() <= tol) || !f.is_finite() {
                break;
            }
            let mut p: Vec<f64> = (0..n).map(|i| -dot(&h[i * n..(i + 1) * n], &g)).collect();
            let mut slope = dot(&p, &g);
            if slope >= 0.0 {
                reset(&mut h);
                fresh = true;
                p = g.iter().map(|v| -v).collect();
                slope = dot(&p, &g);
            }
            let big = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if big > 2.0 {
                let sc = 2.0 / big;
                p.iter_mut().for_each(|v| *v *= sc);
                slope *= sc;
            }
            let mut step = 1.0;
            let mut f_new = f64::INFINITY;
            let mut accepted = false;
            for _ in 0..50 {
                for i in 0..n {
                    trial[i] = z[i] + step * p[i];
                }
                f_new = self.lagrangian(&trial, lam, rho, &mut gv, &mut g_new);
                evals += 1;
                if f_new.is_finite() && f_new <= f + 1e-4 * step * slope {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                if fresh {
                    break;
                }
                reset(&mut h);
                fresh = true;
                continue;
            }
            let s: Vec<f64> = p.iter().map(|v| step * v).collect();
            let y: Vec<f64> = (0..n).map(|i| g_new[i] - g[i]).collect();
            let sy = dot(&s, &y);
            if sy > 1e-16 {
                if fresh {
                    let scale = sy / dot(&y, &y);
                    h.iter_mut().for_each(|v| *v *= scale);
                }
                let hy: Vec<f64> = (0..n).map(|i| dot(&h[i * n..(i + 1) * n], &y)).collect();
                let yhy = dot(&y, &hy);
                let r = 1.0 / sy;
                for i in 0..n {
                    for j in 0..n {
                        h[i * n + j] += -r * (s[i] * hy[j] + hy[i] * s[j]) + (r * r * yhy + r) * s[i] * s[j];
                    }
                }
                fresh = false;
            }
            let df = f - f_new;
            z.copy_from_slice(&trial);
            core::mem::swap(&mut g, &mut g_new);
            f = f_new;
            if df.abs() <= 1e-16 * (1.0 + f.abs()) {
                break;
            }
        }
        evals
    }

    /// Run the augmented Lagrangian method from one start.
    pub fn solve_from(&self, start: &Start, config: &MinimizeConfig) -> LocalSolution {
        let mcount = self.constraint_count();
        let mut z = start.z.clone();
        let mut lam = vec![0.0; mcount];
        let mut gv = vec![0.0; mcount];
        let mut rho = 10.0;
        let mut prev_viol = f64::INFINITY;
        let mut evals = 0;
        let mut outer = 0;
        let mut viol = f64::INFINITY;
        for it in 0..config.max_outer {
            outer = it + 1;
            let tol = config.tol.max(math::powi(0.1, (it + 3).min(60) as u32));
            evals += self.bfgs(&mut z, &lam, rho, tol, config.max_inner);
            self.constraints(&z, &mut gv, None);
            viol = 0.0;
            let mut comp = 0.0f64;
            for i in 0..mcount {
                viol = f64::max(viol, -gv[i]);
                comp = comp.max(gv[i].min(lam[i] / rho).abs());
                lam[i] = (lam[i] - rho * gv[i]).max(0.0);
            }
            if !viol.is_finite() || z.iter().any(|v| !v.is_finite()) {
                break;
            }
            if comp <= 1e-10 && tol <= config.tol {
                break;
            }
            if comp > 0.25 * prev_viol {
                rho = (rho * 10.0).min(1e9);
            }
            prev_viol = comp;
        }
        let found = self.decode(&z).ok().and_then(|(s, v)| {
            let e = evaluate_t(&s, &v).ok()?;
            e.feasible.then_some((s, v, e))
        });
        let objective = found.as_ref().map_or(f64::INFINITY, |f| f.2.objective());
        LocalSolution {
            start: start.index,
            kind: start.kind,
            found,
            objective,
            evaluations: evals,
            outer_iterations: outer,
            violation: viol.max(0.0),
        }
    }

    /// Best feasible local solution; ties go to the earlier start.
    pub fn select(&self, locals: Vec<LocalSolution>) -> Result<OptSolution> {
        let starts = locals.len();
        let evaluations = locals.iter().map(|l| l.evaluations).sum();
        let feasible: Vec<&LocalSolution> = locals.iter().filter(|l| l.found.is_some()).collect();
        let best = feasible
            .iter()
            .min_by(|a, b| a.objective.total_cmp(&b.objective).then(a.start.cmp(&b.start)))
            .ok_or(Error::NoFeasiblePoint { starts })?;
        let worst = feasible.iter().map(|l| l.objective).fold(f64::NEG_INFINITY, f64::max);
        let diagnostics = OptDiagnostics {
            starts,
            feasible_starts: feasible.len(),
            evaluations,
            best_start: best.start,
            best_kind: best.kind,
            agreeing_starts: feasible.iter().filter(|l| l.objective - best.objective <= 1e-6).count(),
            spread: worst - best.objective,
        };
        let (schedule, vars, evaluation) = best.found.clone().expect("feasible");
        Ok(OptSolution {
            d: self.d,
            k: self.k,
            objective: evaluation.objective(),
            schedule,
            vars,
            evaluation,
            diagnostics,
        })
    }
}

/// Minimize `T_D` over schedules and saddle variables for `(D, K)`.
pub fn minimize_t(d: usize, k: usize, config: &MinimizeConfig) -> Result<OptSolution> {
    minimize_t_warm(d, k, config, Warm::default())
}

pub fn minimize_t_warm(d: usize, k: usize, config: &MinimizeConfig, warm: Warm<'_>) -> Result<OptSolution> {
    let problem = OptProblem::new(d, k)?;
    let locals = problem.starts(config, warm).iter().map(|s| problem.solve_from(s, config)).collect();
    problem.select(locals)
}

/// Solutions for `D in 1..=d_max` and `K in 1..=k_max`, indexed `[K-1][D-1]`,
/// each warm-started from its `(D-1, K)` and `(D, K-1)` neighbours.
pub fn table(d_max: usize, k_max: usize, config: &MinimizeConfig) -> Result<Vec<Vec<OptSolution>>> {
    let mut out: Vec<Vec<OptSolution>> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut row: Vec<OptSolution> = Vec::with_capacity(d_max);
        for d in 1..=d_max {
            let warm = Warm { prev_digit: row.last(), prev_level: out.last().map(|r| &r[d - 1]) };
            let sol = minimize_t_warm(d, k, config, warm)?;
            row.push(sol);
        }
        out.push(row);
    }
    Ok(out)
}

/// One point of the `K = 1` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvePoint {
    pub d: usize,
    pub t: f64,
    /// Advantage over the classical exponent, `D + 1 - T_D`.
    pub advantage: f64,
}

/// `K = 1` exponents for `D = 1..=d_max`.
pub fn figure_k1(d_max: usize, config: &MinimizeConfig) -> Result<Vec<CurvePoint>> {
    let mut prev: Option<OptSolution> = None;
    let mut out = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let sol = minimize_t_warm(d, 1, config, Warm { prev_digit: prev.as_ref(), prev_level: None })?;
        out.push(CurvePoint { d, t: sol.objective, advantage: d as f64 + 1.0 - sol.objective });
        prev = Some(sol);
    }
    Ok(out)
}
