use alloc::vec;
use alloc::vec::Vec;

use super::AlphaSchedule;
use crate::error::invalid;
use crate::math;
use crate::polynomials::chain_terms;
use crate::Result;

/// Saddle variables: `x` for the precalculation layer and, for each level
/// `k`, `xs[k-1] = (x_{k,k}, ..., x_{k,K+1})`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InnerVars {
    pub x: f64,
    pub xs: Vec<Vec<f64>>,
}

impl InnerVars {
    pub fn new(x: f64, xs: Vec<Vec<f64>>) -> Self {
        Self { x, xs }
    }

    fn check(&self, layers: usize) -> Result<()> {
        if self.xs.len() != layers {
            return Err(invalid!(InvalidArgument, "need {layers} levels of x variables, got {}", self.xs.len()));
        }
        for (i, row) in self.xs.iter().enumerate() {
            if row.len() != layers + 1 - i {
                return Err(invalid!(
                    InvalidArgument,
                    "level {} needs {} x variables, got {}",
                    i + 1,
                    layers + 1 - i,
                    row.len()
                ));
            }
        }
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !ok(self.x) || !self.xs.iter().flatten().all(|&v| ok(v)) {
            return Err(invalid!(InvalidArgument, "x variables must be positive and finite"));
        }
        Ok(())
    }
}

/// Bottom-up exponents `T_1, ..., T_D` for fixed schedule and variables.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptEvaluation {
    /// `T_1, ..., T_D`; entries from the first infeasible digit on are infinite.
    pub t: Vec<f64>,
    pub feasible: bool,
    /// First `(k, d)` whose self-coefficient reached 1.
    pub infeasible_at: Option<(usize, usize)>,
    /// `P_d(x) / x^{alpha_{1,d} d}` per digit.
    pub precalc: Vec<f64>,
    /// `sqrt(A_{k,d} / (1 - C_{k,d}))` as `search[k-1][d-1]`.
    pub search: Vec<Vec<f64>>,
    /// `C_{k,d}`, the coefficient of `T_d^2` in the normalized search term.
    pub self_coefficients: Vec<Vec<f64>>,
}

impl OptEvaluation {
    /// `T_D`.
    pub fn objective(&self) -> f64 {
        *self.t.last().expect("D >= 1")
    }
}

/// Normalized search polynomial for level `k` and digit `d`: the part not
/// involving `T_d` and the coefficient of `T_d^2`.
fn search_parts(schedule: &AlphaSchedule, vars: &InnerVars, t: &[f64], k: usize, d: usize) -> (f64, f64) {
    let layers = schedule.layers();
    let y = &vars.xs[k - 1];
    let mut log_den = 0.0;
    for (jl, &yj) in y.iter().enumerate() {
        log_den += schedule.alpha(k + jl, d) * d as f64 * math::ln(yj);
    }
    let den = math::exp(log_den);
    let mut rest = 0.0;
    let mut own = 0.0;
    for term in chain_terms(d as u32, k, layers) {
        let mono: f64 = term.exps.iter().zip(y).map(|(&p, &yj)| math::powi(yj, p)).product();
        if term.shift == d {
            own += mono;
        } else {
            let ti = if term.shift == 0 { 1.0 } else { t[term.shift - 1] };
            rest += ti * ti * mono;
        }
    }
    (rest / den, own / den)
}

fn precalc_value(schedule: &AlphaSchedule, x: f64, d: usize) -> f64 {
    let p: f64 = (0..=d).map(|i| math::powi(x, i as u32)).sum();
    p / math::powf(x, schedule.alpha(1, d) * d as f64)
}

/// Smallest `T_d` meeting every constraint, digit by digit.
pub fn evaluate_t(schedule: &AlphaSchedule, vars: &InnerVars) -> Result<OptEvaluation> {
    let layers = schedule.layers();
    let dmax = schedule.max_digit();
    vars.check(layers)?;
    let mut t = Vec::with_capacity(dmax);
    let mut precalc = Vec::with_capacity(dmax);
    let mut search = vec![Vec::with_capacity(dmax); layers];
    let mut selfc = vec![Vec::with_capacity(dmax); layers];
    let mut infeasible_at = None;
    for d in 1..=dmax {
        let pre = precalc_value(schedule, vars.x, d);
        precalc.push(pre);
        let mut td = pre.max(1.0);
        for k in 1..=layers {
            let (a, c) = search_parts(schedule, vars, &t, k, d);
            selfc[k - 1].push(c);
            if c >= 1.0 || infeasible_at.is_some() {
                infeasible_at.get_or_insert((k, d));
                search[k - 1].push(f64::INFINITY);
                td = f64::INFINITY;
                continue;
            }
            let s = math::sqrt(a / (1.0 - c));
            search[k - 1].push(s);
            td = td.max(s);
        }
        t.push(td);
    }
    Ok(OptEvaluation {
        feasible: infeasible_at.is_none(),
        infeasible_at,
        t,
        precalc,
        search,
        self_coefficients: selfc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ConstraintKind {
    Precalc,
    Search { k: usize },
    Floor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConstraintSlack {
    pub kind: ConstraintKind,
    pub d: usize,
    /// `T_d` minus the constraint's right-hand side (`T_d` form).
    pub slack: f64,
}

/// Slack of every constraint at given exponents `t = (T_1, ..., T_D)`.
pub fn constraint_slacks(schedule: &AlphaSchedule, vars: &InnerVars, t: &[f64]) -> Result<Vec<ConstraintSlack>> {
    let layers = schedule.layers();
    let dmax = schedule.max_digit();
    vars.check(layers)?;
    if t.len() != dmax {
        return Err(invalid!(InvalidArgument, "need T_1..T_{dmax}, got {} values", t.len()));
    }
    let mut out = Vec::new();
    for d in 1..=dmax {
        let td = t[d - 1];
        out.push(ConstraintSlack { kind: ConstraintKind::Precalc, d, slack: td - precalc_value(schedule, vars.x, d) });
        for k in 1..=layers {
            let (a, c) = search_parts(schedule, vars, t, k, d);
            out.push(ConstraintSlack { kind: ConstraintKind::Search { k }, d, slack: td - math::sqrt(a + c * td * td) });
        }
        out.push(ConstraintSlack { kind: ConstraintKind::Floor, d, slack: td - 1.0 });
    }
    Ok(out)
}
