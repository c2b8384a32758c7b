//! Real-axis saddle-point infimum for coefficients of products of powers of
//! polynomials with non-negative coefficients.
//!
//! For polynomials `p_d` in `m` variables, targets `a_{i,d}` and weights `b_d`
//! on the simplex, [`saddle_infimum`] computes
//!
//! ```text
//! inf_{x > 0} prod_d ( p_d(x) / prod_i x_i^{a_{i,d}} )^{b_d}
//! ```
//!
//! by damped Newton in `u = ln x`, where the log-objective is convex. Its
//! gradient is the mixture of expected exponents minus the target, its
//! Hessian the mixture of exponent covariances.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::lattice::LatticeProfile;
use crate::linalg;
use crate::math;
use crate::polynomials::{self, MultiPoly};
use crate::{Error, Result};

/// Family of polynomials with exponent targets and mixture weights.
#[derive(Debug, Clone)]
pub struct SaddleProblem {
    m: usize,
    /// Per polynomial: `(ln c, exponents)` for each positive coefficient.
    terms: Vec<Vec<(f64, Vec<f64>)>>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl SaddleProblem {
    /// `targets[d][i]` is `a_{i,d}`; `weights[d]` is `b_d`.
    pub fn new(polys: &[MultiPoly], targets: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if polys.is_empty() || polys.len() != targets.len() || polys.len() != weights.len() {
            return Err(invalid!(
                InvalidArgument,
                "{} polynomials, {} target rows, {} weights",
                polys.len(),
                targets.len(),
                weights.len()
            ));
        }
        let m = polys[0].nvars();
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| !(w >= 0.0)) || (total - 1.0).abs() > 1e-9 {
            return Err(invalid!(InvalidArgument, "weights must lie on the simplex (sum {total})"));
        }
        let mut terms = Vec::with_capacity(polys.len());
        for (p, row) in polys.iter().zip(&targets) {
            if p.nvars() != m || row.len() != m {
                return Err(invalid!(InvalidArgument, "all polynomials and targets need {m} variables"));
            }
            let mut t = Vec::new();
            for (e, c) in p.terms() {
                if c < 0.0 {
                    return Err(invalid!(InvalidArgument, "negative coefficient {c}"));
                }
                if c > 0.0 {
                    t.push((math::ln(c), e.iter().map(|&v| v as f64).collect()));
                }
            }
            if t.is_empty() {
                return Err(invalid!(InvalidArgument, "polynomial without positive coefficient"));
            }
            terms.push(t);
        }
        Ok(Self { m, terms, a: targets, b: weights })
    }

    /// One polynomial with weight 1.
    pub fn single(p: &MultiPoly, target: Vec<f64>) -> Result<Self> {
        Self::new(core::slice::from_ref(p), vec![target], vec![1.0])
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    /// Log-objective at `u = ln x`.
    pub fn log_objective(&self, u: &[f64]) -> f64 {
        self.derivatives(u, false).0
    }

    /// Gradient of the log-objective at `u`.
    pub fn gradient(&self, u: &[f64]) -> Vec<f64> {
        self.derivatives(u, false).1
    }

    /// Value, gradient and (optionally) Hessian of the log-objective.
    fn derivatives(&self, u: &[f64], hessian: bool) -> (f64, Vec<f64>, Vec<f64>) {
        let m = self.m;
        let mut f = 0.0;
        let mut g = vec![0.0; m];
        let mut h = if hessian { vec![0.0; m * m] } else { Vec::new() };
        let mut logs = Vec::new();
        for ((terms, a), &b) in self.terms.iter().zip(&self.a).zip(&self.b) {
            if b == 0.0 {
                continue;
            }
            logs.clear();
            logs.extend(terms.iter().map(|(lc, e)| lc + linalg::dot(e, u)));
            let lse = math::log_sum_exp(&logs);
            f += b * (lse - linalg::dot(a, u));
            let mut mean = vec![0.0; m];
            let mut second = if hessian { vec![0.0; m * m] } else { Vec::new() };
            for ((_, e), &l) in terms.iter().zip(&logs) {
                let w = math::exp(l - lse);
                for i in 0..m {
                    mean[i] += w * e[i];
                    if hessian {
                        for j in 0..m {
                            second[i * m + j] += w * e[i] * e[j];
                        }
                    }
                }
            }
            for i in 0..m {
                g[i] += b * (mean[i] - a[i]);
                if hessian {
                    for j in 0..m {
                        h[i * m + j] += b * (second[i * m + j] - mean[i] * mean[j]);
                    }
                }
            }
        }
        (f, g, h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleOptions {
    /// Stop once the gradient norm in log-coordinates is at most this.
    pub tol: f64,
    pub max_iter: usize,
    /// A converged minimizer with `|u_i|` above this is flagged as boundary.
    pub boundary_norm: f64,
    /// Iterates beyond this norm stop the search.
    pub divergence_norm: f64,
}

impl Default for SaddleOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 200, boundary_norm: 20.0, divergence_norm: 60.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaddleResult {
    pub x: Vec<f64>,
    pub log_value: f64,
    pub value: f64,
    pub converged: bool,
    /// The infimum is approached only as some `x_i` tends to `0` or `inf`.
    pub boundary: bool,
    pub iterations: usize,
    pub grad_norm: f64,
}

/// Minimize the saddle objective from `x = 1`.
pub fn saddle_infimum(problem: &SaddleProblem, options: &SaddleOptions) -> Result<SaddleResult> {
    let m = problem.m;
    let mut u = vec![0.0; m];
    let (mut f, mut g, mut h) = problem.derivatives(&u, true);
    let mut gnorm = linalg::norm(&g);
    let mut iterations = 0;
    let finish = |u: &[f64], f: f64, gnorm: f64, iterations: usize| {
        let boundary = u.iter().any(|v| v.abs() > options.boundary_norm);
        Ok(SaddleResult {
            x: u.iter().map(|&v| math::exp(v)).collect(),
            log_value: f,
            value: math::exp(f),
            converged: true,
            boundary,
            iterations,
            grad_norm: gnorm,
        })
    };
    while iterations < options.max_iter {
        if gnorm <= options.tol {
            return finish(&u, f, gnorm, iterations);
        }
        iterations += 1;
        let scale = (0..m).map(|i| h[i * m + i]).fold(0.0, f64::max).max(1e-300);
        let mut dir = match linalg::cholesky(&h, m, 1e-13 * scale) {
            Some(l) => linalg::cholesky_solve(&l, &g).into_iter().map(|v| -v).collect::<Vec<_>>(),
            None => g.iter().map(|v| -v / scale.max(1.0)).collect(),
        };
        let big = dir.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if big > 5.0 {
            dir.iter_mut().for_each(|v| *v *= 5.0 / big);
        }
        let slope = linalg::dot(&g, &dir);
        let slack = 4.0 * f64::EPSILON * f.abs().max(1.0);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = u.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            let ft = problem.log_objective(&trial);
            if ft <= f + 1e-4 * t * slope + slack {
                accepted = Some(trial);
                break;
            }
            t *= 0.5;
        }
        let Some(next) = accepted else {
            // no representable decrease left
            if gnorm <= options.tol.max(1e-7) {
                return finish(&u, f, gnorm, iterations);
            }
            return Err(Error::NotConverged { iterations, best_value: math::exp(f) });
        };
        u = next;
        (f, g, h) = problem.derivatives(&u, true);
        gnorm = linalg::norm(&g);
        if u.iter().any(|v| v.abs() > options.divergence_norm) {
            if gnorm <= options.tol.max(1e-8) {
                return finish(&u, f, gnorm, iterations);
            }
            return Err(Error::UnboundedBelow);
        }
    }
    if gnorm <= options.tol {
        return finish(&u, f, gnorm, iterations);
    }
    Err(Error::NotConverged { iterations, best_value: math::exp(f) })
}

/// Which generating polynomial a sandwich check targets.
#[derive(Debug, Clone, PartialEq)]
pub enum SandwichTarget {
    /// `P(x)`, one weight target.
    P,
    /// `S_k` for `layers` search levels with exponents `t = (T_0, ..., T_D)`.
    S { k: usize, layers: usize, t: Vec<f64> },
}

/// Exact coefficient against the saddle bound `value^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub n: u32,
    pub targets: Vec<u32>,
    /// Natural log of the exact coefficient (`-inf` when it is zero).
    pub log_coefficient: f64,
    pub saddle: SaddleResult,
    /// `coefficient^{1/n} / value`.
    pub ratio: f64,
    /// `coefficient <= value^n` up to floating-point slack.
    pub upper_bound_holds: bool,
}

/// Compare the coefficient at `targets` with the saddle infimum.
///
/// `n` counts the coordinates with `d >= 1`; each factor `p_d` gets weight
/// `n_d / n` and target `W_i / n`.
pub fn verify_sandwich(
    profile: &LatticeProfile,
    targets: &[u32],
    which: &SandwichTarget,
    options: &SaddleOptions,
) -> Result<SandwichReport> {
    let n = profile.active();
    if n == 0 {
        return Err(invalid!(InvalidProfile, "profile has no non-trivial coordinate"));
    }
    let digits: Vec<usize> = (1..=profile.max_digit()).filter(|&d| profile.count(d) > 0).collect();
    let (polys, log_coefficient) = match which {
        SandwichTarget::P => {
            if targets.len() != 1 {
                return Err(invalid!(InvalidArgument, "P takes a single weight target"));
            }
            let polys: Vec<MultiPoly> =
                digits.iter().map(|&d| polynomials::build_p_d(d).to_multi()).collect();
            let c = polynomials::build_p(profile).coeff(targets[0] as i64);
            (polys, math::ln_biguint(&c))
        }
        SandwichTarget::S { k, layers, t } => {
            let mut polys = Vec::with_capacity(digits.len());
            for &d in &digits {
                polys.push(polynomials::build_s_kd(d as u32, *k, *layers, t)?);
            }
            let s = polynomials::build_s_k(profile, *k, *layers, t, Some(targets))?;
            if targets.len() != s.nvars() {
                return Err(invalid!(InvalidArgument, "need {} targets", s.nvars()));
            }
            let c = s.coeff(targets);
            (polys, if c > 0.0 { math::ln(c) } else { f64::NEG_INFINITY })
        }
    };
    let nf = n as f64;
    let row: Vec<f64> = targets.iter().map(|&w| w as f64 / nf).collect();
    let weights: Vec<f64> = digits.iter().map(|&d| profile.count(d) as f64 / nf).collect();
    let problem = SaddleProblem::new(&polys, vec![row; polys.len()], weights)?;
    let saddle = saddle_infimum(&problem, options)?;
    let log_bound = nf * saddle.log_value;
    let upper_bound_holds = log_coefficient <= log_bound + 1e-9 * log_bound.abs().max(1.0);
    let ratio = math::exp(log_coefficient / nf - saddle.log_value);
    Ok(SandwichReport {
        n,
        targets: targets.to_vec(),
        log_coefficient,
        saddle,
        ratio,
        upper_bound_holds,
    })
}
