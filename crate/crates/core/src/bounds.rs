//! Analytic ingredients of the `(D+1)/e` lower bound.
//!
//! For `P_D(x) = 1 + x + ... + x^D` and `0 < alpha < 1/2`:
//!
//! * `x_D(alpha)` is the unique root of `x P_D'(x) / P_D(x) = D alpha`,
//! * `F_alpha(D) = P_D(x_D) / x_D^{alpha D}` is the infimum over `x > 0`,
//! * `r_inf` solves `1 / (r - alpha) = e^{1/r} - 1` and
//!   `c_alpha = r_inf e^{(alpha-1)/r_inf} (e^{1/r_inf} - 1)` is the large-`D`
//!   limit of `F_alpha(D) / (D+1)`.
//!
//! Roots are bracketed, bisected to `1e-6` and polished by Newton to `1e-12`.
//! The precalculation quantities work in `s = -ln x` so that `x` near `1`
//! keeps full precision.

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::invalid;
use crate::math;
use crate::Result;

const BISECT_WIDTH: f64 = 1e-6;
const NEWTON_TOL: f64 = 1e-12;

/// Minimizer and value of `P_D(x) / x^{alpha D}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecalcBound {
    pub d: f64,
    pub alpha: f64,
    pub x: f64,
    pub f: f64,
    /// `|x P'/P - D alpha|` at the returned root.
    pub residual: f64,
}

impl PrecalcBound {
    /// `alpha/(1-alpha) <= x_D <= alpha/(1-alpha) * (1+(1-alpha)D)/(1+alpha D)`.
    pub fn x_bounds(&self) -> (f64, f64) {
        x_bounds(self.d, self.alpha)
    }
}

/// Limit parameters as `D` grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBound {
    pub alpha: f64,
    pub r_inf: f64,
    pub c_alpha: f64,
}

fn check_alpha(alpha: f64, allow_half: bool) -> Result<()> {
    let ok = alpha > 0.0 && (alpha < 0.5 || (allow_half && alpha == 0.5));
    if !ok {
        return Err(invalid!(InvalidArgument, "alpha = {alpha} outside (0, 1/2)"));
    }
    Ok(())
}

/// `x P'(x)/P(x)` at `x = e^{-s}`, with `N = D + 1`.
fn mean_exponent(s: f64, n: f64) -> f64 {
    if n * s < 1e-3 {
        (n - 1.0) / 2.0 - s * (n * n - 1.0) / 12.0 + s * s * s * (math::powi(n, 4) - 1.0) / 720.0
    } else {
        1.0 / math::expm1(s) - n / math::expm1(n * s)
    }
}

/// Derivative of [`mean_exponent`] in `s`.
fn mean_exponent_ds(s: f64, n: f64) -> f64 {
    if n * s < 1e-3 {
        -(n * n - 1.0) / 12.0 + s * s * (math::powi(n, 4) - 1.0) / 240.0
    } else {
        let a = math::sinh(s / 2.0);
        let b = math::sinh(n * s / 2.0);
        -1.0 / (4.0 * a * a) + n * n / (4.0 * b * b)
    }
}

/// Bisection to [`BISECT_WIDTH`] then Newton to [`NEWTON_TOL`] on a
/// decreasing function `g` with `g(lo) > 0 > g(hi)`.
fn decreasing_root(g: impl Fn(f64) -> f64, dg: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > BISECT_WIDTH * lo.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = g(r) / dg(r);
        let next = (r - step).clamp(lo, hi);
        let done = (next - r).abs() <= NEWTON_TOL * r.abs().max(1.0);
        r = next;
        if done {
            break;
        }
    }
    r
}

/// `x_D(alpha)` together with `F_alpha(D)`. `D > 0` need not be an integer;
/// `alpha = 1/2` gives `x = 1` and `F = D + 1`.
pub fn precalc_bound(d: f64, alpha: f64) -> Result<PrecalcBound> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(invalid!(InvalidArgument, "D = {d} must be positive"));
    }
    check_alpha(alpha, true)?;
    let n = d + 1.0;
    let target = d * alpha;
    let s = if alpha == 0.5 {
        0.0
    } else if d == 1.0 {
        // x / (1 + x) = alpha
        math::ln((1.0 - alpha) / alpha)
    } else {
        let hi = -math::ln(1e-12);
        let lo = -math::ln_1p(-1e-12);
        decreasing_root(
            |s| mean_exponent(s, n) - target,
            |s| mean_exponent_ds(s, n),
            lo,
            hi,
        )
    };
    let residual = (mean_exponent(s, n) - target).abs();
    let log_f = if s == 0.0 {
        math::ln(n)
    } else {
        math::ln(-math::expm1(-n * s)) - math::ln(-math::expm1(-s)) + alpha * d * s
    };
    let x = if d == 1.0 { alpha / (1.0 - alpha) } else { math::exp(-s) };
    Ok(PrecalcBound { d, alpha, x, f: math::exp(log_f), residual })
}

pub fn x_of_alpha(d: f64, alpha: f64) -> Result<f64> {
    precalc_bound(d, alpha).map(|b| b.x)
}

#[allow(non_snake_case)]
pub fn F_alpha(d: f64, alpha: f64) -> Result<f64> {
    precalc_bound(d, alpha).map(|b| b.f)
}

/// Lower and upper bound on `x_D(alpha)` valid for `D >= 1`.
pub fn x_bounds(d: f64, alpha: f64) -> (f64, f64) {
    let base = alpha / (1.0 - alpha);
    (base, base * (1.0 + (1.0 - alpha) * d) / (1.0 + alpha * d))
}

pub fn r_infinity(alpha: f64) -> Result<f64> {
    check_alpha(alpha, false)?;
    let g = |r: f64| 1.0 / (r - alpha) - math::expm1(1.0 / r);
    let dg = |r: f64| -1.0 / ((r - alpha) * (r - alpha)) + math::exp(1.0 / r) / (r * r);
    Ok(decreasing_root(g, dg, alpha + 1e-12, 1e3))
}

pub fn c_alpha(alpha: f64) -> Result<f64> {
    asymptotic_bound(alpha).map(|b| b.c_alpha)
}

pub fn asymptotic_bound(alpha: f64) -> Result<AsymptoticBound> {
    let r = r_infinity(alpha)?;
    let c = r * math::exp((alpha - 1.0) / r) * math::expm1(1.0 / r);
    Ok(AsymptoticBound { alpha, r_inf: r, c_alpha: c })
}

/// Vertices of `{0..D}^n` using every digit exactly `n/(D+1)` times.
#[derive(Debug, Clone, PartialEq)]
pub struct MultinomialCount {
    pub n: u64,
    pub d: u64,
    pub exact: BigUint,
    pub log_exact: f64,
    /// `ln( sqrt(2 pi n) / e^{D+1} * ((D+1)/n)^{(D+1)/2} * (D+1)^n )`.
    pub log_stirling: f64,
}

impl MultinomialCount {
    pub fn bound_holds(&self) -> bool {
        self.log_exact >= self.log_stirling
    }
}

pub fn multinomial_layer_count(n: u64, d: u64) -> Result<MultinomialCount> {
    let parts = d + 1;
    if n == 0 || n % parts != 0 {
        return Err(invalid!(InvalidArgument, "D+1 = {parts} must divide n = {n} > 0"));
    }
    let block = n / parts;
    let fact = |m: u64| (2..=m).fold(BigUint::one(), |acc, i| acc * i);
    let exact = fact(n) / num_traits::pow(fact(block), parts as usize);
    let nf = n as f64;
    let pf = parts as f64;
    let log_stirling =
        0.5 * math::ln(2.0 * math::PI * nf) - pf + 0.5 * pf * math::ln(pf / nf) + nf * math::ln(pf);
    Ok(MultinomialCount { n, d, log_exact: math::ln_biguint(&exact), exact, log_stirling })
}

/// Per-unit-`n` log sizes of the vertex families behind the search lower
/// bound, for a chain `alpha_k <= 1/4 < alpha_{k+1} <= ... <= alpha_{K+1} = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchExponent {
    pub d: u64,
    /// `gamma_k = 4 alpha_k`, then `gamma_i = 2 - 4 alpha_i`.
    pub gamma: Vec<f64>,
    /// `ln N_i / n` for `i = k, ..., K+1`.
    pub log_counts: Vec<f64>,
    /// `ln S / n` for the sublattice between levels `k` and `k+1`.
    pub log_sublattice: f64,
    pub total: f64,
}

impl SearchExponent {
    /// `2 ln((D+1)/e)`.
    pub fn lower_bound(&self) -> f64 {
        2.0 * (math::ln((self.d + 1) as f64) - 1.0)
    }

    pub fn bound_holds(&self) -> bool {
        self.total >= self.lower_bound() - 1e-9
    }
}

pub fn search_exponent(alphas: &[f64], d: u64) -> Result<SearchExponent> {
    if d == 0 || alphas.len() < 2 {
        return Err(invalid!(InvalidArgument, "need D >= 1 and at least two levels"));
    }
    let last = alphas.len() - 1;
    let ordered = alphas.windows(2).skip(1).all(|w| w[0] <= w[1]);
    if !(alphas[0] >= 0.0 && alphas[0] <= 0.25 && alphas[1] > 0.25 && ordered && alphas[last] == 0.5) {
        return Err(invalid!(
            InvalidSchedule,
            "expected alpha_k <= 1/4 < alpha_(k+1) <= ... <= alpha_(K+1) = 1/2, got {alphas:?}"
        ));
    }
    let l = math::ln_factorial(d + 1) / (d + 1) as f64;
    let mut gamma = alloc::vec::Vec::with_capacity(alphas.len());
    gamma.push(4.0 * alphas[0]);
    gamma.extend(alphas[1..].iter().map(|a| 2.0 - 4.0 * a));
    let mut log_counts = alloc::vec![0.0; alphas.len()];
    let log_sublattice;
    if gamma[0] <= gamma[1] {
        log_sublattice = (1.0 - gamma[1]) * l;
    } else {
        log_counts[0] = (gamma[0] - gamma[1]) * l;
        log_sublattice = (1.0 - gamma[0]) * l;
    }
    for i in 1..last {
        log_counts[i] = (gamma[i] - gamma[i + 1]) * l;
    }
    log_counts[last] = math::ln((d + 1) as f64);
    let total = log_sublattice + log_counts.iter().sum::<f64>();
    Ok(SearchExponent { d, gamma, log_counts, log_sublattice, total })
}
