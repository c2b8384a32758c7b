//! Generating polynomials for layer sizes and squared search costs.
//!
//! `P(x) = prod_d (1 + x + ... + x^d)^{n_d}` counts vertices by weight: the
//! factor of one coordinate contributes `x^{v_i}`.
//!
//! `S_k` tracks a chain of vertices `v^(k) <= v^(k+1) <= ... <= v^(K+1)`
//! coordinate by coordinate. Variable `j` (0-based, standing for level
//! `k + j`) carries the coordinate value of `v^(k+j)`, and a coordinate
//! whose value jumps by `i` between `v^(k)` and `v^(k+1)` contributes `T_i^2`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::invalid;
use crate::lattice::LatticeProfile;
use crate::{Error, Result};

/// Cap on the number of stored monomials of a [`MultiPoly`] product.
pub const MAX_TERMS: u128 = 5_000_000;

/// Dense univariate polynomial with exact non-negative integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigUint>,
}

impl UniPoly {
    pub fn one() -> Self {
        Self { coeffs: vec![BigUint::from(1u32)] }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient at `x^w`; zero for negative or too-large `w`.
    pub fn coeff(&self, w: i64) -> BigUint {
        if w < 0 {
            return BigUint::zero();
        }
        self.coeffs.get(w as usize).cloned().unwrap_or_default()
    }

    /// Multiply in place by `1 + x + ... + x^d` using a sliding window sum.
    pub fn mul_geometric(&mut self, d: usize) {
        if d == 0 {
            return;
        }
        let old = core::mem::take(&mut self.coeffs);
        let mut out = Vec::with_capacity(old.len() + d);
        let mut window = BigUint::zero();
        for w in 0..old.len() + d {
            if let Some(c) = old.get(w) {
                window += c;
            }
            if w > d {
                window -= &old[w - d - 1];
            }
            out.push(window.clone());
        }
        self.coeffs = out;
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::INFINITY))
    }

    /// Same polynomial with floating-point coefficients.
    pub fn to_multi(&self) -> MultiPoly {
        use num_traits::ToPrimitive;
        let mut p = MultiPoly::zero(1);
        for (w, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(vec![w as u32], c.to_f64().unwrap_or(f64::INFINITY));
            }
        }
        p
    }
}

/// `P(x) = prod_{d=0}^{D} (1 + x + ... + x^d)^{n_d}`.
pub fn build_p(profile: &LatticeProfile) -> UniPoly {
    let mut p = UniPoly::one();
    for (d, &c) in profile.counts().iter().enumerate() {
        for _ in 0..c {
            p.mul_geometric(d);
        }
    }
    p
}

/// `1 + x + ... + x^d` as a univariate [`UniPoly`].
pub fn build_p_d(d: usize) -> UniPoly {
    let mut p = UniPoly::one();
    p.mul_geometric(d);
    p
}

/// Exact coefficient of `x^w` in `p`.
pub fn coeff(p: &UniPoly, w: i64) -> BigUint {
    p.coeff(w)
}

/// Coefficient of `p` at an exponent tuple.
pub fn multi_coeff(p: &MultiPoly, exps: &[u32]) -> f64 {
    p.coeff(exps)
}

/// Sparse polynomial in `nvars` variables with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: f64) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c != 0.0 {
            *self.terms.entry(exps).or_insert(0.0) += c;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Coefficient at the given exponent tuple (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> f64 {
        self.terms.get(exps).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, &c)| c * e.iter().zip(x).map(|(&p, &xi)| crate::math::powi(xi, p)).product::<f64>())
            .sum()
    }

    pub fn coefficient_sum(&self) -> f64 {
        self.terms.values().sum()
    }

    /// Product, discarding monomials that exceed `bound` in any variable.
    pub fn mul(&self, other: &Self, bound: Option<&[u32]>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            'inner: for (eb, &cb) in &other.terms {
                let mut e = Vec::with_capacity(self.nvars);
                for j in 0..self.nvars {
                    let s = ea[j] + eb[j];
                    if bound.is_some_and(|b| s > b[j]) {
                        continue 'inner;
                    }
                    e.push(s);
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32, bound: Option<&[u32]>) -> Self {
        let mut result = Self::constant(self.nvars, 1.0);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, bound);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, bound);
            }
        }
        result
    }
}

/// One monomial of `S_{k,d}`: coefficient `T_shift^2`, exponents `(p_k, ..., p_{K+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTerm {
    pub shift: usize,
    pub exps: Vec<u32>,
}

/// All chains `p_k <= p_{k+1} <= ... <= p_{K+1}` in `[0, d]`, with
/// `shift = p_{k+1} - p_k`. Requires `1 <= k <= layers`.
pub fn chain_terms(d: u32, k: usize, layers: usize) -> Vec<ChainTerm> {
    assert!(k >= 1 && k <= layers);
    let tail_len = layers + 1 - k;
    let mut out = Vec::new();
    let mut tail = vec![0u32; tail_len];
    loop {
        for pk in 0..=tail[0] {
            let mut exps = Vec::with_capacity(tail_len + 1);
            exps.push(pk);
            exps.extend_from_slice(&tail);
            out.push(ChainTerm { shift: (tail[0] - pk) as usize, exps });
        }
        // next non-decreasing tuple over [0, d]
        let Some(pos) = (0..tail_len).rev().find(|&i| tail[i] < d) else {
            break;
        };
        let v = tail[pos] + 1;
        for t in &mut tail[pos..] {
            *t = v;
        }
    }
    out
}

fn check_weights(d: usize, t: &[f64]) -> Result<()> {
    if t.len() <= d {
        return Err(invalid!(InvalidArgument, "need T_0..T_{d}, got {} entries", t.len()));
    }
    if let Some((i, v)) = t.iter().enumerate().take(d + 1).find(|(_, v)| !(**v >= 1.0) || !v.is_finite()) {
        return Err(invalid!(InvalidArgument, "T_{i} = {v} must be a finite value >= 1"));
    }
    Ok(())
}

/// `S_{k,d} = sum_i T_i^2 * sum over chains with p_{k+1} - p_k = i of prod_j x_{k,j}^{p_j}`.
pub fn build_s_kd(d: u32, k: usize, layers: usize, t: &[f64]) -> Result<MultiPoly> {
    if k == 0 || k > layers {
        return Err(invalid!(InvalidArgument, "level k = {k} outside 1..={layers}"));
    }
    check_weights(d as usize, t)?;
    let mut p = MultiPoly::zero(layers + 2 - k);
    for term in chain_terms(d, k, layers) {
        p.add_term(term.exps, t[term.shift] * t[term.shift]);
    }
    Ok(p)
}

/// `S_k = prod_d S_{k,d}^{n_d}`, optionally truncated above `bound`.
pub fn build_s_k(
    profile: &LatticeProfile,
    k: usize,
    layers: usize,
    t: &[f64],
    bound: Option<&[u32]>,
) -> Result<MultiPoly> {
    if k == 0 || k > layers {
        return Err(invalid!(InvalidArgument, "level k = {k} outside 1..={layers}"));
    }
    let nvars = layers + 2 - k;
    check_weights(profile.max_digit(), t)?;
    let top = profile.max_weight();
    if top > u32::MAX as u64 {
        return Err(Error::TooLarge { what: "exponent", size: top as u128, limit: u32::MAX as u128 });
    }
    if let Some(b) = bound {
        if b.len() != nvars {
            return Err(invalid!(InvalidArgument, "bound has {} entries, need {nvars}", b.len()));
        }
    }
    // exponents form chains in [0, top], so at most C(top + nvars, nvars) terms
    let mut size: u128 = 1;
    for j in 1..=nvars as u128 {
        size = size.saturating_mul(top as u128 + j) / j;
    }
    if let Some(b) = bound {
        let boxed = b.iter().fold(1u128, |acc, &c| acc.saturating_mul(c.min(top as u32) as u128 + 1));
        size = size.min(boxed);
    }
    if size > MAX_TERMS {
        return Err(Error::TooLarge { what: "monomials", size, limit: MAX_TERMS });
    }
    let mut acc = MultiPoly::constant(nvars, 1.0);
    for (d, &c) in profile.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let factor = build_s_kd(d as u32, k, layers, t)?;
        acc = acc.mul(&factor.pow(c, bound), bound);
    }
    Ok(acc)
}
