//! Exact query cost of the layered recursive search on small lattices.
//!
//! A box with profile `(n_0, ..., n_D)` gets layer weights
//! `W_k = floor(sum_d alpha_{k,d} d n_d)` for `k <= K` and
//! `W_{K+1} = floor(sum_d d n_d / 2)`. If two consecutive weights coincide
//! the box is solved by classical dynamic programming and costs its edge
//! count. Otherwise
//!
//! ```text
//! cost    = 2 * precalc + 2 * sqrt( sum_{v in L_{K+1}} LP(K+1, v)^2 )
//! precalc = number of edges with tail weight below W_1
//! LP(1, v) = 0
//! LP(k, v) = sqrt( sum_{u in L_{k-1}, u <= v} (LP(k-1, u) + cost([u, v]))^2 )
//! ```
//!
//! where the factor 2 charges the mirrored half from the top vertex.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::invalid;
use crate::lattice::{Grid, LatticeProfile};
use crate::math;
use crate::optimizer::AlphaSchedule;
use crate::polynomials::build_p;
use crate::{Error, Result};

/// Vertex budget of [`simulate_cost_naive`].
pub const NAIVE_MAX_VERTICES: u64 = 100_000;
/// Memo budget of [`simulate_cost_profile`].
pub const MAX_MEMO: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CostSchedule {
    pub alpha: AlphaSchedule,
    /// Round `W_k` down; when off, `W_k` is rounded to the nearest integer.
    pub flooring: bool,
}

impl CostSchedule {
    pub fn new(alpha: AlphaSchedule) -> Self {
        Self { alpha, flooring: true }
    }

    /// `W_1, ..., W_{K+1}` for a box with this profile.
    pub fn layer_weights(&self, profile: &LatticeProfile) -> Vec<u64> {
        let layers = self.alpha.layers();
        let mut w = Vec::with_capacity(layers + 1);
        for k in 1..=layers {
            let raw: f64 = (1..=profile.max_digit())
                .map(|d| self.alpha.alpha(k, d) * (d as f64) * profile.count(d) as f64)
                .sum();
            let v = if self.flooring { math::floor(raw + 1e-9) } else { math::round(raw) };
            w.push(v as u64);
        }
        w.push(profile.max_weight() / 2);
        w
    }

    fn check(&self, profile: &LatticeProfile) -> Result<()> {
        if profile.max_digit() > self.alpha.max_digit() {
            return Err(invalid!(
                InvalidArgument,
                "profile uses digit {} but the schedule stops at {}",
                profile.max_digit(),
                self.alpha.max_digit()
            ));
        }
        Ok(())
    }
}

fn bottoms_out(w: &[u64]) -> bool {
    w.windows(2).any(|p| p[0] >= p[1])
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub profile: LatticeProfile,
    pub total: f64,
    /// Edges below `W_1` (one side; the total charges it twice).
    pub precalc: f64,
    /// `sqrt(sum_{v in L_k} LP(k, v)^2)` for `k = 2, ..., K+1` at the top call.
    pub search_levels: Vec<f64>,
    /// The top call itself fell back to classical dynamic programming.
    pub classical: bool,
    /// Longest chain of nested calls, counting the top one.
    pub depth: u32,
    pub memo_size: usize,
}

impl CostReport {
    /// Depth allowance `2 log2(sum_d d n_d) + 4`.
    pub fn depth_bound(&self) -> f64 {
        let w = self.profile.max_weight().max(1) as f64;
        2.0 * math::ln(w) / core::f64::consts::LN_2 + 4.0
    }
}

fn empty_report(profile: &LatticeProfile) -> CostReport {
    CostReport {
        profile: profile.clone(),
        total: 0.0,
        precalc: 0.0,
        search_levels: Vec::new(),
        classical: true,
        depth: 1,
        memo_size: 0,
    }
}

// ---------------------------------------------------------------------------
// explicit vertices

struct Naive<'a> {
    schedule: &'a CostSchedule,
    max_depth: u32,
}

impl Naive<'_> {
    fn cost(&mut self, dims: &[u32], depth: u32, levels: Option<&mut Vec<f64>>) -> Result<(f64, f64)> {
        self.max_depth = self.max_depth.max(depth);
        if dims.iter().all(|&d| d == 0) {
            return Ok((0.0, 0.0));
        }
        let profile = LatticeProfile::from_dims(dims);
        let w = self.schedule.layer_weights(&profile);
        let grid = Grid::new(dims)?;
        if bottoms_out(&w) {
            // the classical recurrence reads every in-edge of every vertex
            return Ok((grid.edge_count() as f64, 0.0));
        }
        let precalc: usize = (0..w[0]).map(|x| grid.layer_edges(x).len()).sum();
        let layer = |weight: u64| -> Vec<usize> { (0..grid.len()).filter(|&i| grid.weight(i) == weight).collect() };
        let mut prev_layer = layer(w[0]);
        let mut prev_lp = vec![0.0; prev_layer.len()];
        let mut rss = Vec::new();
        for &wk in &w[1..] {
            let cur = layer(wk);
            let mut lp = Vec::with_capacity(cur.len());
            for &v in &cur {
                let vc = grid.coords(v);
                let mut acc = 0.0;
                for (&u, &lu) in prev_layer.iter().zip(&prev_lp) {
                    let uc = grid.coords(u);
                    if uc.iter().zip(&vc).any(|(a, b)| a > b) {
                        continue;
                    }
                    let sub: Vec<u32> = uc.iter().zip(&vc).map(|(a, b)| b - a).collect();
                    let (c, _) = self.cost(&sub, depth + 1, None)?;
                    acc += (lu + c) * (lu + c);
                }
                lp.push(math::sqrt(acc));
            }
            rss.push(math::sqrt(lp.iter().map(|x| x * x).sum()));
            prev_layer = cur;
            prev_lp = lp;
        }
        let search = *rss.last().expect("at least one search level");
        if let Some(out) = levels {
            *out = rss;
        }
        Ok((2.0 * precalc as f64 + 2.0 * search, precalc as f64))
    }
}

/// Cost by explicit enumeration of vertices and chains, without memoization.
pub fn simulate_cost_naive(profile: &LatticeProfile, schedule: &CostSchedule) -> Result<CostReport> {
    schedule.check(profile)?;
    let vertices = profile.vertex_count().to_u64().unwrap_or(u64::MAX);
    if vertices > NAIVE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertices for explicit simulation",
            size: vertices as u128,
            limit: NAIVE_MAX_VERTICES as u128,
        });
    }
    if profile.active() == 0 {
        return Ok(empty_report(profile));
    }
    let mut sim = Naive { schedule, max_depth: 0 };
    let mut levels = Vec::new();
    let (total, precalc) = sim.cost(&profile.dims(), 1, Some(&mut levels))?;
    Ok(CostReport {
        profile: profile.clone(),
        total,
        precalc,
        classical: levels.is_empty(),
        search_levels: levels,
        depth: sim.max_depth,
        memo_size: 0,
    })
}

// ---------------------------------------------------------------------------
// profile classes

/// Slot of the pair `(d, a)`: a coordinate with range `d` holding value `a`.
fn slot(d: usize, a: usize) -> usize {
    d * (d + 1) / 2 + a
}

fn multinomial(parts: &[u32]) -> f64 {
    let mut total = 0u32;
    let mut acc = 1.0;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            acc = acc * total as f64 / i as f64;
        }
    }
    acc
}

/// All ways to write `total` as an ordered sum of `parts` non-negative counts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            go(i + 1, left - c, cur, out);
        }
    }
    go(0, total, &mut cur, &mut out);
    out
}

/// Vertex classes (counts per slot) of weight `w`, with their sizes.
fn vertex_classes(profile: &LatticeProfile, w: u64) -> Vec<(Vec<u32>, f64)> {
    let dmax = profile.max_digit();
    let slots = slot(dmax, dmax) + 1;
    let digits: Vec<usize> = (0..=dmax).filter(|&d| profile.count(d) > 0).collect();
    let options: Vec<Vec<(Vec<u32>, u64, f64)>> = digits
        .iter()
        .map(|&d| {
            compositions(profile.count(d), d + 1)
                .into_iter()
                .map(|c| {
                    let weight = c.iter().enumerate().map(|(a, &x)| a as u64 * x as u64).sum();
                    let mult = multinomial(&c);
                    (c, weight, mult)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut class = vec![0u32; slots];
    fn go(
        i: usize,
        left: u64,
        mult: f64,
        digits: &[usize],
        options: &[Vec<(Vec<u32>, u64, f64)>],
        class: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, f64)>,
    ) {
        if i == digits.len() {
            if left == 0 {
                out.push((class.clone(), mult));
            }
            return;
        }
        let d = digits[i];
        for (c, weight, m) in &options[i] {
            if *weight > left {
                continue;
            }
            class[slot(d, 0)..=slot(d, d)].copy_from_slice(c);
            go(i + 1, left - weight, mult * m, digits, options, class, out);
        }
        class[slot(d, 0)..=slot(d, d)].iter_mut().for_each(|x| *x = 0);
    }
    go(0, w, 1.0, &digits, &options, &mut class, &mut out);
    out
}

/// Predecessor `u <= v` of weight `w`, grouped by joint class.
struct Split {
    u_class: Vec<u32>,
    diff: LatticeProfile,
    mult: f64,
}

fn splits(v_class: &[u32], dmax: usize, w: u64) -> Vec<Split> {
    // (d, a, count) for occupied slots
    let mut occupied = Vec::new();
    for d in 0..=dmax {
        for a in 0..=d {
            let c = v_class[slot(d, a)];
            if c > 0 {
                occupied.push((d, a, c));
            }
        }
    }
    let mut suffix_max = vec![0u64; occupied.len() + 1];
    for i in (0..occupied.len()).rev() {
        suffix_max[i] = suffix_max[i + 1] + occupied[i].1 as u64 * occupied[i].2 as u64;
    }
    let choices: Vec<Vec<(Vec<u32>, u64, f64)>> = occupied
        .iter()
        .map(|&(_, a, c)| {
            compositions(c, a + 1)
                .into_iter()
                .map(|parts| {
                    let weight = parts.iter().enumerate().map(|(b, &x)| b as u64 * x as u64).sum();
                    let mult = multinomial(&parts);
                    (parts, weight, mult)
                })
                .collect()
        })
        .collect();
    struct Ctx<'a> {
        occupied: &'a [(usize, usize, u32)],
        choices: &'a [Vec<(Vec<u32>, u64, f64)>],
        suffix_max: &'a [u64],
        u: Vec<u32>,
        diff: Vec<u32>,
        out: Vec<Split>,
    }
    fn go(ctx: &mut Ctx<'_>, i: usize, left: u64, mult: f64) {
        if i == ctx.occupied.len() {
            if left == 0 {
                ctx.out.push(Split {
                    u_class: ctx.u.clone(),
                    diff: LatticeProfile::new(ctx.diff.clone()),
                    mult,
                });
            }
            return;
        }
        if left > ctx.suffix_max[i] {
            return;
        }
        let (d, a, _) = ctx.occupied[i];
        for ci in 0..ctx.choices[i].len() {
            let (weight, m) = (ctx.choices[i][ci].1, ctx.choices[i][ci].2);
            if weight > left {
                continue;
            }
            for b in 0..=a {
                let x = ctx.choices[i][ci].0[b];
                ctx.u[slot(d, b)] += x;
                ctx.diff[a - b] += x;
            }
            go(ctx, i + 1, left - weight, mult * m);
            for b in 0..=a {
                let x = ctx.choices[i][ci].0[b];
                ctx.u[slot(d, b)] -= x;
                ctx.diff[a - b] -= x;
            }
        }
    }
    let mut ctx = Ctx {
        occupied: &occupied,
        choices: &choices,
        suffix_max: &suffix_max,
        u: vec![0; v_class.len()],
        diff: vec![0; dmax + 1],
        out: Vec::new(),
    };
    go(&mut ctx, 0, w, 1.0);
    ctx.out
}

/// Edges whose tail weight is below `w`, by generating function.
fn edges_below(profile: &LatticeProfile, w: u64) -> f64 {
    let mut total = 0.0;
    for d in 1..=profile.max_digit() {
        let nd = profile.count(d);
        if nd == 0 {
            continue;
        }
        let mut counts = profile.counts().to_vec();
        counts[d] -= 1;
        let mut p = build_p(&LatticeProfile::new(counts));
        p.mul_geometric(d - 1);
        let below: f64 = (0..w as i64).map(|x| p.coeff(x).to_f64().unwrap_or(f64::INFINITY)).sum();
        total += nd as f64 * below;
    }
    total
}

fn edge_count(profile: &LatticeProfile) -> f64 {
    edges_below(profile, profile.max_weight())
}

struct Memo<'a> {
    schedule: &'a CostSchedule,
    cost: BTreeMap<LatticeProfile, (f64, u32)>,
    entries: usize,
}

impl Memo<'_> {
    fn bump(&mut self) -> Result<()> {
        self.entries += 1;
        if self.entries > MAX_MEMO {
            return Err(Error::TooLarge { what: "memo entries", size: self.entries as u128, limit: MAX_MEMO as u128 });
        }
        Ok(())
    }

    /// Cost and nesting depth of a box.
    fn cost(&mut self, profile: &LatticeProfile) -> Result<(f64, u32)> {
        if let Some(&hit) = self.cost.get(profile) {
            return Ok(hit);
        }
        let (total, _, _, depth) = self.evaluate(profile)?;
        self.bump()?;
        self.cost.insert(profile.clone(), (total, depth));
        Ok((total, depth))
    }

    /// `(total, precalc, per-level search, depth)`.
    fn evaluate(&mut self, profile: &LatticeProfile) -> Result<(f64, f64, Vec<f64>, u32)> {
        if profile.active() == 0 {
            return Ok((0.0, 0.0, Vec::new(), 1));
        }
        let w = self.schedule.layer_weights(profile);
        if bottoms_out(&w) {
            return Ok((edge_count(profile), 0.0, Vec::new(), 1));
        }
        let dmax = profile.max_digit();
        let precalc = edges_below(profile, w[0]);
        let mut lp: BTreeMap<(usize, Vec<u32>), f64> = BTreeMap::new();
        let mut depth = 1;
        let mut rss = Vec::new();
        for k in 2..=w.len() {
            let mut acc = 0.0;
            for (v, mult) in vertex_classes(profile, w[k - 1]) {
                let x = self.layer_path(k, &v, &w, dmax, &mut lp, &mut depth)?;
                acc += mult * x * x;
            }
            rss.push(math::sqrt(acc));
        }
        let search = *rss.last().expect("at least one search level");
        Ok((2.0 * precalc + 2.0 * search, precalc, rss, depth))
    }

    fn layer_path(
        &mut self,
        k: usize,
        v: &[u32],
        w: &[u64],
        dmax: usize,
        lp: &mut BTreeMap<(usize, Vec<u32>), f64>,
        depth: &mut u32,
    ) -> Result<f64> {
        if k == 1 {
            return Ok(0.0);
        }
        let key = (k, v.to_vec());
        if let Some(&x) = lp.get(&key) {
            return Ok(x);
        }
        let mut acc = 0.0;
        for split in splits(v, dmax, w[k - 2]) {
            let prev = self.layer_path(k - 1, &split.u_class, w, dmax, lp, depth)?;
            let (c, dsub) = self.cost(&split.diff)?;
            *depth = (*depth).max(dsub + 1);
            acc += split.mult * (prev + c) * (prev + c);
        }
        let x = math::sqrt(acc);
        self.bump()?;
        lp.insert(key, x);
        Ok(x)
    }
}

/// Same quantity as [`simulate_cost_naive`], memoized on box profiles and
/// aggregated over vertex classes.
pub fn simulate_cost_profile(profile: &LatticeProfile, schedule: &CostSchedule) -> Result<CostReport> {
    schedule.check(profile)?;
    let mut memo = Memo { schedule, cost: BTreeMap::new(), entries: 0 };
    let (total, precalc, levels, depth) = memo.evaluate(profile)?;
    Ok(CostReport {
        profile: profile.clone(),
        total,
        precalc,
        classical: levels.is_empty(),
        search_levels: levels,
        depth,
        memo_size: memo.entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzComparison {
    pub cost: f64,
    /// `prod_d T_d^{n_d}`.
    pub ansatz: f64,
    /// `cost / ansatz`, or 0 for the empty profile.
    pub ratio: f64,
}

/// Simulated cost against `prod_d T_d^{n_d}`; `t[d-1]` is `T_d`.
pub fn compare_to_ansatz(profile: &LatticeProfile, schedule: &CostSchedule, t: &[f64]) -> Result<AnsatzComparison> {
    if t.len() < profile.max_digit() {
        return Err(invalid!(InvalidArgument, "need T_1..T_{}, got {} values", profile.max_digit(), t.len()));
    }
    let report = simulate_cost_profile(profile, schedule)?;
    let log_ansatz: f64 = (1..=profile.max_digit()).map(|d| profile.count(d) as f64 * math::ln(t[d - 1])).sum();
    let ansatz = math::exp(log_ansatz);
    let ratio = if profile.active() == 0 { 0.0 } else { report.total / ansatz };
    Ok(AnsatzComparison { cost: report.total, ansatz, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1(alpha: &[f64]) -> CostSchedule {
        CostSchedule::new(AlphaSchedule::single(alpha.to_vec()).unwrap())
    }

    #[test]
    fn single_edge_is_classical() {
        let s = k1(&[0.3]);
        for f in [simulate_cost_naive, simulate_cost_profile] {
            let r = f(&LatticeProfile::new(vec![0, 1]), &s).unwrap();
            assert_eq!(r.total, 1.0);
            assert!(r.classical);
        }
    }

    #[test]
    fn binary_square_by_hand() {
        // W_1 = 0, W_2 = 1: two chains 0 -> e_i, each a single-edge box
        let s = k1(&[0.317317]);
        let expected = 2.0 * 2f64.sqrt();
        for f in [simulate_cost_naive, simulate_cost_profile] {
            let r = f(&LatticeProfile::new(vec![0, 2]), &s).unwrap();
            assert!((r.total - expected).abs() < 1e-12);
            assert_eq!(r.precalc, 0.0);
        }
    }

    #[test]
    fn empty_profile_costs_nothing() {
        let s = k1(&[0.3]);
        let r = simulate_cost_profile(&LatticeProfile::default(), &s).unwrap();
        assert_eq!(r.total, 0.0);
        let c = compare_to_ansatz(&LatticeProfile::default(), &s, &[1.5]).unwrap();
        assert_eq!(c.ratio, 0.0);
    }

    #[test]
    fn naive_and_profile_agree() {
        let s = CostSchedule::new(AlphaSchedule::new(vec![vec![0.2, 0.15], vec![0.35, 0.4]]).unwrap());
        for counts in [vec![0, 3], vec![0, 2, 1], vec![1, 1, 2], vec![0, 4], vec![0, 0, 3]] {
            let p = LatticeProfile::new(counts);
            let a = simulate_cost_naive(&p, &s).unwrap();
            let b = simulate_cost_profile(&p, &s).unwrap();
            assert!((a.total - b.total).abs() <= 1e-9 * a.total, "{p:?}: {} vs {}", a.total, b.total);
            assert_eq!(a.depth, b.depth);
            assert_eq!(a.search_levels.len(), b.search_levels.len());
        }
    }

    #[test]
    fn edge_count_by_generating_function() {
        for dims in [vec![1u32, 1], vec![2, 3], vec![1, 2, 2, 3]] {
            let p = LatticeProfile::from_dims(&dims);
            assert_eq!(edge_count(&p), Grid::new(&dims).unwrap().edge_count() as f64);
        }
    }

    #[test]
    fn class_sizes_sum_to_layer() {
        let p = LatticeProfile::new(vec![1, 2, 2]);
        for w in 0..=p.max_weight() {
            let total: f64 = vertex_classes(&p, w).iter().map(|(_, m)| m).sum();
            assert_eq!(total, crate::lattice::layer_size(&p, w as i64).to_f64().unwrap());
        }
    }

    #[test]
    fn rejects_digits_beyond_schedule() {
        assert!(simulate_cost_profile(&LatticeProfile::new(vec![0, 0, 1]), &k1(&[0.3])).is_err());
    }
}
