//! Set Multicover: pick the fewest sets (repetition allowed) so that every
//! element of `[n]` is covered at least `D` times.
//!
//! States are residual demand vectors `x in {0..D}^n` stored as mixed-radix
//! integers with coordinate `i` of stride `(D+1)^i`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::{Error, Result};

/// Largest DP table (states times sets) the solvers allocate.
pub const MAX_TABLE: u128 = 50_000_000;

const INF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmcInstance {
    n: usize,
    /// 0-based, sorted, duplicate-free element lists.
    sets: Vec<Vec<usize>>,
    demand: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmcAnswer {
    Cover(u32),
    /// Some element lies in no set.
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedAnswer {
    Cover(u32),
    ExceedsLimit,
}

impl SmcInstance {
    /// `sets` hold 0-based elements; each set must be non-empty.
    pub fn new(n: usize, sets: Vec<Vec<usize>>, demand: u32) -> Result<Self> {
        let mut clean = Vec::with_capacity(sets.len());
        for (j, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(invalid!(InvalidArgument, "set {j} is empty"));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(invalid!(InvalidArgument, "set {j} contains element {e} outside 0..{n}"));
            }
            clean.push(s);
        }
        Ok(Self { n, sets: clean, demand })
    }

    /// Same as [`SmcInstance::new`] with 1-based elements.
    pub fn from_one_based(n: usize, sets: Vec<Vec<usize>>, demand: u32) -> Result<Self> {
        let mut shifted = Vec::with_capacity(sets.len());
        for s in sets {
            if s.contains(&0) {
                return Err(invalid!(InvalidArgument, "element 0 in 1-based input"));
            }
            shifted.push(s.into_iter().map(|e| e - 1).collect());
        }
        Self::new(n, shifted, demand)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn demand(&self) -> u32 {
        self.demand
    }

    pub fn is_feasible(&self) -> bool {
        self.demand == 0 || (0..self.n).all(|e| self.sets.iter().any(|s| s.contains(&e)))
    }

    fn states(&self, per_state: usize) -> Result<usize> {
        let base = self.demand as u128 + 1;
        let mut states: u128 = 1;
        for _ in 0..self.n {
            states = states.saturating_mul(base);
        }
        let table = states.saturating_mul(per_state.max(1) as u128);
        if table > MAX_TABLE {
            return Err(Error::TooLarge { what: "set multicover table", size: table, limit: MAX_TABLE });
        }
        Ok(states as usize)
    }

    fn strides(&self) -> Vec<usize> {
        let base = self.demand as usize + 1;
        let mut s = Vec::with_capacity(self.n);
        let mut acc = 1;
        for _ in 0..self.n {
            s.push(acc);
            acc *= base;
        }
        s
    }

    fn digit(&self, x: usize, stride: usize) -> u32 {
        ((x / stride) % (self.demand as usize + 1)) as u32
    }

    fn full_index(&self, states: usize) -> usize {
        states - 1
    }
}

/// `dp(x) = 1 + min_S dp(x')` with `x'_i = max(0, x_i - [i in S])`.
pub fn smc_dp(instance: &SmcInstance) -> Result<SmcAnswer> {
    if !instance.is_feasible() {
        return Ok(SmcAnswer::Infeasible);
    }
    let m = instance.sets.len();
    let states = instance.states(m + 1)?;
    let strides = instance.strides();
    // next[j][x]: residual after applying set j at x
    let mut next = vec![vec![0usize; states]; m];
    for (j, set) in instance.sets.iter().enumerate() {
        for x in 0..states {
            let mut y = x;
            for &e in set {
                if instance.digit(x, strides[e]) > 0 {
                    y -= strides[e];
                }
            }
            next[j][x] = y;
        }
    }
    let mut dp = vec![INF; states];
    dp[0] = 0;
    for x in 1..states {
        let mut best = INF;
        for table in &next {
            let y = table[x];
            if y != x && dp[y] != INF {
                best = best.min(dp[y] + 1);
            }
        }
        dp[x] = best;
    }
    Ok(match dp[instance.full_index(states)] {
        INF => SmcAnswer::Infeasible,
        k => SmcAnswer::Cover(k),
    })
}

/// Smallest element `e >= from` of `set` with positive residual demand.
fn pivot(instance: &SmcInstance, strides: &[usize], x: usize, set: &[usize], from: usize) -> Option<usize> {
    set.iter().copied().find(|&e| e >= from && instance.digit(x, strides[e]) > 0)
}

/// A pair state: residual demand `x`, the set `set` in use, and the first
/// element `next` that set may still cover. `next = n` means the set is spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairState {
    pub x: usize,
    pub set: usize,
    pub next: usize,
}

/// One step of the pair-state graph: exactly one unit of demand is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairTransition {
    pub from: PairState,
    pub to: PairState,
    /// `0` when the current set continues, `1` when a new set is opened.
    pub cost: u32,
}

fn pair_moves(instance: &SmcInstance, strides: &[usize], st: PairState) -> Vec<PairTransition> {
    let step = |e: usize, set: usize, cost: u32| PairTransition {
        from: st,
        to: PairState { x: st.x - strides[e], set, next: e + 1 },
        cost,
    };
    if let Some(e) = pivot(instance, strides, st.x, &instance.sets[st.set], st.next) {
        return vec![step(e, st.set, 0)];
    }
    let mut out = Vec::new();
    for (t, other) in instance.sets.iter().enumerate() {
        if let Some(e) = pivot(instance, strides, st.x, other, 0) {
            out.push(step(e, t, 1));
        }
    }
    out
}

/// Every transition of the pair-state recurrence, state by state.
pub fn pair_transitions(instance: &SmcInstance) -> Result<Vec<PairTransition>> {
    let (n, m) = (instance.n, instance.sets.len());
    let states = instance.states(m * (n + 1))?;
    let strides = instance.strides();
    let mut out = Vec::new();
    for x in 1..states {
        for set in 0..m {
            for next in 0..=n {
                out.extend(pair_moves(instance, &strides, PairState { x, set, next }));
            }
        }
    }
    Ok(out)
}

/// The pair-state recurrence, where each step removes one unit of demand.
///
/// A set in use covers its elements in increasing order, each at most once,
/// so the state also records the next element it may cover. Opening a set
/// costs 1 and the start state holds a spent set, so the answer is
/// `dp(D^n, S, n)` for any `S`.
pub fn smc_dp_pairs(instance: &SmcInstance) -> Result<SmcAnswer> {
    if !instance.is_feasible() {
        return Ok(SmcAnswer::Infeasible);
    }
    if instance.demand == 0 || instance.n == 0 {
        return Ok(SmcAnswer::Cover(0));
    }
    let (n, m) = (instance.n, instance.sets.len());
    let states = instance.states(m * (n + 1))?;
    let strides = instance.strides();
    let at = |x: usize, s: usize, p: usize| (x * m + s) * (n + 1) + p;
    let mut dp = vec![INF; states * m * (n + 1)];
    dp[..m * (n + 1)].iter_mut().for_each(|v| *v = 0);
    for x in 1..states {
        for s in 0..m {
            for p in 0..=n {
                let mut best = INF;
                for tr in pair_moves(instance, &strides, PairState { x, set: s, next: p }) {
                    let v = dp[at(tr.to.x, tr.to.set, tr.to.next)];
                    if v != INF {
                        best = best.min(v + tr.cost);
                    }
                }
                dp[at(x, s, p)] = best;
            }
        }
    }
    Ok(match dp[at(instance.full_index(states), 0, n)] {
        INF => SmcAnswer::Infeasible,
        k => SmcAnswer::Cover(k),
    })
}

/// Iterative deepening over multisets of at most `k_max` sets.
pub fn smc_bruteforce(instance: &SmcInstance, k_max: u32) -> BoundedAnswer {
    let m = instance.sets.len();
    let mut cover = vec![0u32; instance.n];
    for k in 0..=k_max {
        if multiset_search(instance, k as usize, 0, m, &mut cover) {
            return BoundedAnswer::Cover(k);
        }
    }
    BoundedAnswer::ExceedsLimit
}

fn multiset_search(instance: &SmcInstance, left: usize, first: usize, m: usize, cover: &mut [u32]) -> bool {
    if left == 0 {
        return cover.iter().all(|&c| c >= instance.demand);
    }
    for j in first..m {
        for &e in &instance.sets[j] {
            cover[e] += 1;
        }
        let found = multiset_search(instance, left - 1, j, m, cover);
        for &e in &instance.sets[j] {
            cover[e] -= 1;
        }
        if found {
            return true;
        }
    }
    false
}
