//! The lattice graph `Q(D, n)`: vertices in `{0, ..., d_1} x ... x {0, ..., d_n}`
//! with a directed edge `u -> u + e_i` for every coordinate that can be
//! incremented.
//!
//! Vertices are stored as mixed-radix integers with coordinate 0 as the most
//! significant digit, so index order equals lexicographic order on coordinate
//! vectors and every edge goes from a smaller to a larger index.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::invalid;
use crate::polynomials;
use crate::{Error, Result};

/// Upper bound on `n * prod(d_i + 1)` for materialized lattices.
pub const MAX_STATES: u128 = 10_000_000;

/// Counts `(n_0, n_1, ..., n_D)` of coordinates whose range is `{0, ..., d}`.
///
/// Trailing zero counts are trimmed, so two profiles describing the same
/// multiset of coordinate ranges compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct LatticeProfile {
    counts: Vec<u32>,
}

impl LatticeProfile {
    pub fn new(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    /// Profile of the box `{0..d_1} x ... x {0..d_n}`; ignores coordinate order.
    pub fn from_dims(dims: &[u32]) -> Self {
        let max = dims.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u32; max + 1];
        for &d in dims {
            counts[d as usize] += 1;
        }
        Self::new(counts)
    }

    /// `n` coordinates all ranging over `{0, ..., d}`.
    pub fn uniform(d: u32, n: u32) -> Self {
        let mut counts = vec![0u32; d as usize + 1];
        counts[d as usize] = n;
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `n_d`, zero beyond the stored range.
    pub fn count(&self, d: usize) -> u32 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// Largest coordinate range `D` present (0 for the empty profile).
    pub fn max_digit(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Total number of coordinates, including those with range `{0}`.
    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Number of coordinates with a non-trivial range.
    pub fn active(&self) -> u32 {
        self.counts.iter().skip(1).sum()
    }

    /// Weight of the top vertex, `sum_d d * n_d`.
    pub fn max_weight(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c as u64)
            .sum()
    }

    /// Coordinate ranges in canonical (ascending) order.
    pub fn dims(&self) -> Vec<u32> {
        let mut dims = Vec::with_capacity(self.n() as usize);
        for (d, &c) in self.counts.iter().enumerate() {
            dims.extend(core::iter::repeat_n(d as u32, c as usize));
        }
        dims
    }

    pub fn vertex_count(&self) -> BigUint {
        let mut total = BigUint::from(1u32);
        for (d, &c) in self.counts.iter().enumerate() {
            total *= BigUint::from(d as u64 + 1).pow(c);
        }
        total
    }
}

/// A lattice vertex. Ordered componentwise, which is only a partial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex(pub Vec<u32>);

impl Vertex {
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.0.len() != other.0.len() {
            return None;
        }
        let le = self.0.iter().zip(&other.0).all(|(a, b)| a <= b);
        let ge = self.0.iter().zip(&other.0).all(|(a, b)| a >= b);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

/// Mixed-radix indexing of the box `{0..d_1} x ... x {0..d_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    dims: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    pub fn new(dims: &[u32]) -> Result<Self> {
        let mut strides = vec![0usize; dims.len()];
        let mut len: u128 = 1;
        for i in (0..dims.len()).rev() {
            strides[i] = len as usize;
            len *= dims[i] as u128 + 1;
            if len * (dims.len() as u128).max(1) > MAX_STATES {
                return Err(Error::TooLarge {
                    what: "lattice states",
                    size: len * dims.len() as u128,
                    limit: MAX_STATES,
                });
            }
        }
        Ok(Self { dims: dims.to_vec(), strides, len: len as usize })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn stride(&self, coord: usize) -> usize {
        self.strides[coord]
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        debug_assert_eq!(coords.len(), self.dims.len());
        coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [u32]) {
        for (i, &s) in self.strides.iter().enumerate() {
            out[i] = (index / s) as u32;
            index %= s;
        }
    }

    pub fn coords(&self, index: usize) -> Vec<u32> {
        let mut out = vec![0; self.dims.len()];
        self.decode_into(index, &mut out);
        out
    }

    pub fn weight(&self, index: usize) -> u64 {
        let mut rest = index;
        let mut w = 0u64;
        for &s in &self.strides {
            w += (rest / s) as u64;
            rest %= s;
        }
        w
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        coords.len() == self.dims.len() && coords.iter().zip(&self.dims).all(|(c, d)| c <= d)
    }

    /// Whether `(tail, tail + e_coord)` is an edge of the lattice.
    pub fn is_edge(&self, edge: Edge) -> bool {
        edge.tail < self.len
            && edge.coord < self.dims.len()
            && (edge.tail / self.strides[edge.coord]) % (self.dims[edge.coord] as usize + 1)
                < self.dims[edge.coord] as usize
    }

    /// All edges from weight `w` to weight `w + 1`, ordered by `(tail, coord)`.
    pub fn layer_edges(&self, w: u64) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut buf = vec![0u32; self.n()];
        for tail in 0..self.len {
            self.decode_into(tail, &mut buf);
            if buf.iter().map(|&c| c as u64).sum::<u64>() != w {
                continue;
            }
            for coord in 0..self.n() {
                if buf[coord] < self.dims[coord] {
                    out.push(Edge { tail, coord });
                }
            }
        }
        out
    }

    /// Total number of edges, `sum_i d_i * prod_{j != i} (d_j + 1)`.
    pub fn edge_count(&self) -> u64 {
        (0..self.n())
            .map(|i| (self.len / (self.dims[i] as usize + 1) * self.dims[i] as usize) as u64)
            .sum()
    }
}

/// Directed edge `(tail, tail + e_coord)`; `tail` is a mixed-radix index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: usize,
    pub coord: usize,
}

/// Query access to a subgraph of a lattice, counting every query.
#[derive(Debug, Clone)]
pub struct EdgeOracle {
    grid: Grid,
    present: Vec<bool>,
    queries: u64,
}

impl EdgeOracle {
    fn with_fill(grid: Grid, fill: bool) -> Self {
        let slots = grid.len() * grid.n();
        Self { grid, present: vec![fill; slots], queries: 0 }
    }

    /// Every lattice edge present.
    pub fn full(grid: Grid) -> Self {
        Self::with_fill(grid, true)
    }

    /// No edge present.
    pub fn empty(grid: Grid) -> Self {
        Self::with_fill(grid, false)
    }

    /// Explicit subgraph; every listed pair must be a lattice edge.
    pub fn from_edges(grid: Grid, edges: &[Edge]) -> Result<Self> {
        let mut oracle = Self::empty(grid);
        for &e in edges {
            if !oracle.grid.is_edge(e) {
                return Err(invalid!(InvalidArgument, "({}, {}) is not a lattice edge", e.tail, e.coord));
            }
            oracle.set(e, true);
        }
        Ok(oracle)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn slot(&self, e: Edge) -> usize {
        e.tail * self.grid.n() + e.coord
    }

    pub fn set(&mut self, e: Edge, present: bool) {
        debug_assert!(self.grid.is_edge(e));
        let slot = self.slot(e);
        self.present[slot] = present;
    }

    /// Counted membership query.
    ///
    /// Panics if `e` is not an edge of the lattice.
    pub fn query(&mut self, e: Edge) -> bool {
        assert!(self.grid.is_edge(e), "query of a non-edge ({}, {})", e.tail, e.coord);
        self.queries += 1;
        self.present[self.slot(e)]
    }

    /// Uncounted membership lookup, for oracles and serialization.
    pub fn peek(&self, e: Edge) -> bool {
        self.grid.is_edge(e) && self.present[self.slot(e)]
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn reset_queries(&mut self) {
        self.queries = 0;
    }

    /// Present edges in `(tail, coord)` order.
    pub fn present_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.grid.n();
        self.present.iter().enumerate().filter(|(_, &p)| p).map(move |(slot, _)| Edge {
            tail: slot / n,
            coord: slot % n,
        })
    }
}

/// Path query between `s` and `t` inside the box `[s, t]` of an oracle's lattice.
#[derive(Debug, Clone)]
pub struct PathInstance {
    s: Vertex,
    t: Vertex,
    pub oracle: EdgeOracle,
}

impl PathInstance {
    pub fn new(s: Vertex, t: Vertex, oracle: EdgeOracle) -> Result<Self> {
        let grid = oracle.grid();
        if !grid.contains(&s.0) || !grid.contains(&t.0) {
            return Err(invalid!(InvalidArgument, "endpoints must lie in the oracle's lattice"));
        }
        if s.partial_cmp(&t) != Some(Ordering::Less) {
            return Err(invalid!(InvalidArgument, "need s < t componentwise with s != t"));
        }
        Ok(Self { s, t, oracle })
    }

    /// From the bottom to the top vertex of the oracle's lattice.
    pub fn whole(oracle: EdgeOracle) -> Result<Self> {
        let s = Vertex(vec![0; oracle.grid().n()]);
        let t = Vertex(oracle.grid().dims().to_vec());
        Self::new(s, t, oracle)
    }

    pub fn s(&self) -> &Vertex {
        &self.s
    }

    pub fn t(&self) -> &Vertex {
        &self.t
    }

    /// `d_i = t_i - s_i`.
    pub fn box_dims(&self) -> Vec<u32> {
        self.s.0.iter().zip(&self.t.0).map(|(a, b)| b - a).collect()
    }
}

/// Answer and query count of [`classical_dp_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathOutcome {
    pub reachable: bool,
    pub queries: u64,
}

/// Forward dynamic programming over the box `[s, t]`, re-based to the origin.
///
/// A vertex is reachable iff some in-edge from a reachable predecessor is
/// present; edges out of unreachable vertices are never queried.
pub fn classical_dp_path(instance: &mut PathInstance) -> PathOutcome {
    let dims = instance.box_dims();
    let sub = Grid::new(&dims).expect("box is no larger than the oracle's lattice");
    let before = instance.oracle.queries();
    let outer = instance.oracle.grid().clone();
    let base = outer.index(&instance.s.0);

    let mut reach = vec![false; sub.len()];
    reach[0] = true;
    let mut off = vec![0u32; sub.n()];
    for idx in 1..sub.len() {
        sub.decode_into(idx, &mut off);
        let global = base + outer.index(&off);
        for i in 0..sub.n() {
            if off[i] == 0 {
                continue;
            }
            let pred = idx - sub.stride(i);
            if !reach[pred] {
                continue;
            }
            let edge = Edge { tail: global - outer.stride(i), coord: i };
            if instance.oracle.query(edge) {
                reach[idx] = true;
                break;
            }
        }
    }
    PathOutcome {
        reachable: reach[sub.len() - 1],
        queries: instance.oracle.queries() - before,
    }
}

/// Number of vertices of weight `w`; zero outside `0..=max_weight`.
pub fn layer_size(profile: &LatticeProfile, w: i64) -> BigUint {
    polynomials::build_p(profile).coeff(w)
}

/// Adversarial oracle for the cut `E_w` between weights `w` and `w + 1`.
///
/// All edges outside the cut are present; inside it only `marked` (an index
/// into [`Grid::layer_edges`] order) is present, or nothing when `None`.
pub fn cut_instance(profile: &LatticeProfile, w: u64, marked: Option<usize>) -> Result<EdgeOracle> {
    if w >= profile.max_weight() {
        return Err(invalid!(
            InvalidArgument,
            "cut weight {w} must be below the top weight {}",
            profile.max_weight()
        ));
    }
    let grid = Grid::new(&profile.dims())?;
    let cut = grid.layer_edges(w);
    if let Some(index) = marked {
        if index >= cut.len() {
            return Err(Error::EdgeOutOfRange { index, len: cut.len() });
        }
    }
    let mut oracle = EdgeOracle::full(grid);
    for (i, &e) in cut.iter().enumerate() {
        oracle.set(e, Some(i) == marked);
    }
    Ok(oracle)
}

/// Each edge present independently with probability `p`, drawn from a
/// ChaCha8 stream in `(tail, coord)` order.
pub fn random_subgraph(profile: &LatticeProfile, p: f64, seed: u64) -> Result<EdgeOracle> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid!(InvalidArgument, "edge probability {p} outside [0, 1]"));
    }
    let grid = Grid::new(&profile.dims())?;
    random_subgraph_on(grid, p, seed)
}

/// [`random_subgraph`] on an arbitrary box, coordinates in the given order.
pub fn random_subgraph_on(grid: Grid, p: f64, seed: u64) -> Result<EdgeOracle> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid!(InvalidArgument, "edge probability {p} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = EdgeOracle::empty(grid);
    for tail in 0..oracle.grid.len() {
        for coord in 0..oracle.grid.n() {
            let e = Edge { tail, coord };
            if oracle.grid.is_edge(e) {
                let draw: f64 = rng.gen();
                oracle.set(e, draw < p);
            }
        }
    }
    Ok(oracle)
}
