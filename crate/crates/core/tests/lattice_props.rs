use std::collections::VecDeque;

use lattice_speedup_core::lattice::{
    classical_dp_path, cut_instance, layer_size, random_subgraph, random_subgraph_on, Edge, EdgeOracle, Grid,
    PathInstance, Vertex,
};
use lattice_speedup_core::LatticeProfile;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Reachability by breadth-first search over the materialized edge set.
fn bfs(grid: &Grid, oracle: &EdgeOracle, s: &[u32], t: &[u32]) -> bool {
    let mut adj = vec![Vec::new(); grid.len()];
    for e in oracle.present_edges() {
        adj[e.tail].push(e.tail + grid.stride(e.coord));
    }
    let inside = |v: usize| {
        let c = grid.coords(v);
        c.iter().zip(s).zip(t).all(|((x, lo), hi)| lo <= x && x <= hi)
    };
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

fn instance() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>, f64, u64)> {
    (1usize..=4, 1u32..=3)
        .prop_flat_map(|(n, dmax)| {
            (
                prop::collection::vec(1..=dmax, n),
                prop::collection::vec(0.0f64..1.0, n),
                prop::collection::vec(0.0f64..1.0, n),
                0.2f64..0.9,
                any::<u64>(),
            )
        })
        .prop_map(|(dims, a, b, p, seed)| {
            let mut s = Vec::new();
            let mut t = Vec::new();
            for ((&d, x), y) in dims.iter().zip(a).zip(b) {
                let lo = (x * (d + 1) as f64) as u32;
                let hi = (y * (d + 1) as f64) as u32;
                s.push(lo.min(hi).min(d));
                t.push(lo.max(hi).min(d));
            }
            if s == t {
                // force s != t along the first coordinate
                if t[0] < dims[0] {
                    t[0] += 1;
                } else {
                    s[0] -= 1;
                }
            }
            (dims, s, t, p, seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn dp_agrees_with_bfs((dims, s, t, p, seed) in instance()) {
        let grid = Grid::new(&dims).unwrap();
        let oracle = random_subgraph_on(grid.clone(), p, seed).unwrap();
        let expected = bfs(&grid, &oracle, &s, &t);
        let mut inst = PathInstance::new(Vertex(s.clone()), Vertex(t.clone()), oracle).unwrap();
        let out = classical_dp_path(&mut inst);
        prop_assert_eq!(out.reachable, expected);
        let cells: u64 = s.iter().zip(&t).map(|(a, b)| (b - a + 1) as u64).product();
        prop_assert!(out.queries <= dims.len() as u64 * cells);
    }

    #[test]
    fn layers_are_symmetric_and_unimodal(counts in prop::collection::vec(0u32..4, 1..5)) {
        let profile = LatticeProfile::new(counts);
        let top = profile.max_weight() as i64;
        let sizes: Vec<f64> = (0..=top).map(|w| layer_size(&profile, w).to_f64().unwrap()).collect();
        for w in 0..=top {
            prop_assert_eq!(sizes[w as usize], sizes[(top - w) as usize]);
        }
        for w in 0..(top / 2) as usize {
            prop_assert!(sizes[w] <= sizes[w + 1]);
        }
    }
}

#[test]
fn full_square_connects() {
    let grid = Grid::new(&[1, 1]).unwrap();
    let mut inst = PathInstance::whole(EdgeOracle::full(grid)).unwrap();
    assert!(classical_dp_path(&mut inst).reachable);
}

#[test]
fn square_without_edges_into_top() {
    let grid = Grid::new(&[1, 1]).unwrap();
    let mut oracle = EdgeOracle::full(grid.clone());
    let t = grid.index(&[1, 1]);
    oracle.set(Edge { tail: t - grid.stride(0), coord: 0 }, false);
    oracle.set(Edge { tail: t - grid.stride(1), coord: 1 }, false);
    let mut inst = PathInstance::whole(oracle).unwrap();
    assert!(!classical_dp_path(&mut inst).reachable);
}

#[test]
fn layer_size_examples() {
    assert_eq!(layer_size(&LatticeProfile::new(vec![0, 0, 2]), 2).to_u64(), Some(3));
    assert_eq!(layer_size(&LatticeProfile::new(vec![0, 4]), 2).to_u64(), Some(6));
    assert_eq!(layer_size(&LatticeProfile::new(vec![1, 2, 3]), 0).to_u64(), Some(1));
    assert_eq!(layer_size(&LatticeProfile::new(vec![0, 2]), 3).to_u64(), Some(0));
    assert_eq!(layer_size(&LatticeProfile::new(vec![0, 2]), -1).to_u64(), Some(0));
}

#[test]
fn cut_instances_decide_reachability() {
    let profile = LatticeProfile::new(vec![0, 2]);
    let yes = cut_instance(&profile, 1, Some(0)).unwrap();
    assert!(classical_dp_path(&mut PathInstance::whole(yes).unwrap()).reachable);
    let no = cut_instance(&profile, 1, None).unwrap();
    assert!(!classical_dp_path(&mut PathInstance::whole(no).unwrap()).reachable);
    let cut = Grid::new(&profile.dims()).unwrap().layer_edges(1).len();
    assert!(cut_instance(&profile, 1, Some(cut)).is_err());
}

#[test]
fn every_marked_cut_edge_connects() {
    let profile = LatticeProfile::new(vec![0, 1, 2]);
    let grid = Grid::new(&profile.dims()).unwrap();
    for w in 0..profile.max_weight() {
        for m in 0..grid.layer_edges(w).len() {
            let o = cut_instance(&profile, w, Some(m)).unwrap();
            assert!(classical_dp_path(&mut PathInstance::whole(o).unwrap()).reachable);
        }
    }
}

#[test]
fn cut_sizes_sum_to_edge_count() {
    for (d, n) in [(1u32, 3u32), (2, 3), (3, 2), (2, 4)] {
        let profile = LatticeProfile::uniform(d, n);
        let grid = Grid::new(&profile.dims()).unwrap();
        let total: usize = (0..profile.max_weight()).map(|w| grid.layer_edges(w).len()).sum();
        let expected = (d as u64 + 1).pow(n - 1) * d as u64 * n as u64;
        assert_eq!(total as u64, expected);
        assert_eq!(grid.edge_count(), expected);
    }
}

#[test]
fn random_subgraph_extremes_and_determinism() {
    let profile = LatticeProfile::new(vec![0, 1, 2]);
    let full = random_subgraph(&profile, 1.0, 7).unwrap();
    assert_eq!(full.present_edges().count() as u64, full.grid().edge_count());
    let empty = random_subgraph(&profile, 0.0, 7).unwrap();
    assert!(!classical_dp_path(&mut PathInstance::whole(empty).unwrap()).reachable);
    let a: Vec<Edge> = random_subgraph(&profile, 0.5, 42).unwrap().present_edges().collect();
    let b: Vec<Edge> = random_subgraph(&profile, 0.5, 42).unwrap().present_edges().collect();
    assert_eq!(a, b);
}
