use lattice_speedup_core::smc::{
    pair_transitions, smc_bruteforce, smc_dp, smc_dp_pairs, BoundedAnswer, SmcAnswer, SmcInstance,
};
use proptest::prelude::*;

fn instances() -> impl Strategy<Value = SmcInstance> {
    (1usize..=4, 1usize..=4, 0u32..=3).prop_flat_map(|(n, m, d)| {
        prop::collection::vec(prop::collection::vec(0..n, 1..=n), m)
            .prop_map(move |sets| SmcInstance::new(n, sets, d).unwrap())
    })
}

fn cover(a: SmcAnswer) -> Option<u32> {
    match a {
        SmcAnswer::Cover(k) => Some(k),
        SmcAnswer::Infeasible => None,
    }
}

fn with_demand(i: &SmcInstance, d: u32) -> SmcInstance {
    SmcInstance::new(i.n(), i.sets().to_vec(), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(800))]

    #[test]
    fn three_solvers_agree(i in instances()) {
        let a = smc_dp(&i).unwrap();
        let b = smc_dp_pairs(&i).unwrap();
        prop_assert_eq!(a, b);
        let k_max = i.n() as u32 * i.demand();
        let c = smc_bruteforce(&i, k_max);
        match a {
            SmcAnswer::Cover(k) => prop_assert_eq!(c, BoundedAnswer::Cover(k)),
            SmcAnswer::Infeasible => prop_assert_eq!(c, BoundedAnswer::ExceedsLimit),
        }
    }

    #[test]
    fn demand_bounds(i in instances()) {
        prop_assume!(i.is_feasible() && i.demand() > 0);
        let k = cover(smc_dp(&i).unwrap()).unwrap();
        let one = cover(smc_dp(&with_demand(&i, 1)).unwrap()).unwrap();
        prop_assert!(k <= i.demand() * one);
        let widest = i.sets().iter().map(|s| s.len() as u32).max().unwrap();
        let need = i.demand() * i.n() as u32;
        prop_assert!(k >= need.div_ceil(widest));
        let lower = cover(smc_dp(&with_demand(&i, i.demand() - 1)).unwrap()).unwrap();
        prop_assert!(lower <= k);
    }

    #[test]
    fn fewer_sets_never_help(i in instances()) {
        prop_assume!(i.sets().len() > 1);
        let sub = SmcInstance::new(i.n(), i.sets()[1..].to_vec(), i.demand()).unwrap();
        match (cover(smc_dp(&i).unwrap()), cover(smc_dp(&sub).unwrap())) {
            (Some(k), Some(k2)) => prop_assert!(k <= k2),
            (None, Some(_)) => prop_assert!(false, "dropping a set made the instance feasible"),
            _ => {}
        }
    }
}

#[test]
fn pair_graph_is_the_lattice() {
    for d in 1..=2 {
        let i = SmcInstance::from_one_based(3, vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![2]], d).unwrap();
        let base = d as usize + 1;
        for tr in pair_transitions(&i).unwrap() {
            let (mut a, mut b) = (tr.from.x, tr.to.x);
            let mut changed = 0;
            for _ in 0..3 {
                let (x, y) = (a % base, b % base);
                assert!(x == y || x == y + 1);
                changed += usize::from(x != y);
                a /= base;
                b /= base;
            }
            assert_eq!(changed, 1);
            assert!(tr.cost <= 1);
        }
    }
}

#[test]
fn zero_demand_needs_nothing() {
    let i = SmcInstance::from_one_based(3, vec![vec![1], vec![2]], 0).unwrap();
    assert_eq!(smc_dp(&i).unwrap(), SmcAnswer::Cover(0));
    assert_eq!(smc_dp_pairs(&i).unwrap(), SmcAnswer::Cover(0));
    assert_eq!(smc_bruteforce(&i, 8), BoundedAnswer::Cover(0));
}

#[test]
fn single_set_needs_demand_copies() {
    for d in 1..=3 {
        let i = SmcInstance::from_one_based(3, vec![vec![1, 2, 3]], d).unwrap();
        assert_eq!(smc_dp_pairs(&i).unwrap(), SmcAnswer::Cover(d));
    }
}
