use proptest::prelude::*;
use quotient_orders::order::{
    action_properties, induced_relation, orbits, submajorize_compare, FiniteRelation, GroupAction, InduceMode,
};
use quotient_orders::Verdict;

/// Random partial order: a random DAG over a shuffled labelling, closed.
fn poset(size: usize) -> impl Strategy<Value = FiniteRelation> {
    (permutation(size), proptest::collection::vec(any::<bool>(), size * size)).prop_map(
        move |(perm, bits)| {
            let edges = (0..size)
                .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * size + j])
                .map(|(i, j)| (perm[i], perm[j]));
            FiniteRelation::from_pairs(size, edges).unwrap().reflexive_transitive_closure()
        },
    )
}

fn permutation(size: usize) -> BoxedStrategy<Vec<usize>> {
    Just((0..size).collect::<Vec<_>>()).prop_shuffle().boxed()
}

fn group(size: usize) -> impl Strategy<Value = GroupAction> {
    proptest::collection::vec(permutation(size), 0..3)
        .prop_map(move |gens| GroupAction::generate(size, &gens).unwrap())
}

fn instance() -> impl Strategy<Value = (FiniteRelation, GroupAction)> {
    (1usize..=8).prop_flat_map(|n| (poset(n), group(n)))
}

/// Smallest relation containing `seed` that every transform preserves.
fn invariant_closure(seed: &FiniteRelation, g: &GroupAction) -> FiniteRelation {
    let n = seed.size();
    let pairs: Vec<(usize, usize)> = seed
        .pairs()
        .flat_map(|(a, b)| g.perms().iter().map(move |t| (t[a], t[b])))
        .collect();
    FiniteRelation::from_pairs(n, pairs).unwrap().reflexive_transitive_closure()
}

fn is_antichain(rel: &FiniteRelation, set: &[usize]) -> bool {
    set.iter().all(|&a| set.iter().all(|&b| a == b || !rel.holds(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn strong_relation_is_preorder((rel, g) in instance()) {
        let q = induced_relation(&rel, &g, InduceMode::Strong).unwrap();
        prop_assert!(q.relation.unwrap().axioms().is_preorder());
    }

    #[test]
    fn strong_implies_weak((rel, g) in instance()) {
        let s = induced_relation(&rel, &g, InduceMode::Strong).unwrap().relation.unwrap();
        let w = induced_relation(&rel, &g, InduceMode::Weak).unwrap().relation.unwrap();
        for (a, b) in s.pairs() {
            prop_assert!(w.holds(a, b));
        }
    }

    #[test]
    fn increasing_actions_collapse_strong_and_weak((seed, g) in instance()) {
        let rel = invariant_closure(&seed, &g);
        let props = action_properties(&rel, &g).unwrap();
        prop_assert!(props.increasing);
        let s = induced_relation(&rel, &g, InduceMode::Strong).unwrap().relation;
        let w = induced_relation(&rel, &g, InduceMode::Weak).unwrap().relation;
        prop_assert_eq!(s, w);
    }

    #[test]
    fn transverse_actions_give_partial_orders((rel, g) in instance()) {
        let props = action_properties(&rel, &g).unwrap();
        if props.transverse {
            let q = induced_relation(&rel, &g, InduceMode::Strong).unwrap();
            prop_assert!(q.relation.as_ref().unwrap().axioms().antisymmetric);
            for orbit in &q.orbits {
                prop_assert!(is_antichain(&rel, orbit));
            }
        }
    }

    #[test]
    fn orbits_partition_ground_set(g in (1usize..=8).prop_flat_map(group)) {
        let q = orbits(&g);
        let mut all: Vec<usize> = q.orbits.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.size()).collect::<Vec<_>>());
        for (a, &ca) in q.class_index.iter().enumerate() {
            for (b, &cb) in q.class_index.iter().enumerate() {
                let linked = g.perms().iter().any(|t| t[a] == b);
                prop_assert_eq!(linked, ca == cb);
            }
        }
    }

    #[test]
    fn reduction_then_closure_round_trips(rel in (1usize..=8).prop_flat_map(poset)) {
        let cover = rel.transitive_reduction().unwrap();
        prop_assert_eq!(cover.reflexive_transitive_closure(), rel);
    }

    #[test]
    fn submajorize_transitive(
        a in proptest::collection::vec(-5i32..5, 3),
        b in proptest::collection::vec(-5i32..5, 3),
        c in proptest::collection::vec(-5i32..5, 3),
    ) {
        let f = |v: &[i32]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
        let (a, b, c) = (f(&a), f(&b), f(&c));
        if submajorize_compare(&a, &b).unwrap() == Verdict::Less && submajorize_compare(&b, &c).unwrap() == Verdict::Less {
            prop_assert_eq!(submajorize_compare(&a, &c).unwrap(), Verdict::Less);
        }
    }

    #[test]
    fn submajorize_ignores_entry_order(
        a in proptest::collection::vec(-10.0f64..10.0, 1..6).prop_shuffle(),
        seed in any::<u64>(),
    ) {
        let b: Vec<f64> = a.iter().map(|x| x + (seed % 3) as f64 - 1.0).collect();
        let mut a2 = a.clone();
        a2.reverse();
        let mut b2 = b.clone();
        b2.rotate_left(seed as usize % b.len());
        prop_assert_eq!(submajorize_compare(&a, &b).unwrap(), submajorize_compare(&a2, &b2).unwrap());
    }
}

#[test]
fn component_wise_order_under_permutations() {
    // {0,1}^3 with the component-wise order and the full symmetric group on coordinates
    let size = 8;
    let rel = FiniteRelation::from_fn(size, |a, b| a & !b == 0);
    let coords = |mask: usize, p: &[usize]| (0..3).fold(0, |acc, i| acc | ((mask >> p[i]) & 1) << i);
    let s3 = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let perms = s3.iter().map(|p| (0..size).map(|m| coords(m, p)).collect()).collect();
    let g = GroupAction::new(size, perms).unwrap();
    let props = action_properties(&rel, &g).unwrap();
    assert!(props.increasing && props.transverse);
    let q = induced_relation(&rel, &g, InduceMode::Strong).unwrap();
    // orbits are the four popcounts, totally ordered
    assert_eq!(q.num_orbits(), 4);
    assert!(q.relation.unwrap().axioms().is_partial_order());
}
