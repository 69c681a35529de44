use er_core::{
    count_colourings, count_shape, is_valid_colouring, search_extremal, BigCount, ColourSpec,
    Colouring, CountJob, PartitionShape, SimpleGraph,
};
use proptest::prelude::*;

fn exact(g: &SimpleGraph, spec: &ColourSpec) -> BigCount {
    count_colourings(&CountJob::new(g, spec, u64::MAX / 4))
        .unwrap()
        .count
}

/// Every `s^e` colouring checked independently.
fn brute_force(g: &SimpleGraph, spec: &ColourSpec) -> u64 {
    let edges = g.edges();
    let s = spec.s();
    let total = (s as u64).pow(edges.len() as u32);
    let mut valid = 0;
    for code in 0..total {
        let mut rest = code;
        let mut colouring = Colouring::new();
        for &e in &edges {
            colouring.insert(e, (rest % s as u64) as usize);
            rest /= s as u64;
        }
        if is_valid_colouring(g, &colouring, spec).unwrap() {
            valid += 1;
        }
    }
    valid
}

fn arb_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=max_edges.min(pairs.len()))
            .prop_map(move |edges| SimpleGraph::from_edges(n, &edges).unwrap())
    })
}

fn arb_spec() -> impl Strategy<Value = ColourSpec> {
    prop_oneof![
        Just(ColourSpec::new(vec![3, 3]).unwrap()),
        Just(ColourSpec::new(vec![4, 3]).unwrap()),
        Just(ColourSpec::new(vec![3, 3, 3]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_brute_force(g in arb_graph(6, 9), spec in arb_spec()) {
        prop_assume!((spec.s() as f64).powi(g.edge_count() as i32) <= 20_000.0);
        prop_assert_eq!(exact(&g, &spec), BigCount::from_u64(brute_force(&g, &spec)));
    }

    #[test]
    fn multiplicative_over_disjoint_union(a in arb_graph(5, 8), b in arb_graph(4, 6)) {
        let spec = ColourSpec::new(vec![3, 3]).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(exact(&u, &spec), &exact(&a, &spec) * &exact(&b, &spec));
    }

    #[test]
    fn monotone_in_k(g in arb_graph(6, 12)) {
        let low = exact(&g, &ColourSpec::new(vec![3, 3]).unwrap());
        let mid = exact(&g, &ColourSpec::new(vec![4, 3]).unwrap());
        let high = exact(&g, &ColourSpec::new(vec![4, 4]).unwrap());
        prop_assert!(low <= mid && mid <= high);
    }

    #[test]
    fn colour_order_does_not_matter(g in arb_graph(6, 12)) {
        let a = exact(&g, &ColourSpec::new(vec![4, 3]).unwrap());
        let b = exact(&g, &ColourSpec::new(vec![3, 4]).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parallel_width_changes_nothing(g in arb_graph(7, 16), width in 1usize..40) {
        let spec = ColourSpec::new(vec![3, 3]).unwrap();
        let seq = count_colourings(&CountJob::new(&g, &spec, u64::MAX / 4)).unwrap();
        let par = count_colourings(&CountJob::new(&g, &spec, u64::MAX / 4).with_parallel_width(width)).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn trivial_bound(g in arb_graph(7, 21)) {
        let spec = ColourSpec::new(vec![3, 3]).unwrap();
        prop_assert!(exact(&g, &spec) <= BigCount::pow(2, g.edge_count()));
    }
}

#[test]
fn small_multipartite_values() {
    let s33 = ColourSpec::new(vec![3, 3]).unwrap();
    let s43 = ColourSpec::new(vec![4, 3]).unwrap();
    let shape = |t: &str| t.parse::<PartitionShape>().unwrap();
    let value = |t: &str, spec: &ColourSpec| {
        count_shape(&shape(t), spec, u64::MAX / 4, 1)
            .unwrap()
            .count
            .to_string()
    };
    assert_eq!(value("6:3,3", &s33), "512");
    assert_eq!(value("5:3,2", &s43), "64");
    assert_eq!(value("7:4,3", &s43), "4096");
    // brute-force oracle on the tripartite graphs
    for t in ["5:2,2,1", "3:1,1,1", "4:2,1,1"] {
        let g = SimpleGraph::complete_multipartite(shape(t).parts()).unwrap();
        assert_eq!(value(t, &s43), brute_force(&g, &s43).to_string(), "{t}");
    }
}

#[test]
fn extremal_search_matches_brute_force_over_all_shapes() {
    let s33 = ColourSpec::new(vec![3, 3]).unwrap();
    for n in 2..=5 {
        let r = search_extremal(n, &s33, u64::MAX / 4, 1).unwrap();
        assert!(r.is_complete());
        let counts: Vec<(PartitionShape, u64)> = PartitionShape::all_of(n)
            .into_iter()
            .map(|shape| {
                let g = SimpleGraph::complete_multipartite(shape.parts()).unwrap();
                let c = brute_force(&g, &s33);
                (shape, c)
            })
            .collect();
        let best = counts.iter().map(|(_, c)| *c).max().unwrap();
        assert_eq!(r.best_value, BigCount::from_u64(best), "n = {n}");
        let argmax: Vec<PartitionShape> = counts
            .into_iter()
            .filter(|(_, c)| *c == best)
            .map(|(s, _)| s)
            .collect();
        assert_eq!(r.argmax_shapes, argmax, "n = {n}");
    }
}
