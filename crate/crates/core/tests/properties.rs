use std::collections::BTreeSet;

use proptest::prelude::*;

use arborlink::components::check_parity_reduction;
use arborlink::flatten::is_flattening_set;
use arborlink::{
    cf_value, closure, compile, flattening_number, flattening_number_bruteforce, m_bruteforce,
    parse_tree, rational_tangle, Coloring, Diagram, PlaneTree, RandomTreeConfig,
};

fn tree(max_vertices: usize) -> impl Strategy<Value = PlaneTree> {
    (2..=max_vertices, any::<u64>()).prop_map(|(n, seed)| {
        PlaneTree::random(&RandomTreeConfig::new(n, -5, 5), seed).expect("valid config")
    })
}

fn connected_diagram() -> impl Strategy<Value = Diagram> {
    tree(12).prop_map(|t| compile(&t)).prop_filter("needs a connected diagram with crossings", |d| {
        d.is_connected() && d.crossing_count() > 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_parses_back(t in tree(20)) {
        prop_assert_eq!(parse_tree(&t.serialize()).unwrap(), t);
    }

    #[test]
    fn ramified_tree_parses_back(t in tree(10), w in -5i64..=5, k in 2usize..=5, pick in any::<usize>()) {
        let target = pick % t.len();
        let bar = t.add_ramification(target, 0, w, &vec![vec![2]; k - 1]).unwrap();
        prop_assert_eq!(bar.len(), t.len() + k);
        prop_assert_eq!(parse_tree(&bar.serialize()).unwrap(), bar);
    }

    #[test]
    fn dp_matches_bruteforce(t in tree(14)) {
        let dp = flattening_number(&t);
        prop_assert_eq!(dp.witness.len(), dp.value);
        prop_assert!(is_flattening_set(&t, &dp.witness).unwrap());
        prop_assert_eq!(flattening_number_bruteforce(&t).unwrap(), dp.value);
    }

    #[test]
    fn ramification_of_valency_at_least_three(t in tree(12), k in 3usize..=6, pick in any::<usize>()) {
        let target = pick % t.len();
        let pos = pick % (t.children(target).len() + 1);
        let bar = t.add_ramification(target, pos, 1, &vec![vec![3, -2]; k - 1]).unwrap();
        prop_assert_eq!(flattening_number(&bar).value, flattening_number(&t).value + k - 2);
    }

    #[test]
    fn max_components_is_f_plus_two(t in tree(9)) {
        prop_assert_eq!(m_bruteforce(&t).unwrap().value, flattening_number(&t).value + 2);
    }

    #[test]
    fn parity_shift_keeps_components(t in tree(10), seed in any::<u64>()) {
        prop_assert!(check_parity_reduction(&t, 3, seed).is_clean());
    }

    #[test]
    fn diagram_json_round_trip(t in tree(14)) {
        let d = compile(&t);
        let back = Diagram::import(&d.export()).unwrap();
        prop_assert_eq!(back.export(), d.export());
        prop_assert_eq!(back.components(), d.components());
        prop_assert_eq!(back.arc_count(), d.arc_count());
    }

    #[test]
    fn two_bridge_component_count(ws in prop::collection::vec(-4i64..=4, 1..5)) {
        // numerator parity decides knot (1) or two-component link
        let alpha = cf_value(&ws).numerator();
        let d = rational_tangle(&ws).numerator_closure();
        if alpha != 0 {
            prop_assert_eq!(d.components(), if alpha % 2 == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn closure_laws(d in connected_diagram(), raw in prop::collection::vec(any::<usize>(), 0..6), cut in 0usize..6) {
        let n = d.arc_count();
        let all: Vec<usize> = raw.iter().map(|a| a % n).collect();
        let small: BTreeSet<usize> = all[..cut.min(all.len())].iter().copied().collect();
        let big: BTreeSet<usize> = all.iter().copied().collect();
        let cl = |s: &BTreeSet<usize>| closure(&d, &Coloring::new(s.iter().copied())).unwrap().colored;
        let (cs, cb) = (cl(&small), cl(&big));
        prop_assert!(small.is_subset(&cs));
        prop_assert_eq!(cl(&cs), cs.clone());
        prop_assert!(cs.is_subset(&cb));
    }
}
