mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use planarize_core::certify::{
    classify_component, is_partial_2_tree, is_partial_2_tree_with_order, is_planar,
    is_pseudoforest, ComponentClass,
};
use planarize_core::generators::{complete, random_gnm};
use planarize_core::oracle::{exact_treewidth, find_kuratowski, has_property, max_induced};
use planarize_core::{MultiGraph, PropertyId, VertexId};

fn arb_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        e.push((i, j));
                    }
                    k += 1;
                }
            }
            MultiGraph::from_edge_list(&e, n).unwrap()
        })
    })
}

fn relabel(g: &MultiGraph, perm: &[usize]) -> MultiGraph {
    let e: Vec<_> = g
        .edges()
        .into_iter()
        .flat_map(|(u, v, k)| std::iter::repeat_n((perm[u.index()], perm[v.index()]), k))
        .collect();
    MultiGraph::from_edge_list(&e, g.id_bound()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewriting_order_does_not_change_verdict(g in arb_graph(10), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<VertexId> = g.vertices().collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(is_partial_2_tree(&g), is_partial_2_tree_with_order(&g, &order));
    }

    #[test]
    fn containment_chain(g in arb_graph(10)) {
        if is_pseudoforest(&g) {
            prop_assert!(is_partial_2_tree(&g));
        }
        if is_partial_2_tree(&g) {
            prop_assert!(is_planar(&g));
        }
    }

    #[test]
    fn partial_2_tree_matches_treewidth(g in arb_graph(8)) {
        prop_assert_eq!(is_partial_2_tree(&g), exact_treewidth(&g).unwrap() <= 2);
    }

    #[test]
    fn planarity_matches_kuratowski_search(g in arb_graph(10)) {
        let witness = find_kuratowski(&g).unwrap();
        if let Some(w) = &witness {
            prop_assert!(w.verify(&g));
        }
        prop_assert_eq!(is_planar(&g), witness.is_none());
    }

    #[test]
    fn classification_is_relabeling_invariant(g in arb_graph(9), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.id_bound()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        for c in g.components() {
            let part = g.induced(&c.iter().copied().collect()).unwrap();
            let image: BTreeSet<VertexId> = c.iter().map(|v| VertexId::from(perm[v.index()])).collect();
            let moved = h.induced(&image).unwrap();
            let (x, y) = (classify_component(&part), classify_component(&moved));
            prop_assert_eq!(x.accepted(), y.accepted());
            if x.accepted() {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn sparse_classification_is_relabeling_invariant(n in 4usize..14, extra in 0usize..5, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let g = random_gnm(n, (n - 1 + extra).min(n * (n - 1) / 2), seed).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let h = relabel(&g, &perm);
        for c in g.components() {
            let part = g.induced(&c.iter().copied().collect()).unwrap();
            let image: BTreeSet<VertexId> = c.iter().map(|v| VertexId::from(perm[v.index()])).collect();
            prop_assert_eq!(classify_component(&part), classify_component(&h.induced(&image).unwrap()));
        }
    }

    #[test]
    fn accepted_classes_are_planar_with_small_treewidth(g in arb_graph(9)) {
        for c in g.components() {
            let part = g.induced(&c.into_iter().collect()).unwrap();
            match classify_component(&part) {
                ComponentClass::Reject(_) => {}
                ComponentClass::K4 => {
                    prop_assert!(is_planar(&part));
                    prop_assert!(!is_partial_2_tree(&part));
                }
                _ => {
                    prop_assert!(is_planar(&part));
                    prop_assert!(is_partial_2_tree(&part));
                }
            }
        }
    }

    #[test]
    fn adding_an_edge_never_raises_the_maximum(g in arb_graph(8), pick in any::<usize>()) {
        let vs: Vec<VertexId> = g.vertices().collect();
        let missing: Vec<(VertexId, VertexId)> = vs
            .iter()
            .flat_map(|&a| vs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a < b && !g.has_edge(a, b))
            .collect();
        if let Some(&(a, b)) = missing.get(pick % missing.len().max(1)) {
            let mut h = g.clone();
            h.add_edge(a, b).unwrap();
            for p in PropertyId::ALL {
                prop_assert!(max_induced(&h, p).unwrap().size <= max_induced(&g, p).unwrap().size, "{}", p);
            }
        }
    }

    #[test]
    fn oracle_maxima_follow_the_containment_chain(g in arb_graph(9)) {
        let size = |p| max_induced(&g, p).unwrap().size;
        prop_assert!(size(PropertyId::Planar) >= size(PropertyId::Treewidth2));
        prop_assert!(size(PropertyId::Treewidth2) >= size(PropertyId::Pseudoforest));
        prop_assert!(size(PropertyId::Pseudoforest) >= size(PropertyId::Forest));
    }
}

#[test]
fn certifiers_agree_with_oracle_definitions() {
    for (name, g) in common::small_corpus(300) {
        assert_eq!(
            is_pseudoforest(&g),
            has_property(&g, PropertyId::Pseudoforest).unwrap(),
            "{name}"
        );
        assert_eq!(
            is_partial_2_tree(&g),
            has_property(&g, PropertyId::Treewidth2).unwrap(),
            "{name}"
        );
        assert_eq!(
            is_planar(&g),
            has_property(&g, PropertyId::Planar).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn complete_graph_treewidth() {
    for k in 1..=6 {
        assert_eq!(exact_treewidth(&complete(k)).unwrap(), k.saturating_sub(1));
    }
}

#[test]
fn oracle_witness_has_the_property() {
    for seed in 0..40 {
        let g = random_gnm(8, 14, seed).unwrap();
        for p in PropertyId::ALL {
            let best = max_induced(&g, p).unwrap();
            let s: BTreeSet<VertexId> = best.witness.iter().copied().collect();
            assert_eq!(s.len(), best.size);
            assert!(
                has_property(&g.induced(&s).unwrap(), p).unwrap(),
                "{p} seed {seed}"
            );
        }
    }
}
