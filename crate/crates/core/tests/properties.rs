mod common;

use proptest::prelude::*;
use svd_core::separator::{lift_cuts, PairKind, DEFAULT_BASE_SIZE};
use svd_core::vertex_cover::is_vertex_cover;
use svd_core::{
    exact_svd, find_induced_path, find_pure_pair, five_approx, ratio, recursive_separator, vc_exact,
    vc_two_approx, Graph, SearchBudget, SeparatorFamily, VertexSet, Weight, WeightMap,
};

use common::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(&bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn weighted(max_n: usize) -> impl Strategy<Value = (Graph, WeightMap)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(0usize..5, n).prop_map(move |idx| {
            let palette = svd_core::generate::weight_palette();
            let w = WeightMap::new(idx.iter().map(|&i| palette[i].clone()).collect()).unwrap();
            (g.clone(), w)
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    })
}

fn scale(w: &WeightMap, c: &Weight) -> WeightMap {
    WeightMap::new(w.as_slice().iter().map(|x| x * c).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in graph(12)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let c = g.complement();
        for u in 0..g.n() {
            prop_assert!(!c.has_edge(u, u));
            for v in u + 1..g.n() {
                prop_assert_ne!(g.has_edge(u, v), c.has_edge(u, v));
            }
        }
    }

    #[test]
    fn deletion_commutes_with_complement((g, x) in graph(10).prop_flat_map(|g| { let n = g.n(); (Just(g), subset(n)) })) {
        let (a, map_a) = g.delete_vertices(&x).unwrap();
        let (b, map_b) = g.complement().delete_vertices(&x).unwrap();
        prop_assert_eq!(a.complement(), b);
        prop_assert_eq!(map_a.to_old(), map_b.to_old());
    }

    #[test]
    fn set_weight_is_additive(((g, w), x, y) in weighted(10).prop_flat_map(|(g, w)| {
        let n = g.n();
        ((Just(g), Just(w)), subset(n), subset(n))
    })) {
        let _ = g;
        let disjoint_y = y.difference(&x);
        prop_assert_eq!(w.set_weight(&x.union(&disjoint_y)), w.set_weight(&x) + w.set_weight(&disjoint_y));
    }

    #[test]
    fn vertex_cover_is_scale_invariant((g, w) in weighted(10), num in 1i64..20, den in 1i64..20) {
        let c = ratio(num, den);
        let base = vc_two_approx(&g, &w).unwrap();
        let scaled = vc_two_approx(&g, &scale(&w, &c)).unwrap();
        prop_assert_eq!(&base.cover, &scaled.cover);
        prop_assert_eq!(&base.weight * &c, scaled.weight);
        prop_assert!(is_vertex_cover(&g, &base.cover));
        let exact = vc_exact(&g, &w, 16).unwrap();
        prop_assert_eq!(exact.weight, brute_vc(&g, &w));
    }

    #[test]
    fn induced_path_search_is_monotone(g in graph(9)) {
        let adj = masks(&g);
        let mut found_any = true;
        for k in 1..=g.n() {
            let found = find_induced_path(&g, k, SearchBudget::default()).unwrap();
            if let Some(p) = &found {
                let obs = svd_core::PathObstruction { kind: svd_core::PathKind::Pk, vertices: p.clone() };
                prop_assert!(path_pattern_holds(&adj, &obs, k));
            }
            // an induced P_k contains an induced P_(k-1)
            prop_assert!(found_any || found.is_none());
            found_any = found.is_some();
        }
    }

    #[test]
    fn lifted_families_separate(g in graph(9)) {
        prop_assume!(g.n() >= 2);
        let pair = find_pure_pair(&g, 1);
        prop_assert!(pair.verify(&g));
        let onto_a = pair.kind == PairKind::Complete;
        let frac = svd_core::separator::default_min_pair_fraction();
        let mut cuts = Vec::new();
        for side in [&pair.a, &pair.b] {
            let (sub, map) = g.delete_vertices(side).unwrap();
            let fam = recursive_separator(&sub, DEFAULT_BASE_SIZE, &frac);
            cuts.extend(lift_cuts(&fam.cuts, &map, g.n(), side, onto_a));
        }
        let mut family = recursive_separator(&g, DEFAULT_BASE_SIZE, &frac);
        family.cuts = cuts;
        prop_assert!(separates_everything(&g, &family));
    }

    #[test]
    fn approximations_respect_bounds((g, w) in weighted(9)) {
        let opt = brute_svd(&g, &w);
        let exact = exact_svd(&g, &w, 16).unwrap();
        prop_assert_eq!(&exact.weight, &opt);
        let five = five_approx(&g, &w, false).unwrap();
        prop_assert!(five.weight <= &opt * Weight::from_integer(5.into()));
        let pruned = five_approx(&g, &w, true).unwrap();
        prop_assert!(pruned.weight <= five.weight);
        prop_assert!(pruned.x.is_subset(&five.x));
    }
}

fn separates_everything(g: &Graph, fam: &SeparatorFamily) -> bool {
    let adj = masks(g);
    let all = full_mask(g.n());
    let cuts: Vec<(u32, u32)> = fam
        .cuts
        .iter()
        .map(|c| (set_mask(&c.a), set_mask(&c.b)))
        .collect();
    (0..=all).filter(|&k| is_clique(&adj, k)).all(|k| {
        (0..=all)
            .filter(|&s| s & k == 0 && is_stable(&adj, s))
            .all(|s| cuts.iter().any(|&(a, b)| k & !a == 0 && s & !b == 0))
    })
}
