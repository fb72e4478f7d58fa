use proptest::prelude::*;

use phylokit::enumerate::canonical_graph6;
use phylokit::io::{from_graph6, parse_digraph, parse_graph, to_graph6, write_digraph, write_graph};
use phylokit::phylo::{compute, lower_bound_clique_cover, phylogeny_number_exact, ComputeOptions};
use phylokit::{phylogeny_graph, validate_positional, Graph};

/// Graphs on 1..=max_n vertices with each pair present independently.
fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graphs(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in graphs(10)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graphs(8).prop_flat_map(|g| {
        let ids: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(ids).prop_shuffle())
    })) {
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_edges(g.n(), &edges).unwrap();
        prop_assert_eq!(canonical_graph6(&g).unwrap(), canonical_graph6(&h).unwrap());
    }

    #[test]
    fn exact_witness_is_valid_and_matches_pipeline(g in graphs(7)) {
        let exact = phylogeny_number_exact(&g).unwrap();
        let p = exact.value().unwrap();
        let cert = exact.witness.unwrap();
        prop_assert_eq!(cert.extra_count, p);
        prop_assert!(validate_positional(&cert.digraph, &g).is_ok());
        let moral = phylogeny_graph(&cert.digraph).unwrap();
        prop_assert_eq!(moral.induced_subgraph(&(0..g.n()).collect::<Vec<_>>()).0, g.clone());
        let text = write_digraph(&cert.digraph, Some(g.n()));
        prop_assert_eq!(parse_digraph(&text).unwrap().digraph, cert.digraph);

        let piped = compute(&g, &ComputeOptions::default()).unwrap();
        prop_assert_eq!(piped.value(), Some(p));
        prop_assert!(validate_positional(&piped.witness.unwrap().digraph, &g).is_ok());
        prop_assert!(lower_bound_clique_cover(&g).unwrap().lower_value().unwrap() <= p);
    }
}
