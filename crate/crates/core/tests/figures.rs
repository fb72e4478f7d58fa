use phylokit::phylo::{
    competition_number_exact, compute, difference_family, formula_dispatch, lower_bound_clique_cover,
    lower_bound_triangle_free, phylogeny_number_exact, ComputeOptions,
};
use phylokit::witness::{construct_gminus_caring, construct_k4free_upper, construct_triangle_free, figure, CatalogEntry};
use phylokit::{validate_positional, Graph, Subgraph};

fn graph(name: &str) -> Graph {
    figure(name).unwrap().into_graph().unwrap()
}

fn p(name: &str) -> usize {
    let g = graph(name);
    let r = compute(&g, &ComputeOptions::default()).unwrap();
    let cert = r.witness.as_ref().expect("exact results carry a witness");
    assert_eq!(cert.extra_count, r.value().unwrap());
    validate_positional(&cert.digraph, &g).unwrap();
    r.value().unwrap()
}

#[test]
fn figure_values() {
    assert_eq!(p("fig1_G"), 1);
    assert_eq!(p("fig2_G"), 2);
    assert_eq!(p("fig3_G1"), 4);
    assert_eq!(p("fig3_G2"), 0);
    assert_eq!(p("fig4_G1"), 1);
    assert_eq!(p("fig4_G2"), 2);
}

#[test]
fn exact_search_on_small_figures() {
    for (name, value) in [("fig1_G", 1), ("fig2_G", 2), ("fig3_G2", 0), ("fig4_G2", 2)] {
        assert_eq!(phylogeny_number_exact(&graph(name)).unwrap().value(), Some(value), "{name}");
    }
}

#[test]
fn competition_numbers() {
    assert_eq!(competition_number_exact(&graph("fig4_G1")).unwrap(), 1);
    assert_eq!(competition_number_exact(&graph("fig4_G2")).unwrap(), 1);
}

#[test]
fn figure_one_square_bound() {
    let g = graph("fig1_G");
    let square = Subgraph::induced(&g, [0, 1, 2, 3]);
    assert_eq!(lower_bound_triangle_free(&g, &square).unwrap().lower_value(), Some(1));
    let CatalogEntry::Digraph { digraph, base } = figure("fig1_D").unwrap() else {
        panic!("fig1_D is a digraph")
    };
    assert_eq!(base, (0..6).collect::<Vec<_>>());
    assert!(validate_positional(&digraph, &g).is_ok());
}

#[test]
fn constructions_on_figures() {
    let cert = construct_triangle_free(&graph("fig2_G")).unwrap();
    assert_eq!(cert.extra_count, 2);
    let (cert, optimal) = construct_gminus_caring(&graph("fig3_G1")).unwrap();
    assert_eq!((cert.extra_count, optimal), (4, true));
    let trace = construct_k4free_upper(&graph("fig3_G2")).unwrap();
    assert_eq!(trace.final_cert.extra_count, 0);
    assert_eq!(trace.replay(7).unwrap(), trace.final_cert.digraph);
}

#[test]
fn clique_cover_bound_on_figure_three() {
    assert_eq!(lower_bound_clique_cover(&graph("fig3_G1")).unwrap().lower_value(), Some(4));
}

#[test]
fn formula_on_figure_two() {
    let r = formula_dispatch(&graph("fig2_G"));
    assert_eq!(r.value(), Some(2));
}

#[test]
fn family_identity() {
    for l in 0..=4 {
        let report = difference_family(l).unwrap();
        assert!(report.identity_holds, "l = {l}: p = {:?}, k = {}", report.p.value(), report.k);
        if l >= 1 {
            assert_eq!(report.k, 1);
        }
    }
}
