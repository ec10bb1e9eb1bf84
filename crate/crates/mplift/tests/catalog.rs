use mplift::algebra::{ketbra, Graph, IndexSet, MatrixPolynomial};
use mplift::catalog::*;
use mplift::dense::{self, CMat};
use mplift::lifting::random_lift;
use mplift::limitspec::{estimate_spectrum_general, infinite_spectrum_scan};
use mplift::spectra::{adjacency_matrix, hausdorff_distance};

fn dense_adj(lift: &mplift::Lift, p: &MatrixPolynomial) -> CMat {
    adjacency_matrix(lift, p, None).unwrap().to_complex()
}

#[test]
fn entries_are_self_adjoint_and_unique() {
    let all = entries();
    assert!(all.len() >= 10);
    for e in &all {
        assert!(e.polynomial.is_self_adjoint(), "{}", e.name);
    }
    let mut names = names();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), all.len());
    assert!(entry("sl2z").is_ok());
    assert!(entry("missing").is_err());
}

#[test]
fn cycles_figure_polynomial() {
    let p = cycle_closure_polynomial(&cycles_example_graph()).unwrap();
    // tree edges a = 1→2, b = 1→4, c = 1→3 (colors 1, 2, 3; stars 4, 5, 6)
    let expected: [(&[usize], usize, usize); 10] = [
        (&[1], 1, 0),
        (&[2], 3, 0),
        (&[3], 2, 0),
        (&[4], 0, 1),
        (&[5], 0, 3),
        (&[6], 0, 2),
        (&[2, 4], 3, 1),
        (&[1, 5], 1, 3),
        (&[3, 5], 2, 3),
        (&[2, 6], 3, 2),
    ];
    let mut q = MatrixPolynomial::new(IndexSet::new(0, 3), 4);
    for (w, v, u) in expected {
        q.add_term(w, ketbra(4, v, u)).unwrap();
    }
    assert_eq!(p.num_terms(), 10);
    assert!(p.approx_eq(&q, 0.0));
}

#[test]
fn tree_input_gives_a_bouquet() {
    let p = cycle_closure_polynomial(&Graph::path(5)).unwrap();
    assert!(p.is_linear());
    assert_eq!(p.num_terms(), 8);
    assert!(cycle_closure_polynomial(&Graph::new(4, vec![(0, 1), (2, 3)]).unwrap()).is_err());
}

/// The finite lift of a closure polynomial contains n disjoint copies of G when the lift
/// is trivial on the tree colors.
#[test]
fn closure_spectrum_is_graph_spectrum() {
    let e = entry("cycles_example").unwrap();
    let est = estimate_spectrum_general(&e.polynomial, 200, &[1, 2]).unwrap();
    let d = hausdorff_distance(&est.spectrum, e.known_spectrum.as_ref().unwrap()).unwrap();
    assert!(d < 1e-8, "{d}");
}

#[test]
fn free_product_structure() {
    let p = free_product_polynomial(&[Graph::cycle(3), Graph::cycle(4)], false).unwrap();
    // 17 grid edges and 7 closure edges, each with its adjoint
    assert_eq!(p.index_set, IndexSet::new(0, 17));
    assert_eq!(p.num_terms(), 2 * (17 + 7));
    let mut lens: Vec<usize> = p.terms().map(|(w, _)| w.len()).filter(|&l| l > 1).collect();
    lens.sort();
    assert_eq!(lens, vec![2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3]);
    // every vertex of a lift has degree 2 + 2 in C3 ⋆ C4
    let lift = random_lift(p.index_set, 6, 3).unwrap();
    let a = dense_adj(&lift, &p);
    for i in 0..a.nrows() {
        let s: f64 = (0..a.ncols()).map(|j| a[(i, j)].re).sum();
        assert_eq!(s, 4.0);
    }
    let cube = free_product_polynomial(&[Graph::path(2), Graph::path(2), Graph::path(2)], false).unwrap();
    assert!(cube.is_linear());
    assert_eq!(cube.index_set, IndexSet::new(0, 12));
}

#[test]
fn free_product_rejects_bad_input() {
    assert!(free_product_polynomial(&[Graph::path(3), Graph::cycle(3)], false).is_err());
    assert!(free_product_polynomial(&[Graph::new(4, vec![(0, 1), (2, 3)]).unwrap()], false).is_err());
    assert!(free_product_polynomial(&[Graph::cycle(17)], false).is_err());
    assert!(free_product_polynomial(&[Graph::cycle(17)], true).is_ok());
    assert_eq!(is_vertex_transitive(&Graph::complete_bipartite(3, 3)), Some(true));
    assert_eq!(is_vertex_transitive(&Graph::complete_bipartite(2, 3)), Some(false));
}

#[test]
fn c4_star_c4_is_four_regular() {
    let p = c4_star_c4_scalar();
    assert!(p.is_self_adjoint());
    let lift = random_lift(p.index_set, 20, 9).unwrap();
    let a = dense_adj(&lift, &p);
    for i in 0..20 {
        assert_eq!((0..20).map(|j| a[(i, j)].re).sum::<f64>(), 4.0);
    }
}

#[test]
fn additive_single_edge_is_a_matching() {
    let p = additive_product_polynomial(&[Graph::path(2)]).unwrap();
    let est = estimate_spectrum_general(&p, 100, &[4]).unwrap();
    assert_eq!(est.spectrum.values().len(), 2);
    assert!((est.spectrum.min().unwrap() + 1.0).abs() < 1e-9 && (est.spectrum.max().unwrap() - 1.0).abs() < 1e-9);
}

/// An n-lift of the additive polynomial is the additive lift: for each atom edge {u, v} the
/// matching x ↦ σ_{A,v}σ_{A,u}⁻¹(x) between the u and v fibres.
#[test]
fn additive_lift_matches_definition() {
    let atoms = [Graph::cycle(3), Graph::new(3, vec![(0, 1)]).unwrap(), Graph::path(3)];
    let p = additive_product_polynomial(&atoms).unwrap();
    assert_eq!(p.index_set, IndexSet::new(0, 3 + 2 + 3));
    let n = 5;
    let lift = random_lift(p.index_set, n, 21).unwrap();
    let r = 3;
    let mut want = dense::zeros(n * r, n * r);
    let mut color = 0;
    for a in &atoms {
        let supp = a.support();
        let c = |v: usize| color + 1 + supp.iter().position(|&x| x == v).unwrap();
        for &(u, v) in &a.edges {
            let inv_u = lift.sigma(p.index_set.star(c(u)));
            for x in 0..n {
                let y = lift.sigma(c(v))[inv_u[x]];
                want[(y * r + v, x * r + u)] += dense::ONE;
                want[(x * r + u, y * r + v)] += dense::ONE;
            }
        }
        color += supp.len();
    }
    assert_eq!(dense_adj(&lift, &p), want);
}

#[test]
fn additive_rejects_bad_atoms() {
    assert!(additive_product_polynomial(&[Graph::new(4, vec![(0, 1), (2, 3)]).unwrap()]).is_err());
    assert!(additive_product_polynomial(&[Graph::path(2), Graph::new(4, vec![(2, 3)]).unwrap()]).is_err());
    assert!(additive_product_polynomial(&[]).is_err());
}

#[test]
fn amalgamated_sl2z_instance() {
    let (g, rel) = sl2z_amalgamation_input();
    let p = amalgamated_product_polynomial(&g, &rel).unwrap();
    let shown = sl2z_displayed_polynomial();
    assert_eq!(shown.num_terms(), 4);
    assert!(!shown.is_self_adjoint());
    let mut sym = shown.clone();
    sym.add_term(&[3, 2], dense::identity(2)).unwrap();
    assert!(p.approx_eq(&sym, 0.0));
    assert!(p.is_self_adjoint());

    let mut clash = g.clone();
    clash[1].edges[0].2 = 0;
    assert!(amalgamated_product_polynomial(&clash, &rel).is_err());
    // one graph and one relator edge: a matching per non-root vertex
    let single = [RootedColoredGraph { n: 2, root: 0, edges: vec![(0, 1, 7)] }];
    let q = amalgamated_product_polynomial(&single, &RelatorGraph { k: 1, edges: vec![(0, 0, 7)] }).unwrap();
    assert!(q.is_linear() && q.num_terms() == 1);
}

fn regular_degree(a: &CMat) -> Option<f64> {
    let sums: Vec<f64> = (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].re).sum()).collect();
    sums.iter().all(|&s| s == sums[0]).then(|| sums[0])
}

#[test]
fn replacement_and_zigzag_match_rotation_maps() {
    let idx = IndexSet::new(4, 0);
    let h = Graph::cycle(4);
    let ah = h.adjacency();
    let dd = 4;
    for seed in 0..3 {
        let lift = random_lift(idx, 4, seed).unwrap();
        let rot = |u: usize, i: usize| (lift.sigma(i + 1)[u], idx.star(i + 1) - 1);
        let n = 4;

        let (l2, p) = replacement_product(&lift, &h).unwrap();
        let mut want = dense::zeros(n * dd, n * dd);
        for u in 0..n {
            for i in 0..dd {
                for j in 0..dd {
                    want[(u * dd + j, u * dd + i)] += ah[(j, i)];
                }
                let (v, j) = rot(u, i);
                want[(v * dd + j, u * dd + i)] += dense::ONE;
            }
        }
        let got = dense_adj(&l2, &p);
        assert_eq!(got, want);
        assert_eq!(regular_degree(&got), Some(3.0));

        let (l3, z) = zigzag_product(&lift, &h).unwrap();
        let mut want = dense::zeros(n * dd, n * dd);
        for u in 0..n {
            for i in 0..dd {
                for i2 in (0..dd).filter(|&k| ah[(i, k)].re > 0.0) {
                    let (v, j2) = rot(u, i2);
                    for j in (0..dd).filter(|&k| ah[(j2, k)].re > 0.0) {
                        want[(v * dd + j, u * dd + i)] += dense::ONE;
                    }
                }
            }
        }
        let got = dense_adj(&l3, &z);
        assert_eq!(got, want);
        assert_eq!(regular_degree(&got), Some(4.0));
    }
    assert!(replacement_product(&random_lift(IndexSet::new(3, 0), 4, 0).unwrap(), &h).is_err());
}

#[test]
fn known_spectra_of_small_entries() {
    for (name, n, tol) in [("tree3", 600, 0.2), ("signed_tree4", 500, 0.25), ("ladder", 600, 0.1), ("k23", 200, 0.3)] {
        let e = entry(name).unwrap();
        let est = estimate_spectrum_general(&e.polynomial, n, &[1, 2]).unwrap();
        let d = hausdorff_distance(&est.spectrum, e.known_spectrum.as_ref().unwrap()).unwrap();
        assert!(d < tol, "{name}: {d}");
    }
}

#[test]
fn resolvent_scan_agrees_on_bouquet_entries() {
    for name in ["tree3", "signed_tree4", "ladder"] {
        let e = entry(name).unwrap();
        let k = e.polynomial.to_bouquet().unwrap();
        let res = infinite_spectrum_scan(&k, -4.0, 4.0, 0.05).unwrap();
        let d = hausdorff_distance(&res.spectrum(), e.known_spectrum.as_ref().unwrap()).unwrap();
        assert!(d < 1e-3, "{name}: {d} {res:?}");
    }
}
