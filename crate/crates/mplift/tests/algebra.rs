mod common;

use mplift::algebra::{bouquet_of_graph, ketbra, reduce_word, Graph, IndexSet, MatrixPolynomial, Word};
use mplift::dense::{self, C64};
use proptest::prelude::*;

#[test]
fn reduce_word_cancellations() {
    assert_eq!(reduce_word(&[1, 1], &IndexSet::new(1, 0)).unwrap(), Word::empty());
    assert_eq!(reduce_word(&[1, 2], &IndexSet::new(0, 1)).unwrap(), Word::empty());
    assert_eq!(reduce_word(&[1, 2, 2, 1], &IndexSet::new(2, 0)).unwrap(), Word::empty());
    assert_eq!(reduce_word(&[1, 2, 1], &IndexSet::new(0, 2)).unwrap(), Word(vec![1, 2, 1]));
    assert!(reduce_word(&[4], &IndexSet::new(1, 1)).is_err());
}

#[test]
fn star_of_index_set_is_an_involution() {
    for (d, e) in [(0, 1), (3, 0), (2, 3)] {
        let idx = IndexSet::new(d, e);
        for i in 0..=idx.colors() {
            assert_eq!(idx.star(idx.star(i)), i);
        }
        assert_eq!(idx.star(0), 0);
    }
}

#[test]
fn poly_star_examples() {
    let idx = IndexSet::new(1, 0);
    let a = dense::from_real(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
    let mut p = MatrixPolynomial::new(idx, 2);
    p.add_term(&[1], &a * &ketbra(2, 1, 0)).unwrap();
    let s = p.star();
    let want = dense::adjoint(&(&a * &ketbra(2, 1, 0)));
    assert!(dense::diff_frob(s.term(&Word(vec![1])).unwrap(), &want) < 1e-15);

    let idx = IndexSet::new(0, 2);
    let mut q = MatrixPolynomial::new(idx, 1);
    q.add_term(&[2, 1], dense::from_real(&[vec![2.0]])).unwrap();
    let qs = q.star();
    // (Z2 Z1)* = Z1* Z2* = X3 X4
    assert!(qs.term(&Word(vec![3, 4])).is_some());
    assert!(qs.star().approx_eq(&q, 0.0));
}

#[test]
fn multiply_cancels_to_identity_word() {
    let idx = IndexSet::new(1, 1);
    let a = dense::from_real(&[vec![2.0]]);
    let b = dense::from_real(&[vec![3.0]]);
    let mut p = MatrixPolynomial::new(idx, 1);
    p.add_term(&[1], a.clone()).unwrap();
    let mut q = MatrixPolynomial::new(idx, 1);
    q.add_term(&[1], b.clone()).unwrap();
    let pq = p.multiply(&q).unwrap();
    assert_eq!(pq.num_terms(), 1);
    assert_eq!(pq.term(&Word::empty()).unwrap()[(0, 0)], C64::new(6.0, 0.0));

    let mut z = MatrixPolynomial::new(idx, 1);
    z.add_term(&[2], a).unwrap();
    let mut zs = MatrixPolynomial::new(idx, 1);
    zs.add_term(&[3], b).unwrap();
    assert!(z.multiply(&zs).unwrap().term(&Word::empty()).is_some());

    let p = common::rand_poly(IndexSet::new(1, 2), 2, 4, 2, 7);
    let one = MatrixPolynomial::constant(IndexSet::new(1, 2), dense::identity(2));
    assert!(p.multiply(&one).unwrap().approx_eq(&p, 1e-14));

    let other = MatrixPolynomial::new(IndexSet::new(1, 2), 3);
    assert!(p.multiply(&other).is_err());
}

#[test]
fn bouquet_of_graph_sums_to_adjacency() {
    let g = Graph::new(2, vec![(0, 1)]).unwrap();
    let k = bouquet_of_graph(&g).unwrap();
    assert_eq!((k.index_set.d, k.index_set.e, k.r), (0, 1, 2));
    assert!(dense::diff_frob(k.a(1), &ketbra(2, 1, 0)) == 0.0);
    assert!(dense::diff_frob(k.a(2), &ketbra(2, 0, 1)) == 0.0);

    for g in [Graph::cycle(3), Graph::complete_bipartite(2, 3), Graph::complete(4)] {
        let k = bouquet_of_graph(&g).unwrap();
        let p = k.to_polynomial();
        assert!(dense::diff_frob(&p.one_lift(), &g.adjacency()) == 0.0);
        assert!(p.is_self_adjoint());
    }

    // five vertices, six edges: three 2-paths glued at both ends
    let g = Graph::new(5, vec![(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
    let k = bouquet_of_graph(&g).unwrap();
    assert_eq!((k.index_set.d, k.index_set.e, k.r), (0, 6, 5));

    assert!(bouquet_of_graph(&Graph::new(2, vec![(0, 0)]).unwrap()).is_err());
}

#[test]
fn polynomial_json_round_trip_is_exact() {
    let p = common::rand_poly(IndexSet::new(2, 1), 2, 5, 3, 11);
    let s = serde_json::to_string(&p).unwrap();
    let q: MatrixPolynomial = serde_json::from_str(&s).unwrap();
    assert!(p.approx_eq(&q, 0.0));
    assert_eq!(serde_json::to_string(&q).unwrap(), s);
}

fn word_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=5, 0..12)
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_shortening(w in word_strategy()) {
        let idx = IndexSet::new(1, 2);
        let r = reduce_word(&w, &idx).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert!(r.is_reduced(&idx));
        prop_assert_eq!(reduce_word(r.letters(), &idx).unwrap(), r);
    }

    #[test]
    fn ring_axioms(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
        let idx = IndexSet::new(1, 1);
        let p = common::rand_poly(idx, 2, 3, 2, s1);
        let q = common::rand_poly(idx, 2, 3, 2, s2);
        let t = common::rand_poly(idx, 2, 3, 2, s3);
        let lhs = p.multiply(&q).unwrap().multiply(&t).unwrap();
        let rhs = p.multiply(&q.multiply(&t).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
        let lhs = p.multiply(&q.add(&t).unwrap()).unwrap();
        let rhs = p.multiply(&q).unwrap().add(&p.multiply(&t).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
        prop_assert!(p.is_self_adjoint());
        prop_assert!(p.star().star().approx_eq(&p, 0.0));
    }
}
