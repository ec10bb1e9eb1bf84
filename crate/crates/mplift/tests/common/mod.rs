#![allow(dead_code)]

use mplift::algebra::{IndexSet, MatrixBouquet, MatrixPolynomial};
use mplift::dense::{CMat, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_cmat(rng: &mut ChaCha8Rng, r: usize, complex: bool) -> CMat {
    CMat::from_fn(r, r, |_, _| {
        let im = if complex { rng.random_range(-1.0..1.0) } else { 0.0 };
        C64::new(rng.random_range(-1.0..1.0), im)
    })
}

/// q + q* for q with `nterms` random words of length ≤ max_deg.
pub fn rand_poly(idx: IndexSet, r: usize, nterms: usize, max_deg: usize, seed: u64) -> MatrixPolynomial {
    let mut g = rng(seed);
    let complex = g.random::<bool>();
    let mut q = MatrixPolynomial::new(idx, r);
    for _ in 0..nterms {
        let len = g.random_range(0..=max_deg);
        let w: Vec<usize> = (0..len).map(|_| g.random_range(1..=idx.colors())).collect();
        q.add_term(&w, rand_cmat(&mut g, r, complex)).unwrap();
    }
    q.add(&q.star()).unwrap()
}

pub fn rand_bouquet(idx: IndexSet, r: usize, seed: u64) -> MatrixBouquet {
    let mut g = rng(seed);
    let complex = g.random::<bool>();
    let base = (0..idx.d + idx.e)
        .map(|k| {
            let a = rand_cmat(&mut g, r, complex);
            if k < idx.d {
                &a + &mplift::dense::adjoint(&a)
            } else {
                a
            }
        })
        .collect();
    MatrixBouquet::from_base(idx, None, base).unwrap()
}

pub fn merge(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = a.iter().chain(b).copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multiset sizes differ");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Sorted complex eigenvalues compared as multisets by greedy nearest matching.
pub fn complex_multiset_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multiset sizes differ");
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}
