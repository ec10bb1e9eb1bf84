//! Finite adjacency and nonbacktracking operators, the nontrivial restriction, norms and spectra.

use std::ops::{Add, AddAssign, Mul, Sub, SubAssign};

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::algebra::{MatrixBouquet, MatrixPolynomial};
use crate::dense::{self, CMat, C64, ZERO};
use crate::error::{Error, Result};
use crate::lifting::{Lift, Signing};

/// Scalar type shared by the real fast path and the complex general path.
pub trait Entry:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + AddAssign + SubAssign + Send + Sync
{
    fn from_f64(x: f64) -> Self;
    fn conj(self) -> Self;
    fn abs(self) -> f64;
    fn re(self) -> f64;
}

impl Entry for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn re(self) -> f64 {
        self
    }
}

impl Entry for C64 {
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        C64::conj(&self)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn re(self) -> f64 {
        self.re
    }
}

/// Dense matrix that stays real whenever its entries are.
#[derive(Clone, Debug)]
pub enum DenseMatrix {
    Real(Mat<f64>),
    Complex(CMat),
}

macro_rules! both {
    ($m:expr, $x:ident => $e:expr) => {
        match $m {
            DenseMatrix::Real($x) => $e,
            DenseMatrix::Complex($x) => $e,
        }
    };
}

impl DenseMatrix {
    pub fn dim(&self) -> usize {
        both!(self, m => m.nrows())
    }

    pub fn is_real(&self) -> bool {
        matches!(self, DenseMatrix::Real(_))
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self {
            DenseMatrix::Real(m) => C64::new(m[(i, j)], 0.0),
            DenseMatrix::Complex(m) => m[(i, j)],
        }
    }

    pub fn to_complex(&self) -> CMat {
        match self {
            DenseMatrix::Real(m) => Mat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0)),
            DenseMatrix::Complex(m) => m.clone(),
        }
    }

    pub fn from_complex(m: CMat) -> Self {
        if dense::is_real(&m) {
            DenseMatrix::Real(Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re))
        } else {
            DenseMatrix::Complex(m)
        }
    }

    pub fn identity(n: usize) -> Self {
        DenseMatrix::Real(Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 }))
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        match (self, other) {
            (DenseMatrix::Real(a), DenseMatrix::Real(b)) => DenseMatrix::Real(a * b),
            _ => DenseMatrix::Complex(&self.to_complex() * &other.to_complex()),
        }
    }

    pub fn scaled(&self, s: f64) -> DenseMatrix {
        match self {
            DenseMatrix::Real(m) => DenseMatrix::Real(Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * s)),
            DenseMatrix::Complex(m) => DenseMatrix::Complex(dense::scale(m, C64::new(s, 0.0))),
        }
    }

    pub fn frob(&self) -> f64 {
        both!(self, m => {
            let mut s = 0.0;
            for j in 0..m.ncols() {
                for i in 0..m.nrows() {
                    let x = Entry::abs(m[(i, j)]);
                    s += x * x;
                }
            }
            s.sqrt()
        })
    }

    pub fn max_abs(&self) -> f64 {
        both!(self, m => {
            let mut s: f64 = 0.0;
            for j in 0..m.ncols() {
                for i in 0..m.nrows() {
                    s = s.max(Entry::abs(m[(i, j)]));
                }
            }
            s
        })
    }

    /// M†M
    pub fn gram(&self) -> DenseMatrix {
        match self {
            DenseMatrix::Real(m) => DenseMatrix::Real(m.transpose() * m),
            DenseMatrix::Complex(m) => DenseMatrix::Complex(m.adjoint() * m),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let s = tol * self.max_abs().max(1.0);
        both!(self, m => {
            let n = m.nrows();
            m.ncols() == n && (0..n).all(|i| (0..=i).all(|j| Entry::abs(m[(i, j)] - Entry::conj(m[(j, i)])) <= s))
        })
    }

    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            DenseMatrix::Real(m) => dense::real_symmetric_eigenvalues(m),
            DenseMatrix::Complex(m) => dense::hermitian_eigenvalues(m),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        if self.dim() == 0 {
            return Ok(vec![]);
        }
        match self {
            DenseMatrix::Real(m) => m.eigenvalues(),
            DenseMatrix::Complex(m) => m.eigenvalues(),
        }
        .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))
    }

    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.dim() == 0 {
            return Ok(vec![]);
        }
        match self {
            DenseMatrix::Real(m) => m.singular_values(),
            DenseMatrix::Complex(m) => m.singular_values(),
        }
        .map_err(|e| Error::Numeric(format!("svd: {e:?}")))
    }
}

fn to_rows<T: Entry>(m: &Mat<T>) -> Vec<T> {
    let (r, c) = (m.nrows(), m.ncols());
    let mut v = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// A lifted operator as a sparse list of (row, col, value); duplicates add.
#[derive(Clone, Debug)]
pub struct LiftedOperator {
    pub dim: usize,
    pub n: usize,
    /// Size of the per-vertex block: r for adjacency, (d+2e)·r for nonbacktracking.
    pub block: usize,
    pub triplets: Vec<(usize, usize, C64)>,
}

impl LiftedOperator {
    pub fn is_real(&self) -> bool {
        self.triplets.iter().all(|t| t.2.im == 0.0)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        if self.is_real() {
            let mut m = Mat::<f64>::zeros(self.dim, self.dim);
            for &(i, j, x) in &self.triplets {
                m[(i, j)] += x.re;
            }
            DenseMatrix::Real(m)
        } else {
            let mut m = dense::zeros(self.dim, self.dim);
            for &(i, j, x) in &self.triplets {
                m[(i, j)] += x;
            }
            DenseMatrix::Complex(m)
        }
    }

    /// Dense matrix restricted to the complement of |+⟩ ⊗ C^block.
    pub fn nontrivial(&self) -> Result<DenseMatrix> {
        restrict_nontrivial(&self.to_dense(), self.n, self.block)
    }
}

fn arc_sign_table(lift: &Lift, signing: Option<&Signing>) -> Result<Option<Vec<Vec<f64>>>> {
    match signing {
        None => Ok(None),
        Some(s) => {
            s.validate(lift)?;
            Ok(Some(s.arc_signs(lift)))
        }
    }
}

/// Σ_w P_{χσ^w} ⊗ a_w with vertex (u, a) at u·r + a.
pub fn adjacency_operator(lift: &Lift, p: &MatrixPolynomial, signing: Option<&Signing>) -> Result<LiftedOperator> {
    if lift.index_set != p.index_set {
        return Err(Error::Dimension("lift and polynomial use different index sets".into()));
    }
    if !p.is_self_adjoint() {
        return Err(Error::Invalid("polynomial is not self-adjoint".into()));
    }
    let signs = arc_sign_table(lift, signing)?;
    let (n, r) = (lift.n, p.r);
    let mut triplets = vec![];
    for (w, a) in p.terms() {
        for u in 0..n {
            let mut x = u;
            let mut s = 1.0;
            for &j in w.letters().iter().rev() {
                if let Some(t) = &signs {
                    s *= t[j][x];
                }
                x = lift.sigma(j)[x];
            }
            for i in 0..r {
                for k in 0..r {
                    let v = a[(i, k)];
                    if v != ZERO {
                        triplets.push((x * r + i, u * r + k, v * s));
                    }
                }
            }
        }
    }
    Ok(LiftedOperator { dim: n * r, n, block: r, triplets })
}

pub fn adjacency_matrix(lift: &Lift, p: &MatrixPolynomial, signing: Option<&Signing>) -> Result<DenseMatrix> {
    Ok(adjacency_operator(lift, p, signing)?.to_dense())
}

/// Sparse B over states (u, i, a) stored at (u·D + i − 1)·r + a, D = d + 2e.
pub fn nonbacktracking_operator(lift: &Lift, k: &MatrixBouquet, signing: Option<&Signing>) -> Result<LiftedOperator> {
    if lift.index_set != k.index_set {
        return Err(Error::Dimension("lift and bouquet use different index sets".into()));
    }
    let signs = arc_sign_table(lift, signing)?;
    let idx = k.index_set;
    let (n, r, dd) = (lift.n, k.r, idx.colors());
    let mut triplets = vec![];
    for u in 0..n {
        for i in 1..=dd {
            let v = lift.sigma(i)[u];
            let s = signs.as_ref().map_or(1.0, |t| t[i][u]);
            for j in 1..=dd {
                if j == idx.star(i) {
                    continue;
                }
                let a = k.a(j);
                for x in 0..r {
                    for y in 0..r {
                        let val = a[(x, y)];
                        if val != ZERO {
                            triplets.push(((v * dd + j - 1) * r + x, (u * dd + i - 1) * r + y, val * s));
                        }
                    }
                }
            }
        }
    }
    Ok(LiftedOperator { dim: n * dd * r, n, block: dd * r, triplets })
}

/// Σ_{i,j} 1[j≠i*] P_{χ_i σ_i} ⊗ |j⟩⟨i| ⊗ a_j; the sign comes from the arc stepped along,
/// the weight from the color stepped into next. a_0 plays no role.
pub fn nonbacktracking_matrix(lift: &Lift, k: &MatrixBouquet, signing: Option<&Signing>) -> Result<DenseMatrix> {
    Ok(nonbacktracking_operator(lift, k, signing)?.to_dense())
}

fn restrict_rows<T: Entry>(m: &mut [T], n: usize, b: usize) -> Result<Vec<T>> {
    let big = n * b;
    let inv = 1.0 / (n as f64).sqrt();
    let w: Vec<f64> = (0..n).map(|u| if u == 0 { 1.0 - inv } else { -inv }).collect();
    let c = 2.0 / w.iter().map(|x| x * x).sum::<f64>();

    // left: M ← M − c W (Wᵀ M)
    let mut x = vec![T::default(); b * big];
    for (u, &wu) in w.iter().enumerate() {
        let f = T::from_f64(wu);
        for a in 0..b {
            let row = &m[(u * b + a) * big..(u * b + a + 1) * big];
            let xa = &mut x[a * big..(a + 1) * big];
            for (t, &v) in xa.iter_mut().zip(row) {
                *t += f * v;
            }
        }
    }
    for (u, &wu) in w.iter().enumerate() {
        let f = T::from_f64(c * wu);
        for a in 0..b {
            let xa = &x[a * big..(a + 1) * big];
            let row = &mut m[(u * b + a) * big..(u * b + a + 1) * big];
            for (t, &v) in row.iter_mut().zip(xa) {
                *t -= f * v;
            }
        }
    }
    // right: M ← M − c (M W) Wᵀ
    for row in m.chunks_mut(big) {
        let mut y = vec![T::default(); b];
        for (u, &wu) in w.iter().enumerate() {
            let f = T::from_f64(wu);
            for a in 0..b {
                y[a] += row[u * b + a] * f;
            }
        }
        for (u, &wu) in w.iter().enumerate() {
            let f = T::from_f64(c * wu);
            for a in 0..b {
                row[u * b + a] -= y[a] * f;
            }
        }
    }

    let scale = m.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let mut leak: f64 = 0.0;
    for i in 0..big {
        for j in 0..big {
            if (i < b) != (j < b) {
                leak = leak.max(m[i * big + j].abs());
            }
        }
    }
    if leak > 1e-8 * scale {
        return Err(Error::Numeric(format!("operator does not preserve the trivial subspace (leak {leak:.2e})")));
    }
    let k = big - b;
    let mut out = Vec::with_capacity(k * k);
    for i in b..big {
        out.extend_from_slice(&m[i * big + b..(i + 1) * big]);
    }
    Ok(out)
}

/// Conjugates by (H ⊗ I) with the Householder reflection H e₀ = |+⟩ and drops the first block,
/// leaving the action on |+⟩^⊥ ⊗ C^block.
pub fn restrict_nontrivial(m: &DenseMatrix, n: usize, block: usize) -> Result<DenseMatrix> {
    if m.dim() != n * block {
        return Err(Error::Dimension(format!("matrix is {0}x{0}, expected n·block = {1}", m.dim(), n * block)));
    }
    let k = (n - 1) * block;
    if n <= 1 {
        return Ok(DenseMatrix::Real(Mat::zeros(0, 0)));
    }
    Ok(match m {
        DenseMatrix::Real(a) => {
            let v = restrict_rows(&mut to_rows(a), n, block)?;
            DenseMatrix::Real(Mat::from_fn(k, k, |i, j| v[i * k + j]))
        }
        DenseMatrix::Complex(a) => {
            let v = restrict_rows(&mut to_rows(a), n, block)?;
            DenseMatrix::Complex(Mat::from_fn(k, k, |i, j| v[i * k + j]))
        }
    })
}

/// Sorted ascending spectrum of a Hermitian matrix.
pub fn spectrum(m: &DenseMatrix) -> Result<SpectrumSet> {
    if !m.is_hermitian(1e-10) {
        return Err(Error::Invalid("spectrum needs a Hermitian matrix; use spectral_radius".into()));
    }
    Ok(SpectrumSet::from_values(m.hermitian_eigenvalues()?))
}

/// Largest |eigenvalue|. Above 2000 dimensions this switches to ‖M^k‖^{1/k} with k doubling.
pub fn spectral_radius(m: &DenseMatrix) -> Result<f64> {
    if m.dim() <= 2000 {
        return Ok(m.eigenvalues()?.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let mut q = m.clone();
    let mut log_scale = 0.0;
    let mut k = 1u64;
    let mut prev = f64::INFINITY;
    loop {
        let f = q.frob();
        if f == 0.0 {
            return Ok(0.0);
        }
        let est = ((f.ln() + log_scale) / k as f64).exp();
        if (est - prev).abs() <= 1e-3 * est.max(1e-300) || k >= 1 << 20 {
            return Ok(est);
        }
        prev = est;
        q = q.scaled(1.0 / f);
        log_scale = 2.0 * (log_scale + f.ln());
        q = q.mul(&q);
        k *= 2;
    }
}

pub fn operator_norm(m: &DenseMatrix) -> Result<f64> {
    Ok(m.singular_values()?.first().copied().unwrap_or(0.0))
}

/// M^k = exp(log_scale)·Q by binary powering, renormalizing after every product.
pub fn normalized_power(m: &DenseMatrix, k: u32) -> (DenseMatrix, f64) {
    let mut result = DenseMatrix::identity(m.dim());
    let mut log_r = 0.0;
    let mut base = m.clone();
    let mut log_b = 0.0;
    let mut e = k;
    let renorm = |x: DenseMatrix, log: f64| -> (DenseMatrix, f64) {
        let f = x.frob();
        if f == 0.0 || !f.is_finite() {
            (x, log)
        } else {
            (x.scaled(1.0 / f), log + f.ln())
        }
    };
    (base, log_b) = renorm(base, log_b);
    while e > 0 {
        if e & 1 == 1 {
            (result, log_r) = renorm(result.mul(&base), log_r + log_b);
        }
        e >>= 1;
        if e > 0 {
            (base, log_b) = renorm(base.mul(&base), 2.0 * log_b);
        }
    }
    (result, log_r)
}

fn min_pivot<T: Entry>(a: &mut [T], n: usize) -> f64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut worst = f64::INFINITY;
    for k in 0..n {
        let (p, &piv) = perm[k..]
            .iter()
            .map(|&i| a[i * n + i].re())
            .collect::<Vec<_>>()
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.total_cmp(y.1))
            .expect("nonempty");
        perm.swap(k, k + p);
        worst = worst.min(piv);
        if piv <= 1e-12 {
            // remaining Schur complement must vanish for semidefiniteness
            let rest = &perm[k..];
            let off = rest.iter().flat_map(|&i| rest.iter().map(move |&j| (i, j))).filter(|(i, j)| i != j);
            let max_off = off.map(|(i, j)| a[i * n + j].abs()).fold(0.0, f64::max);
            if max_off > 1e-9 {
                worst = worst.min(-max_off);
            }
            break;
        }
        let pk = perm[k];
        let inv = 1.0 / piv;
        let col: Vec<T> = perm[k + 1..].iter().map(|&i| a[i * n + pk]).collect();
        for (x, &i) in perm[k + 1..].iter().enumerate() {
            for (y, &j) in perm[k + 1..].iter().enumerate() {
                let v = col[x] * col[y].conj() * T::from_f64(inv);
                a[i * n + j] -= v;
            }
        }
    }
    worst
}

/// Smallest pivot of a pivoted Cholesky factorization on the matrix rescaled to unit diagonal maximum.
pub fn psd_min_pivot(m: &DenseMatrix) -> f64 {
    let n = m.dim();
    if n == 0 {
        return 0.0;
    }
    let scale = (0..n).map(|i| m.get(i, i).re.abs()).fold(0.0, f64::max).max(1e-300);
    match m {
        DenseMatrix::Real(a) => {
            let mut v = to_rows(a);
            v.iter_mut().for_each(|x| *x /= scale);
            min_pivot(&mut v, n)
        }
        DenseMatrix::Complex(a) => {
            let mut v = to_rows(a);
            v.iter_mut().for_each(|x| *x /= scale);
            min_pivot(&mut v, n)
        }
    }
}

pub const PSD_TOL: f64 = -1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerNormCheck {
    pub power: u32,
    pub beta: f64,
    /// ‖M^power‖ measured from the renormalized power by SVD.
    pub norm: f64,
    pub min_pivot: f64,
    pub pass: bool,
}

/// Decides ‖M^k‖ ≤ beta through positive semidefiniteness of beta² − (M^k)†M^k.
pub fn norm_power_certificate(m: &DenseMatrix, power: u32, beta: f64) -> Result<PowerNormCheck> {
    if power == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let n = m.dim();
    let (q, log_s) = normalized_power(m, power);
    let top = operator_norm(&q)?;
    let norm = top * log_s.exp();
    if n == 0 || top == 0.0 {
        return Ok(PowerNormCheck { power, beta, norm: 0.0, min_pivot: 0.0, pass: beta >= 0.0 });
    }
    let target = ((beta.ln() - log_s) * 2.0).exp();
    let g = q.gram();
    let test = match g {
        DenseMatrix::Real(g) => DenseMatrix::Real(Mat::from_fn(n, n, |i, j| if i == j { target - g[(i, j)] } else { -g[(i, j)] })),
        DenseMatrix::Complex(g) => DenseMatrix::Complex(Mat::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(target, 0.0) - g[(i, j)]
            } else {
                -g[(i, j)]
            }
        })),
    };
    let piv = psd_min_pivot(&test);
    Ok(PowerNormCheck { power, beta, norm, min_pivot: piv, pass: piv >= PSD_TOL })
}

/// Finite multisets keep multiplicity in `points`; infinite-operator sets add closed intervals.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSet {
    pub intervals: Vec<[f64; 2]>,
    pub points: Vec<f64>,
}

impl SpectrumSet {
    pub fn from_values(mut v: Vec<f64>) -> Self {
        v.sort_by(f64::total_cmp);
        SpectrumSet { intervals: vec![], points: v }
    }

    /// Merges overlapping intervals and drops points they cover.
    pub fn from_parts(mut intervals: Vec<[f64; 2]>, mut points: Vec<f64>) -> Self {
        intervals.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let mut merged: Vec<[f64; 2]> = vec![];
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv[0] <= last[1] => last[1] = last[1].max(iv[1]),
                _ => merged.push(iv),
            }
        }
        points.retain(|&p| !merged.iter().any(|iv| iv[0] <= p && p <= iv[1]));
        points.sort_by(f64::total_cmp);
        points.dedup();
        SpectrumSet { intervals: merged, points }
    }

    /// Clusters sorted values: a gap wider than `resolution` starts a new component.
    pub fn hull_with_gaps(values: &[f64], resolution: f64) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let mut intervals = vec![];
        let mut points = vec![];
        let mut start = 0;
        for k in 1..=v.len() {
            if k == v.len() || v[k] - v[k - 1] > resolution {
                if k > start {
                    if v[k - 1] > v[start] {
                        intervals.push([v[start], v[k - 1]]);
                    } else {
                        points.push(v[start]);
                    }
                }
                start = k;
            }
        }
        SpectrumSet::from_parts(intervals, points)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.points
    }

    pub fn min(&self) -> Option<f64> {
        self.components().first().map(|c| c[0])
    }

    pub fn max(&self) -> Option<f64> {
        self.components().last().map(|c| c[1])
    }

    /// Disjoint sorted components, points as degenerate intervals.
    pub fn components(&self) -> Vec<[f64; 2]> {
        let mut c: Vec<[f64; 2]> = self.intervals.clone();
        c.extend(self.points.iter().map(|&p| [p, p]));
        c.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let mut out: Vec<[f64; 2]> = vec![];
        for iv in c {
            match out.last_mut() {
                Some(last) if iv[0] <= last[1] => last[1] = last[1].max(iv[1]),
                _ => out.push(iv),
            }
        }
        out
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        distance_to_components(&self.components(), x)
    }
}

fn distance_to_components(c: &[[f64; 2]], x: f64) -> f64 {
    let k = c.partition_point(|iv| iv[0] <= x);
    let mut best = f64::INFINITY;
    if k > 0 {
        best = best.min((x - c[k - 1][1]).max(0.0));
    }
    if k < c.len() {
        best = best.min(c[k][0] - x);
    }
    best
}

/// sup_{x∈S} dist(x, T); on an interval the maximum sits at an endpoint or a gap midpoint of T.
fn directed(s: &[[f64; 2]], t: &[[f64; 2]]) -> f64 {
    let mut best: f64 = 0.0;
    for iv in s {
        best = best.max(distance_to_components(t, iv[0])).max(distance_to_components(t, iv[1]));
        if iv[1] > iv[0] {
            for g in t.windows(2) {
                let mid = 0.5 * (g[0][1] + g[1][0]);
                if iv[0] < mid && mid < iv[1] {
                    best = best.max(distance_to_components(t, mid));
                }
            }
        }
    }
    best
}

pub fn hausdorff_distance(s: &SpectrumSet, t: &SpectrumSet) -> Result<f64> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::Invalid("Hausdorff distance of an empty set".into()));
    }
    let (cs, ct) = (s.components(), t.components());
    Ok(directed(&cs, &ct).max(directed(&ct, &cs)))
}

/// Sorted spectrum of p(1, ..., 1).
pub fn one_lift_spectrum(p: &MatrixPolynomial) -> Result<Vec<f64>> {
    dense::hermitian_eigenvalues(&p.one_lift())
}
