//! Spectral data of the infinite lift: ρ(B∞), the K_λ transform, resolvent recursions, the hat
//! bouquet, membership tests and scans, plus lift-based estimates for nonlinear polynomials.

use serde::{Deserialize, Serialize};

use crate::algebra::{MatrixBouquet, MatrixPolynomial};
use crate::dense::{self, CMat, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::lifting::{random_lift, Lift, Signing};
use crate::spectra::{adjacency_matrix, DenseMatrix, SpectrumSet};

/// Row-major r×r complex matrix for the hot resolvent loop.
#[derive(Clone, Debug, PartialEq)]
struct Small {
    r: usize,
    v: Vec<C64>,
}

impl Small {
    fn from_mat(m: &CMat) -> Self {
        let r = m.nrows();
        Small { r, v: (0..r * r).map(|k| m[(k / r, k % r)]).collect() }
    }

    fn to_mat(&self) -> CMat {
        let r = self.r;
        CMat::from_fn(r, r, |i, j| self.v[i * r + j])
    }

    fn eye(r: usize, s: C64) -> Self {
        Small { r, v: (0..r * r).map(|k| if k / r == k % r { s } else { ZERO }).collect() }
    }

    fn adjoint(&self) -> Self {
        let r = self.r;
        Small { r, v: (0..r * r).map(|k| self.v[(k % r) * r + k / r].conj()).collect() }
    }

    fn mul(&self, o: &Small) -> Small {
        let r = self.r;
        let mut v = vec![ZERO; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.v[i * r + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..r {
                    v[i * r + j] += a * o.v[k * r + j];
                }
            }
        }
        Small { r, v }
    }

    fn add_assign(&mut self, o: &Small, s: f64) {
        for (x, y) in self.v.iter_mut().zip(&o.v) {
            *x += y * s;
        }
    }

    fn dist(&self, o: &Small) -> f64 {
        self.v.iter().zip(&o.v).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    }

    fn anti_hermitian_norm(&self) -> f64 {
        self.dist(&self.adjoint()) / 2.0
    }

    /// Gauss-Jordan with partial pivoting; None when a pivot vanishes.
    fn inv(&self) -> Option<Small> {
        let r = self.r;
        let mut a = self.v.clone();
        let mut b = Small::eye(r, ONE).v;
        let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
        for c in 0..r {
            let p = (c..r).max_by(|&x, &y| a[x * r + c].norm().total_cmp(&a[y * r + c].norm()))?;
            if a[p * r + c].norm() <= 1e-14 * scale {
                return None;
            }
            if p != c {
                for j in 0..r {
                    a.swap(p * r + j, c * r + j);
                    b.swap(p * r + j, c * r + j);
                }
            }
            let inv = ONE / a[c * r + c];
            for j in 0..r {
                a[c * r + j] *= inv;
                b[c * r + j] *= inv;
            }
            for i in 0..r {
                if i == c {
                    continue;
                }
                let f = a[i * r + c];
                if f == ZERO {
                    continue;
                }
                for j in 0..r {
                    let (ac, bc) = (a[c * r + j], b[c * r + j]);
                    a[i * r + j] -= f * ac;
                    b[i * r + j] -= f * bc;
                }
            }
        }
        Some(Small { r, v: b })
    }
}

/// √ρ(L) with L the (d+2e)r² square matrix whose (i, j) block is 1[j≠i*]·(a_i ⊗ ā_i).
pub fn rho_b_infinity(k: &MatrixBouquet) -> Result<f64> {
    let idx = k.index_set;
    let dd = idx.colors();
    if dd == 0 {
        return Ok(0.0);
    }
    let r2 = k.r * k.r;
    let blocks: Vec<CMat> = (1..=dd)
        .map(|i| {
            let a = k.a(i);
            dense::kron(a, &CMat::from_fn(k.r, k.r, |x, y| a[(x, y)].conj()))
        })
        .collect();
    let l = CMat::from_fn(dd * r2, dd * r2, |row, col| {
        let (i, j) = (row / r2 + 1, col / r2 + 1);
        if j == idx.star(i) {
            ZERO
        } else {
            blocks[i - 1][(row % r2, col % r2)]
        }
    });
    let rho = DenseMatrix::from_complex(l).eigenvalues()?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(rho.sqrt())
}

/// The Ihara-Bass bouquet K_λ: a_0(λ) = −1 − Σ a_i(λ² − a_{i*}a_i)⁻¹a_{i*},
/// a_i(λ) = λ a_i (λ² − a_{i*}a_i)⁻¹. It is not self-adjoint in general.
pub fn transform_k_lambda(k: &MatrixBouquet, lambda: C64) -> Result<MatrixBouquet> {
    let idx = k.index_set;
    let r = k.r;
    let l2 = lambda * lambda;
    let mut a0 = dense::scale(&dense::identity(r), -ONE);
    let mut coeffs = vec![dense::zeros(r, r)];
    for i in 1..=idx.colors() {
        let a = k.a(i);
        let astar = k.a(idx.star(i));
        let prod = astar * a;
        let ev = dense::eigenvalues(&prod)?;
        if ev.iter().any(|z| (z - l2).norm() < 1e-9) {
            return Err(Error::Singular(format!("λ² = {l2} is an eigenvalue of a_(i*) a_i for color {i}")));
        }
        let shifted = &dense::scale(&dense::identity(r), l2) - &prod;
        let inv = dense::inverse(&shifted)?;
        a0 = &a0 - &(&(a * &inv) * astar);
        coeffs.push(dense::scale(&(a * &inv), lambda));
    }
    coeffs[0] = a0;
    MatrixBouquet::general(idx, coeffs)
}

/// Σ_i P_{χσ_i} ⊗ a_i + I ⊗ a_0 for any bouquet, self-adjoint or not.
pub fn bouquet_adjacency(lift: &Lift, k: &MatrixBouquet, signing: Option<&Signing>) -> Result<CMat> {
    if lift.index_set != k.index_set {
        return Err(Error::Dimension("lift and bouquet use different index sets".into()));
    }
    let signs = signing.map(|s| s.arc_signs(lift));
    let (n, r) = (lift.n, k.r);
    let mut m = dense::zeros(n * r, n * r);
    for i in 0..=k.index_set.colors() {
        let a = k.a(i);
        for u in 0..n {
            let v = lift.sigma(i)[u];
            let s = signs.as_ref().map_or(1.0, |t| t[i][u]);
            for x in 0..r {
                for y in 0..r {
                    m[(v * r + x, u * r + y)] += a[(x, y)] * s;
                }
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct ResolventState {
    pub mu: f64,
    pub g_oo: CMat,
    /// γ_i for colors 1..=d+2e, stored at index i − 1.
    pub gammas: Vec<CMat>,
    pub converged: bool,
    pub iterations: usize,
    /// ‖G_oo (μ − a_0 − Σ_j a_{j*} γ_j a_j) − I‖_F.
    pub residual: f64,
}

struct Recursion {
    dd: usize,
    r: usize,
    star: Vec<usize>,
    a0: Small,
    a: Vec<Small>,
    adag: Vec<Small>,
}

impl Recursion {
    fn new(k: &MatrixBouquet) -> Self {
        let dd = k.index_set.colors();
        Recursion {
            dd,
            r: k.r,
            star: (1..=dd).map(|i| k.index_set.star(i) - 1).collect(),
            a0: Small::from_mat(k.a(0)),
            a: (1..=dd).map(|i| Small::from_mat(k.a(i))).collect(),
            adag: (1..=dd).map(|i| Small::from_mat(&dense::adjoint(k.a(i)))).collect(),
        }
    }

    /// zI − a_0 − Σ_j a_j† γ_j a_j, and the summands.
    fn base(&self, z: C64, g: &[Small]) -> (Small, Vec<Small>) {
        let s: Vec<Small> = (0..self.dd).map(|j| self.adag[j].mul(&g[j]).mul(&self.a[j])).collect();
        let mut b = Small::eye(self.r, z);
        b.add_assign(&self.a0, -1.0);
        for x in &s {
            b.add_assign(x, -1.0);
        }
        (b, s)
    }

    /// Fixed-point iteration at z from `g`; returns (converged, iterations).
    fn solve(&self, z: C64, g: &mut Vec<Small>, tol: f64, max_iter: usize) -> (bool, usize) {
        let mut damp = 1.0;
        let mut prev = f64::INFINITY;
        let mut rises = 0;
        for it in 1..=max_iter {
            let (b, s) = self.base(z, g);
            let mut next = Vec::with_capacity(self.dd);
            for i in 0..self.dd {
                let mut m = b.clone();
                m.add_assign(&s[self.star[i]], 1.0);
                match m.inv() {
                    Some(x) => next.push(x),
                    None => return (false, it),
                }
            }
            let diff = next.iter().zip(g.iter()).map(|(x, y)| x.dist(y)).fold(0.0, f64::max);
            if !diff.is_finite() {
                return (false, it);
            }
            if diff > prev {
                rises += 1;
                if rises > 5 {
                    damp = 0.5;
                }
            }
            prev = diff;
            for (x, y) in g.iter_mut().zip(next) {
                if damp == 1.0 {
                    *x = y;
                } else {
                    for (p, q) in x.v.iter_mut().zip(y.v) {
                        *p = *p * (1.0 - damp) + q * damp;
                    }
                }
            }
            if diff < tol {
                return (true, it);
            }
        }
        (false, max_iter)
    }

    fn initial(&self, mu: f64) -> Vec<Small> {
        let s = if mu < 0.0 { -1.0 } else { 1.0 };
        let g = s / (mu.abs() + self.dd as f64 + 1.0);
        vec![Small::eye(self.r, C64::new(g, 0.0)); self.dd]
    }

    /// Continuation z = μ + iη, η = 1, 1/8, ... down to 0, warm-started at each stage.
    fn continuation(&self, mu: f64, tol: f64, max_iter: usize) -> (Vec<Small>, bool, usize) {
        let mut g = self.initial(mu);
        let mut eta = 1.0;
        let mut total = 0;
        loop {
            let (ok, it) = self.solve(C64::new(mu, eta), &mut g, tol, max_iter);
            total += it;
            if !ok {
                return (g, false, total);
            }
            if eta == 0.0 {
                return (g, true, total);
            }
            eta = if eta > 1e-12 { eta / 8.0 } else { 0.0 };
        }
    }

    fn state(&self, mu: f64, g: Vec<Small>, converged: bool, iterations: usize) -> ResolventState {
        let (b, _) = self.base(C64::new(mu, 0.0), &g);
        let (g_oo, residual) = match b.inv() {
            Some(x) => {
                let res = x.mul(&b).dist(&Small::eye(self.r, ONE));
                (x.to_mat(), res)
            }
            None => (dense::zeros(self.r, self.r), f64::INFINITY),
        };
        ResolventState { mu, g_oo, gammas: g.iter().map(Small::to_mat).collect(), converged, iterations, residual }
    }

    /// The block map Y_j ↦ 1[j≠i*]·a_j†γ_j Y_j γ_j a_j; its spectral radius is ρ(B̂)².
    fn hat_l_radius(&self, g: &[Small]) -> Result<f64> {
        let r = self.r;
        let r2 = r * r;
        let blocks: Vec<CMat> = (0..self.dd)
            .map(|j| {
                let left = self.adag[j].mul(&g[j]).to_mat();
                let right = g[j].mul(&self.a[j]).to_mat();
                dense::kron(&left, &right.transpose().to_owned())
            })
            .collect();
        let n = self.dd * r2;
        let m = CMat::from_fn(n, n, |row, col| {
            let (i, j) = (row / r2, col / r2);
            if j == self.star[i] {
                ZERO
            } else {
                blocks[j][(row % r2, col % r2)]
            }
        });
        Ok(DenseMatrix::from_complex(m).eigenvalues()?.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

/// G_oo(μ) and γ_i(μ) from the recursion
/// γ_i = (μ − a_0 − Σ_{j≠i*} a_{j*}γ_j a_j)⁻¹, G_oo = (μ − a_0 − Σ_j a_{j*}γ_j a_j)⁻¹,
/// reached by continuation from μ + i. Non-convergence at any stage is reported, not thrown.
pub fn resolvent_fixed_point(k: &MatrixBouquet, mu: f64, tol: f64, max_iter: usize) -> ResolventState {
    let rec = Recursion::new(k);
    let (g, ok, it) = rec.continuation(mu, tol, max_iter);
    rec.state(mu, g, ok, it)
}

pub const RESOLVENT_TOL: f64 = 1e-12;
pub const RESOLVENT_MAX_ITER: usize = 5000;

/// âᵢ(μ) = S⁻¹ G_oo a_{i*} γ_i S⁻¹ with S = (±G_oo)^{1/2}; requires a definite G_oo.
pub fn hat_bouquet(k: &MatrixBouquet, mu: f64, tol: f64) -> Result<MatrixBouquet> {
    let st = resolvent_fixed_point(k, mu, tol, RESOLVENT_MAX_ITER);
    if !st.converged {
        return Err(Error::OutOfRegime(format!("resolvent recursion does not converge at μ = {mu}")));
    }
    let g = &st.g_oo;
    if !dense::is_hermitian(g, 1e-7) {
        return Err(Error::OutOfRegime(format!("G_oo is not Hermitian at μ = {mu}")));
    }
    let herm = CMat::from_fn(g.nrows(), g.ncols(), |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
    let (vals, _) = dense::hermitian_eigen(&herm)?;
    let pos = vals.iter().all(|&x| x > 0.0);
    let neg = vals.iter().all(|&x| x < 0.0);
    if !pos && !neg {
        return Err(Error::OutOfRegime(format!("G_oo is indefinite at μ = {mu}")));
    }
    let s_inv = dense::hermitian_map(&herm, |x| C64::new(1.0 / x.abs().max(1e-12).sqrt(), 0.0))?;
    let idx = k.index_set;
    let mut coeffs = vec![dense::zeros(k.r, k.r)];
    for i in 1..=idx.colors() {
        let gog = &(g * k.a(idx.star(i))) * &st.gammas[i - 1];
        coeffs.push(&(&s_inv * &gog) * &s_inv);
    }
    MatrixBouquet::general(idx, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Membership {
    /// Some continuation stage failed to converge.
    NonConvergent,
    /// The real-axis limit is not Hermitian: μ carries spectral density.
    Absorbing,
    /// Converged with a Hermitian limit; inside iff ρ(B̂_μ) ≥ 1 − tol.
    Radius { rho: f64, inside: bool },
}

impl Membership {
    pub fn inside(&self) -> bool {
        match self {
            Membership::NonConvergent | Membership::Absorbing => true,
            Membership::Radius { inside, .. } => *inside,
        }
    }
}

/// Coefficients are scaled below norm 1 first; μ scales along.
fn normalized(k: &MatrixBouquet) -> (MatrixBouquet, f64) {
    let m = k.max_frob();
    let c = if m > 0.9 { 0.9 / m } else { 1.0 };
    (k.scaled(c), c)
}

fn membership_scaled(rec: &Recursion, mu: f64, tol: f64) -> Result<Membership> {
    let (g, ok, _) = rec.continuation(mu, RESOLVENT_TOL, RESOLVENT_MAX_ITER);
    if !ok {
        return Ok(Membership::NonConvergent);
    }
    let scale = g.iter().flat_map(|x| x.v.iter().map(|z| z.norm())).fold(1.0, f64::max);
    if g.iter().any(|x| x.anti_hermitian_norm() > 1e-7 * scale) {
        return Ok(Membership::Absorbing);
    }
    let rho = rec.hat_l_radius(&g)?.sqrt();
    Ok(Membership::Radius { rho, inside: rho >= 1.0 - tol })
}

pub fn membership(k: &MatrixBouquet, mu: f64, tol: f64) -> Result<Membership> {
    let (kn, c) = normalized(k);
    membership_scaled(&Recursion::new(&kn), mu * c, tol)
}

/// Whether μ ∈ σ(A∞) for the bouquet K.
pub fn in_infinite_spectrum(k: &MatrixBouquet, mu: f64, tol: f64) -> Result<bool> {
    Ok(membership(k, mu, tol)?.inside())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub intervals: Vec<[f64; 2]>,
    pub points: Vec<f64>,
    pub tol: f64,
    pub grid_step: f64,
}

impl ScanResult {
    pub fn spectrum(&self) -> SpectrumSet {
        SpectrumSet::from_parts(self.intervals.clone(), self.points.clone())
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub tol: f64,
    /// Endpoints are bisected until the bracket is below this width.
    pub refine: f64,
    /// Inside runs narrower than this after refinement are reported as points.
    pub point_width: f64,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { tol: 1e-4, refine: 1e-6, point_width: 1e-3, jobs: 1 }
    }
}

struct Scanner {
    rec: Recursion,
    c: f64,
    tol: f64,
}

impl Scanner {
    fn inside(&self, mu: f64) -> Result<bool> {
        Ok(membership_scaled(&self.rec, mu * self.c, self.tol)?.inside())
    }

    /// Boundary between an outside point `out` and an inside point `ins`.
    fn bisect(&self, mut out: f64, mut ins: f64, width: f64) -> Result<f64> {
        while (ins - out).abs() > width {
            let mid = 0.5 * (out + ins);
            if self.inside(mid)? {
                ins = mid;
            } else {
                out = mid;
            }
        }
        Ok(0.5 * (out + ins))
    }

    /// Hermitian G_oo⁻¹ at an outside point: (number of negative eigenvalues, min |eigenvalue|).
    fn inertia(&self, mu: f64) -> Result<(usize, f64)> {
        let (g, _, _) = self.rec.continuation(mu * self.c, RESOLVENT_TOL, RESOLVENT_MAX_ITER);
        let (b, _) = self.rec.base(C64::new(mu * self.c, 0.0), &g);
        let m = b.to_mat();
        let h = CMat::from_fn(m.nrows(), m.ncols(), |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
        let ev = dense::hermitian_eigenvalues(&h)?;
        Ok((ev.iter().filter(|&&x| x < 0.0).count(), ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min)))
    }

    /// A pole of G_oo between two outside points shows up as a change of inertia of G_oo⁻¹
    /// through a vanishing eigenvalue.
    fn atom_between(&self, a: f64, b: f64, width: f64) -> Result<Option<f64>> {
        let (ia, _) = self.inertia(a)?;
        let (ib, _) = self.inertia(b)?;
        if ia == ib {
            return Ok(None);
        }
        let (mut lo, mut hi) = (a, b);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if self.inside(mid)? {
                // a point of the spectrum inside the bracket: it is the atom
                return Ok(Some(mid));
            }
            if self.inertia(mid)?.0 == ia {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mid = 0.5 * (lo + hi);
        let (_, gap) = self.inertia(mid)?;
        Ok(if gap < 1e-4 { Some(mid) } else { None })
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + step * k as f64).collect();
    if *g.last().expect("nonempty") < hi {
        g.push(hi);
    }
    g
}

/// σ(A∞) ∩ [lo, hi] as intervals and isolated points, from membership on a grid with
/// bisection-refined endpoints and an inertia scan for atoms between outside grid points.
pub fn infinite_spectrum_scan_with(k: &MatrixBouquet, lo: f64, hi: f64, step: f64, opts: &ScanOptions) -> Result<ScanResult> {
    if !(lo < hi) || !(step > 0.0) {
        return Err(Error::Invalid("scan needs lo < hi and step > 0".into()));
    }
    let (kn, c) = normalized(k);
    let sc = Scanner { rec: Recursion::new(&kn), c, tol: opts.tol };
    let xs = grid(lo, hi, step);
    let verdicts = parallel_map(&xs, opts.jobs, |&x| sc.inside(x))?;

    let mut intervals = vec![];
    let mut points = vec![];
    let mut k0 = 0;
    while k0 < xs.len() {
        if !verdicts[k0] {
            k0 += 1;
            continue;
        }
        let mut k1 = k0;
        while k1 + 1 < xs.len() && verdicts[k1 + 1] {
            k1 += 1;
        }
        let left = if k0 == 0 { xs[0] } else { sc.bisect(xs[k0 - 1], xs[k0], opts.refine)? };
        let right = if k1 + 1 == xs.len() { xs[k1] } else { sc.bisect(xs[k1 + 1], xs[k1], opts.refine)? };
        if right - left < opts.point_width {
            points.push(0.5 * (left + right));
        } else {
            intervals.push([left, right]);
        }
        k0 = k1 + 1;
    }
    for w in 0..xs.len().saturating_sub(1) {
        if !verdicts[w] && !verdicts[w + 1] {
            if let Some(p) = sc.atom_between(xs[w], xs[w + 1], opts.refine)? {
                points.push(p);
            }
        }
    }
    let s = SpectrumSet::from_parts(intervals, points);
    Ok(ScanResult { intervals: s.intervals, points: s.points, tol: opts.tol, grid_step: step })
}

pub fn infinite_spectrum_scan(k: &MatrixBouquet, lo: f64, hi: f64, step: f64) -> Result<ScanResult> {
    infinite_spectrum_scan_with(k, lo, hi, step, &ScanOptions::default())
}

/// Order-preserving map over `items` using up to `jobs` scoped threads.
pub fn parallel_map<T: Sync, U: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Result<U> + Sync,
) -> Result<Vec<U>> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let parts: Vec<Result<Vec<U>>> = std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Result<Vec<U>>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftEstimate {
    pub spectrum: SpectrumSet,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub resolution: f64,
}

/// σ(A∞) estimated from randomly signed N-lifts (no trivial eigenvalues to remove): eigenvalues
/// of all seeds are pooled and clustered at resolution 3/√N.
pub fn estimate_spectrum_general(p: &MatrixPolynomial, n: usize, seeds: &[u64]) -> Result<LiftEstimate> {
    if seeds.is_empty() {
        return Err(Error::Invalid("at least one seed is needed".into()));
    }
    let mut all = vec![];
    for &seed in seeds {
        let lift = random_lift(p.index_set, n, seed)?;
        let chi = Signing::random(&lift, seed ^ 0x5eed_5eed_5eed_5eed);
        all.extend(adjacency_matrix(&lift, p, Some(&chi))?.hermitian_eigenvalues()?);
    }
    let resolution = 3.0 / (n as f64).sqrt();
    Ok(LiftEstimate { spectrum: SpectrumSet::hull_with_gaps(&all, resolution), n, seeds: seeds.to_vec(), resolution })
}

#[derive(Clone, Debug)]
pub struct MethodParams {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub step: f64,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub scan: ScanOptions,
}

impl Default for MethodParams {
    fn default() -> Self {
        MethodParams { lo: None, hi: None, step: 0.01, n: 2000, seeds: vec![0, 1, 2], scan: ScanOptions::default() }
    }
}

/// A way of computing σ(A∞) for a polynomial, selected by name at run time.
pub trait InfiniteSpectrumMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn supports(&self, p: &MatrixPolynomial) -> bool;
    fn compute(&self, p: &MatrixPolynomial, params: &MethodParams) -> Result<SpectrumSet>;
}

pub struct ResolventMethod;

/// Bound on ‖A∞‖: the smaller of Σ‖a_i‖ (operator norms) and the Schur test on S = Σ_c |a_c|
/// taken entrywise, √(max row sum · max column sum).
fn norm_bound(k: &MatrixBouquet) -> f64 {
    let sum: f64 = k
        .coeffs
        .iter()
        .map(|a| dense::singular_values(a).ok().and_then(|s| s.into_iter().reduce(f64::max)).unwrap_or_else(|| dense::frob(a)))
        .sum();
    let r = k.r;
    let mut abs = vec![vec![0.0; r]; r];
    for a in &k.coeffs {
        for i in 0..r {
            for j in 0..r {
                abs[i][j] += a[(i, j)].norm();
            }
        }
    }
    let row = (0..r).map(|i| abs[i].iter().sum::<f64>()).fold(0.0, f64::max);
    let col = (0..r).map(|j| (0..r).map(|i| abs[i][j]).sum::<f64>()).fold(0.0, f64::max);
    sum.min((row * col).sqrt())
}

impl InfiniteSpectrumMethod for ResolventMethod {
    fn name(&self) -> &'static str {
        "resolvent"
    }
    fn supports(&self, p: &MatrixPolynomial) -> bool {
        p.is_linear()
    }
    fn compute(&self, p: &MatrixPolynomial, params: &MethodParams) -> Result<SpectrumSet> {
        if !self.supports(p) {
            return Err(Error::Unsupported("the resolvent method needs a linear polynomial (a bouquet)".into()));
        }
        let k = p.to_bouquet()?;
        let b = norm_bound(&k) + params.step;
        let res =
            infinite_spectrum_scan_with(&k, params.lo.unwrap_or(-b), params.hi.unwrap_or(b), params.step, &params.scan)?;
        Ok(res.spectrum())
    }
}

pub struct LiftMethod;

impl InfiniteSpectrumMethod for LiftMethod {
    fn name(&self) -> &'static str {
        "lift"
    }
    fn supports(&self, _: &MatrixPolynomial) -> bool {
        true
    }
    fn compute(&self, p: &MatrixPolynomial, params: &MethodParams) -> Result<SpectrumSet> {
        Ok(estimate_spectrum_general(p, params.n, &params.seeds)?.spectrum)
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn InfiniteSpectrumMethod>>,
}

impl Default for MethodRegistry {
    fn default() -> Self {
        MethodRegistry { methods: vec![Box::new(ResolventMethod), Box::new(LiftMethod)] }
    }
}

impl MethodRegistry {
    pub fn register(&mut self, m: Box<dyn InfiniteSpectrumMethod>) {
        self.methods.retain(|x| x.name() != m.name());
        self.methods.push(m);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn InfiniteSpectrumMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::Invalid(format!("unknown method '{name}', expected one of {:?}", self.names())))
    }
}

/// Smallest |eigenvalue| of a general square matrix.
pub fn min_abs_eigenvalue(m: &CMat) -> Result<f64> {
    Ok(dense::eigenvalues(m)?.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min))
}
