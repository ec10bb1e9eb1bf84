//! Thin helpers over faer for the small and medium dense matrices used everywhere.

use faer::linalg::solvers::DenseSolveCore;
use faer::{Mat, Side};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMat = Mat<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn identity(r: usize) -> CMat {
    Mat::from_fn(r, r, |i, j| if i == j { ONE } else { ZERO })
}

pub fn zeros(r: usize, c: usize) -> CMat {
    Mat::from_fn(r, c, |_, _| ZERO)
}

pub fn from_real(rows: &[Vec<f64>]) -> CMat {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    Mat::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
}

pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint().to_owned()
}

pub fn frob(m: &CMat) -> f64 {
    let mut s = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            s += m[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}

pub fn max_abs(m: &CMat) -> f64 {
    let mut s: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            s = s.max(m[(i, j)].norm());
        }
    }
    s
}

pub fn diff_frob(a: &CMat, b: &CMat) -> f64 {
    let mut s = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            s += (a[(i, j)] - b[(i, j)]).norm_sqr();
        }
    }
    s.sqrt()
}

pub fn scale(m: &CMat, s: C64) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * s)
}

pub fn is_zero(m: &CMat, tol: f64) -> bool {
    max_abs(m) <= tol
}

pub fn is_real(m: &CMat) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| m[(i, j)].im == 0.0))
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let s = tol * max_abs(m).max(1.0);
    for i in 0..m.nrows() {
        for j in 0..=i {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > s {
                return false;
            }
        }
    }
    true
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca, rb, cb) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    Mat::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// Inverse with an explicit singularity check (faer's LU never reports one).
pub fn inverse(m: &CMat) -> Result<CMat> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(zeros(0, 0));
    }
    let inv = m.partial_piv_lu().inverse();
    let ok = (0..n).all(|j| (0..n).all(|i| inv[(i, j)].re.is_finite() && inv[(i, j)].im.is_finite()));
    if !ok {
        return Err(Error::Singular("matrix is not invertible".into()));
    }
    let resid = diff_frob(&(m * &inv), &identity(n));
    if resid > 1e-6 * (n as f64).sqrt() {
        return Err(Error::Singular(format!("inverse residual {resid:.2e}")));
    }
    Ok(inv)
}

fn real_copy(m: &CMat) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re)
}

/// Ascending eigenvalues of a Hermitian matrix, using the real solver when possible.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    let mut ev = if is_real(m) {
        real_copy(m).self_adjoint_eigenvalues(Side::Lower)
    } else {
        m.self_adjoint_eigenvalues(Side::Lower)
    }
    .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

pub fn real_symmetric_eigenvalues(m: &Mat<f64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    let mut ev = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Eigen-decomposition of a Hermitian matrix: (ascending eigenvalues, eigenvector columns).
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))?;
    let s = evd.S();
    let vals = (0..m.nrows()).map(|i| s[i].re).collect();
    Ok((vals, evd.U().to_owned()))
}

/// U f(Λ) U† for a Hermitian input.
pub fn hermitian_map(m: &CMat, f: impl Fn(f64) -> C64) -> Result<CMat> {
    let (vals, u) = hermitian_eigen(m)?;
    let n = m.nrows();
    let fv: Vec<C64> = vals.iter().map(|&x| f(x)).collect();
    Ok(Mat::from_fn(n, n, |i, j| {
        let mut s = ZERO;
        for k in 0..n {
            s += u[(i, k)] * fv[k] * u[(j, k)].conj();
        }
        s
    }))
}

/// All eigenvalues of a general square matrix.
pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    if is_real(m) {
        real_copy(m).eigenvalues()
    } else {
        m.eigenvalues()
    }
    .map_err(|e| Error::Numeric(format!("eigensolver: {e:?}")))
}

/// Singular values in nonincreasing order.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(vec![]);
    }
    if is_real(m) {
        real_copy(m).singular_values()
    } else {
        m.singular_values()
    }
    .map_err(|e| Error::Numeric(format!("svd: {e:?}")))
}

pub fn spectral_radius_small(m: &CMat) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
