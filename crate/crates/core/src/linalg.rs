//! Dense complex linear algebra helpers.
//!
//! Matrices are nalgebra types throughout; singular value decompositions
//! are delegated to faer, whose SVD stays accurate on rank-deficient input.
//! All rank decisions go through [`rank_threshold`] so that the whole crate
//! shares one policy.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn rank_threshold(sigma_max: f64, tol: &Tolerances) -> f64 {
    (tol.rank_rel * sigma_max).max(tol.rank_abs)
}

/// Full singular value decomposition `m = U diag(s) V*` with `s`
/// nonincreasing; `U` is `m × m` and `V` is `n × n`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    pub fn new(m: &CMat) -> Svd {
        let (rows, cols) = m.shape();
        if rows == 0 || cols == 0 {
            return Svd {
                u: CMat::identity(rows, rows),
                s: Vec::new(),
                v: CMat::identity(cols, cols),
            };
        }
        let fm = faer::Mat::<C64>::from_fn(rows, cols, |i, j| m[(i, j)]);
        let svd = fm.svd().expect("SVD iteration did not converge");
        let (u, v) = (svd.U(), svd.V());
        let sd = svd.S().column_vector();
        Svd {
            u: CMat::from_fn(rows, rows, |i, j| u[(i, j)]),
            s: (0..rows.min(cols)).map(|i| sd[i].re).collect(),
            v: CMat::from_fn(cols, cols, |i, j| v[(i, j)]),
        }
    }

    pub fn threshold(&self, tol: &Tolerances) -> f64 {
        rank_threshold(self.s.first().copied().unwrap_or(0.0), tol)
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        let thr = self.threshold(tol);
        self.s.iter().filter(|&&x| x > thr).count()
    }
}

pub fn rank(m: &CMat, tol: &Tolerances) -> usize {
    Svd::new(m).rank(tol)
}

/// Orthonormal basis (as columns) of the kernel of `m`.
pub fn kernel(m: &CMat, tol: &Tolerances) -> CMat {
    let n = m.ncols();
    let svd = Svd::new(m);
    let r = svd.rank(tol);
    svd.v.columns(r, n - r).into_owned()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn image(m: &CMat, tol: &Tolerances) -> CMat {
    let svd = Svd::new(m);
    let r = svd.rank(tol);
    svd.u.columns(0, r).into_owned()
}

/// Orthonormal basis of the orthogonal complement of the column span of `sub`
/// inside `C^ambient`.
pub fn orthogonal_complement(sub: &CMat, ambient: usize, tol: &Tolerances) -> CMat {
    if sub.ncols() == 0 {
        return CMat::identity(ambient, ambient);
    }
    kernel(&sub.adjoint(), tol)
}

pub fn columns_to_matrix(rows: usize, cols: &[CVec]) -> CMat {
    let mut out = CMat::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

/// Horizontal concatenation; every block must have `rows` rows.
pub fn hconcat(rows: usize, blocks: &[&CMat]) -> CMat {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        debug_assert_eq!(b.nrows(), rows);
        out.view_mut((0, at), (rows, b.ncols())).copy_from(*b);
        at += b.ncols();
    }
    out
}

/// Determinant with the empty-matrix convention det() = 1.
pub fn det(m: &CMat) -> C64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.clone().lu().determinant()
}

/// Minimum-norm least-squares solution of `a x = b` via SVD.
pub fn least_squares(a: &CMat, b: &CMat, tol: &Tolerances) -> CMat {
    let svd = Svd::new(a);
    let r = svd.rank(tol);
    let ur = svd.u.columns(0, r);
    let vr = svd.v.columns(0, r);
    let mut coeffs = ur.adjoint() * b;
    for (i, mut row) in coeffs.row_iter_mut().enumerate() {
        row /= C64::new(svd.s[i], 0.0);
    }
    vr * coeffs
}

/// Greedy largest-residual column selection: returns `rank(m)` column indices
/// whose columns are linearly independent.
pub fn pivot_columns(m: &CMat, tol: &Tolerances) -> Vec<usize> {
    let r = rank(m, tol);
    let mut residual = m.clone();
    let mut chosen = Vec::with_capacity(r);
    for _ in 0..r {
        let mut best = None;
        let mut best_norm = -1.0;
        for j in 0..residual.ncols() {
            if chosen.contains(&j) {
                continue;
            }
            let n = residual.column(j).norm();
            if n > best_norm {
                best_norm = n;
                best = Some(j);
            }
        }
        let j = best.expect("rank bounded by column count");
        chosen.push(j);
        let q = residual.column(j) / C64::from(best_norm);
        for k in 0..residual.ncols() {
            let proj = q.dotc(&residual.column(k));
            let upd = residual.column(k) - &q * proj;
            residual.set_column(k, &upd);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Eigenvalues of a square complex matrix from its complex Schur form.
pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = m
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or(Error::EigenFailure)?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Unitary Q and upper-triangular T with m = Q T Q*.
pub fn schur(m: &CMat) -> Result<(CMat, CMat)> {
    if m.nrows() == 0 {
        return Ok((CMat::zeros(0, 0), CMat::zeros(0, 0)));
    }
    let schur = m
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or(Error::EigenFailure)?;
    Ok(schur.unpack())
}

pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMat {
    CMat::from_row_iterator(rows, cols, data.iter().map(|&x| real(x)))
}
