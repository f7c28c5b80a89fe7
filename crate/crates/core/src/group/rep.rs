use nalgebra::Matrix2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::word::{GroupPresentation, Word};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::tolerance::Tolerances;

pub type Sl2Matrix = Matrix2<C64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Su2,
    Sl2C,
}

pub fn sl2(a: C64, b: C64, c: C64, d: C64) -> Sl2Matrix {
    Matrix2::new(a, b, c, d)
}

/// Inverse of a unimodular matrix by the adjugate.
pub fn sl2_inverse(m: &Sl2Matrix) -> Sl2Matrix {
    Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

pub fn sl2_det(m: &Sl2Matrix) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

pub fn sl2_trace(m: &Sl2Matrix) -> C64 {
    m[(0, 0)] + m[(1, 1)]
}

pub fn sl2_norm(m: &Sl2Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn is_unitary(m: &Sl2Matrix, tol: f64) -> bool {
    sl2_norm(&(m.adjoint() * m - Sl2Matrix::identity())) <= tol
}

/// Scale a matrix with nonzero determinant into SL2(ℂ) by the principal
/// square root of its determinant.
pub fn normalize_det(m: &Sl2Matrix) -> Option<Sl2Matrix> {
    let d = sl2_det(m);
    if d.norm() < 1e-300 {
        return None;
    }
    Some(m / d.sqrt())
}

/// Haar-like random SU(2) element from a random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Sl2Matrix {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            let [w, x, y, z] = q.map(|v| v / n);
            return sl2(
                C64::new(w, x),
                C64::new(y, z),
                C64::new(-y, z),
                C64::new(w, -x),
            );
        }
    }
}

/// Random SL2(ℂ) element with moderately sized entries.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Sl2Matrix {
    loop {
        let m =
            Matrix2::from_fn(|_, _| linalg::c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)));
        let d = sl2_det(&m);
        if d.norm() > 0.2 {
            return normalize_det(&m).expect("determinant is nonzero");
        }
    }
}

/// Images of the generators of a presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub images: Vec<Sl2Matrix>,
    pub flavor: Flavor,
}

impl Representation {
    /// Validates unimodularity and, for SU(2), unitarity.
    pub fn new(images: Vec<Sl2Matrix>, flavor: Flavor, tol: &Tolerances) -> Result<Self> {
        for m in &images {
            let e = (sl2_det(m) - ONE).norm();
            if e > tol.relator {
                return Err(Error::NotUnimodular(e));
            }
            if flavor == Flavor::Su2 && !is_unitary(m, tol.relator.max(1e-8)) {
                return Err(Error::NotUnitarizable(
                    "generator image is not unitary".into(),
                ));
            }
        }
        Ok(Representation { images, flavor })
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &Sl2Matrix {
        &self.images[g]
    }

    pub fn evaluate_word(&self, w: &Word) -> Sl2Matrix {
        let mut acc = Sl2Matrix::identity();
        for l in &w.letters {
            let m = &self.images[l.generator];
            if l.exponent == 1 {
                acc *= m;
            } else {
                acc *= sl2_inverse(m);
            }
        }
        acc
    }

    /// `g ρ g⁻¹`.
    pub fn conjugate(&self, g: &Sl2Matrix) -> Representation {
        let gi = sl2_inverse(g);
        Representation {
            images: self.images.iter().map(|m| g * m * gi).collect(),
            flavor: self.flavor,
        }
    }

    pub fn relator_residuals(&self, p: &GroupPresentation) -> Vec<f64> {
        p.relators
            .iter()
            .map(|r| sl2_norm(&(self.evaluate_word(r) - Sl2Matrix::identity())))
            .collect()
    }

    pub fn check_relators(&self, p: &GroupPresentation, tol: &Tolerances) -> Result<()> {
        if p.generator_count() != self.images.len() {
            return Err(Error::DimensionMismatch(format!(
                "presentation has {} generators, representation {}",
                p.generator_count(),
                self.images.len()
            )));
        }
        for (index, residual) in self.relator_residuals(p).into_iter().enumerate() {
            if residual > tol.relator {
                return Err(Error::RelatorViolation { index, residual });
            }
        }
        Ok(())
    }

    /// Conjugate into SU(2) using the invariant Hermitian form.
    ///
    /// Solves `X* H X = H` for all generator images; a positive definite
    /// solution `H` exists exactly when the representation is conjugate into
    /// U(2), and `H^{1/2}` does the conjugation.
    pub fn unitarize(&self, tol: &Tolerances) -> Result<Representation> {
        // H = [[p, q + i r], [q − i r, s]] with real unknowns (p, q, r, s).
        let basis = [
            sl2(ONE, ZERO, ZERO, ZERO),
            sl2(ZERO, ONE, ONE, ZERO),
            sl2(ZERO, C64::i(), -C64::i(), ZERO),
            sl2(ZERO, ZERO, ZERO, ONE),
        ];
        let rows = 8 * self.images.len();
        let mut sys = CMat::zeros(rows.max(4), 4);
        for (g, x) in self.images.iter().enumerate() {
            for (j, h) in basis.iter().enumerate() {
                let e = x.adjoint() * h * x - h;
                for (k, z) in e.iter().enumerate() {
                    sys[(8 * g + 2 * k, j)] = C64::new(z.re, 0.0);
                    sys[(8 * g + 2 * k + 1, j)] = C64::new(z.im, 0.0);
                }
            }
        }
        let null = linalg::kernel(&sys, tol);
        if null.ncols() != 1 {
            return Err(Error::NotUnitarizable(format!(
                "invariant Hermitian forms span dimension {}",
                null.ncols()
            )));
        }
        let v: Vec<f64> = null.column(0).iter().map(|z| z.re).collect();
        let mut h = basis
            .iter()
            .zip(&v)
            .fold(Sl2Matrix::zeros(), |acc, (b, &c)| {
                acc + b * C64::new(c, 0.0)
            });
        if sl2_trace(&h).re < 0.0 {
            h = -h;
        }
        let det = sl2_det(&h).re;
        if det <= 0.0 || h[(0, 0)].re <= 0.0 {
            return Err(Error::NotUnitarizable(
                "invariant Hermitian form is indefinite".into(),
            ));
        }
        // Square root of a positive definite 2×2 matrix.
        let sd = det.sqrt();
        let s = (h + Sl2Matrix::identity() * C64::new(sd, 0.0))
            / C64::new((sl2_trace(&h).re + 2.0 * sd).sqrt(), 0.0);
        let s = normalize_det(&s).ok_or(Error::NotUnitarizable("degenerate form".into()))?;
        let out = self.conjugate(&s);
        Representation::new(out.images, Flavor::Su2, tol)
    }
}
