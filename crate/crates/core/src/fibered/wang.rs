//! The Wang sequence `0 → H¹(M) → H¹(F) → H¹(F) → H²(M) → 0` as a based
//! acyclic complex, and the short exact sequence of twisted cochain
//! complexes it comes from.

use super::knot::FiberedKnot;
use super::monodromy::{eigenvalues_excluding_one, twisted_monodromy_on_h1, MonodromyAction};
use crate::error::{Error, Result};
use crate::group::{adjoint, sl2_inverse, twisted_cochain_complex, Representation};
use crate::linalg::{self, CMat, C64};
use crate::tolerance::Tolerances;
use crate::torsion::{sign_determined_torsion, torsion, BasedChainComplex, ShortExactSequence};

/// Based Wang complex built from the matrix of the monodromy on `H¹(F)`.
#[derive(Debug, Clone)]
pub struct WangComplex {
    pub complex: BasedChainComplex,
    /// Basis of `H¹(F)` (columns, in the coordinates of the input matrix):
    /// a Schur basis of `im(I − M)` followed by the unit eigenvector.
    pub basis: CMat,
    /// The monodromy in that basis: upper triangular, last column `e_n`.
    pub triangular: CMat,
}

/// Cochain complex `F → Fⁿ → Fⁿ → F` with maps `e_n`, `I − T`, `e_nᵀ`.
pub fn wang_complex_from_matrix(m: &CMat, tol: &Tolerances) -> Result<WangComplex> {
    let n = m.nrows();
    eigenvalues_excluding_one(m, tol)?;
    let id_minus = CMat::identity(n, n) - m;
    // The kernel is one-dimensional once the unit eigenvalue is simple, but a
    // tight rank threshold may still see a defective block.
    let loose = tol.with_rank_rel(tol.unit_eigenvalue);
    let kernel = linalg::kernel(&id_minus, &loose);
    match kernel.ncols() {
        0 => return Err(Error::NoUnitEigenvalue),
        1 => {}
        count => return Err(Error::NonSimpleUnitEigenvalue { count }),
    }
    let v = kernel.column(0).into_owned();
    let w = linalg::image(&id_minus, &loose);
    let (z, _) = linalg::schur(&(w.adjoint() * m * &w))?;
    let wz = &w * z;
    let basis = linalg::hconcat(n, &[&wz, &CMat::from_column_slice(n, 1, v.as_slice())]);
    let inv = basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::SingularBasis("Wang basis".into()))?;
    let triangular = &inv * m * &basis;
    let mut e_n = CMat::zeros(n, 1);
    e_n[(n - 1, 0)] = C64::new(1.0, 0.0);
    let complex = BasedChainComplex::cochain(
        vec![1, n, n, 1],
        vec![
            e_n.clone(),
            CMat::identity(n, n) - &triangular,
            e_n.transpose(),
        ],
    )?;
    Ok(WangComplex {
        complex,
        basis,
        triangular,
    })
}

/// Torsion of the based Wang complex; equals `∏ (1 − λᵢ)` for odd `n`.
pub fn wang_sequence_torsion(
    fk: &FiberedKnot,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<C64> {
    let action = twisted_monodromy_on_h1(fk, rep, tol)?;
    let wang = wang_complex_from_matrix(&action.matrix, tol)?;
    torsion(&wang.complex, tol)
}

/// `0 → C' → C*(X_K; 𝔤) → C*(F; 𝔤) → 0` where `C'` is the kernel of the
/// restriction, with homology bases adapted to the Wang basis.
#[derive(Debug, Clone)]
pub struct WangSequence {
    pub sequence: ShortExactSequence,
    pub wang: WangComplex,
    pub action: MonodromyAction,
}

pub fn wang_exact_sequence(
    fk: &FiberedKnot,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<WangSequence> {
    let action = twisted_monodromy_on_h1(fk, rep, tol)?;
    let wang = wang_complex_from_matrix(&action.matrix, tol)?;
    let n = fk.fiber_rank();
    let f = 3 * n;
    let h = f - 3;

    let exterior = twisted_cochain_complex(&fk.presentation(), rep, tol)?;
    let fiber_rep = Representation {
        images: rep.images[..n].to_vec(),
        flavor: rep.flavor,
    };
    let fiber = twisted_cochain_complex(&fk.fiber_presentation(), &fiber_rep, tol)?;
    let d1 = exterior.differentials()[1].clone();
    let sub = BasedChainComplex::cochain(
        vec![0, 3, f],
        vec![CMat::zeros(3, 0), d1.columns(f, 3).into_owned()],
    )?;

    let mut inc1 = CMat::zeros(f + 3, 3);
    inc1.view_mut((f, 0), (3, 3)).fill_with_identity();
    let mut proj1 = CMat::zeros(f, f + 3);
    proj1.view_mut((0, 0), (f, f)).fill_with_identity();
    let inclusions = vec![CMat::zeros(3, 0), inc1, CMat::identity(f, f)];
    let projections = vec![CMat::identity(3, 3), proj1, CMat::zeros(0, f)];

    // H¹(F): the Wang basis pushed into cochain coordinates.
    let h_fiber = &action.complement * &wang.basis;
    // ψ = Ad_{ρ(t)⁻¹} blockwise identifies H¹(F) with H²(C').
    let t_inv = sl2_inverse(rep.image(fk.meridian_index()));
    let ad = adjoint(&t_inv, rep.flavor);
    let mut psi = CMat::zeros(f, f);
    for i in 0..n {
        for r in 0..3 {
            for c in 0..3 {
                psi[(3 * i + r, 3 * i + c)] = ad[(r, c)];
            }
        }
    }
    let h_sub = &psi * &h_fiber;

    // Lift the unit eigenvector to a cocycle on the exterior.
    let w = h_fiber.column(h - 1).into_owned();
    let d0_fiber = fiber.differentials()[0].clone();
    let d1_fib_part = d1.columns(0, f).into_owned();
    let sys = linalg::hconcat(
        f,
        &[&(&d1_fib_part * &d0_fiber), &d1.columns(f, 3).into_owned()],
    );
    let rhs = -(&d1_fib_part * CMat::from_column_slice(f, 1, w.as_slice()));
    let sol = linalg::least_squares(&sys, &rhs, tol);
    let correction = &d0_fiber * sol.rows(0, 3);
    let mut h1 = CMat::zeros(f + 3, 1);
    for i in 0..f {
        h1[(i, 0)] = w[i] + correction[(i, 0)];
    }
    for i in 0..3 {
        h1[(f + i, 0)] = sol[(3 + i, 0)];
    }
    let resid = linalg::frobenius(&(&d1 * &h1)) / linalg::frobenius(&h1).max(1.0);
    if resid > tol.identity.max(1e-7) {
        return Err(Error::NotExact {
            degree: 1,
            reason: format!("unit eigenvector does not lift to a cocycle (residual {resid:.3e})"),
        });
    }
    let h2 = h_sub.columns(h - 1, 1).into_owned();

    let total = exterior
        .with_homology_basis(1, h1)?
        .with_homology_basis(2, h2)?;
    let sub = sub.with_homology_basis(2, h_sub)?;
    let quotient = fiber.with_homology_basis(1, h_fiber)?;
    Ok(WangSequence {
        sequence: ShortExactSequence {
            sub,
            total,
            quotient,
            inclusions,
            projections,
        },
        wang,
        action,
    })
}

/// Sign-determined torsion of `C*(X_K; 𝔤)` with the homology bases of
/// [`wang_exact_sequence`].
pub fn exterior_torsion(fk: &FiberedKnot, rep: &Representation, tol: &Tolerances) -> Result<C64> {
    let ws = wang_exact_sequence(fk, rep, tol)?;
    sign_determined_torsion(&ws.sequence.total, tol)
}

/// Real-coefficient cochain complex of the exterior with `h⁰ = 1` and
/// `h¹ = t*`.
pub fn real_exterior_complex(fk: &FiberedKnot) -> Result<BasedChainComplex> {
    let p = fk.presentation();
    let g = p.generator_count();
    let r = p.relators.len();
    let d1 = CMat::from_fn(r, g, |i, j| {
        C64::new(p.relators[i].exponent_sum(j) as f64, 0.0)
    });
    let mut t_star = CMat::zeros(g, 1);
    t_star[(fk.meridian_index(), 0)] = C64::new(1.0, 0.0);
    BasedChainComplex::cochain(vec![1, g, r], vec![CMat::zeros(g, 1), d1])?
        .with_homology_basis(0, CMat::identity(1, 1))?
        .with_homology_basis(1, t_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real};

    #[test]
    fn synthetic_diagonal() {
        let tol = Tolerances::default();
        let m = from_real(3, 3, &[1., 0., 0., 0., 2., 0., 0., 0., 3.]);
        let w = wang_complex_from_matrix(&m, &tol).unwrap();
        let t = torsion(&w.complex, &tol).unwrap();
        assert!((t - c(2.0, 0.0)).norm() < 1e-12, "{t}");
        let tri = &w.triangular;
        assert!((tri[(2, 2)] - c(1.0, 0.0)).norm() < 1e-12);
        for i in 0..2 {
            assert!(tri[(i, 2)].norm() < 1e-12);
            assert!(tri[(2, i)].norm() < 1e-12);
        }
        assert!(tri[(1, 0)].norm() < 1e-12);
    }

    #[test]
    fn synthetic_with_jordan_block_elsewhere() {
        let tol = Tolerances::default();
        let m = from_real(3, 3, &[2., 1., 0., 0., 2., 0., 0., 0., 1.]);
        let w = wang_complex_from_matrix(&m, &tol).unwrap();
        assert!((torsion(&w.complex, &tol).unwrap() - c(1.0, 0.0)).norm() < 1e-10);
    }
}
