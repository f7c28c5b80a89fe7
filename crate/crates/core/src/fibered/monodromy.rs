//! The monodromy action on `H¹(F; 𝔤)` and the torsion it determines.

use serde::{Deserialize, Serialize};

use super::knot::{epsilon0, FiberedKnot};
use super::poly::trace_jacobian;
use crate::error::{Error, Result};
use crate::group::{
    adjoint, coboundary_zero, evaluate_group_ring, fox_derivative, sl2_trace, Representation,
};
use crate::linalg::{self, CMat, C64, ONE};
use crate::tolerance::Tolerances;

/// `h ↦ Ad_{ρ(t)} h(φ(·))` on cochains of the fiber and its matrix on a
/// complement of the coboundaries.
#[derive(Debug, Clone)]
pub struct MonodromyAction {
    /// Action on `C¹(F; 𝔤) = 𝔤^{2g}`.
    pub cochain_action: CMat,
    /// Orthonormal basis of `B¹(F; 𝔤)`.
    pub coboundaries: CMat,
    /// Orthonormal basis of the orthogonal complement of `B¹`.
    pub complement: CMat,
    /// Induced endomorphism of `H¹(F; 𝔤)` in the complement basis.
    pub matrix: CMat,
}

impl MonodromyAction {
    /// Induced matrix with respect to another complement of `B¹`, given by
    /// its columns.
    pub fn matrix_in_complement(&self, basis: &CMat, tol: &Tolerances) -> CMat {
        let rows = basis.nrows();
        let sys = linalg::hconcat(rows, &[basis, &self.coboundaries]);
        let x = linalg::least_squares(&sys, &(&self.cochain_action * basis), tol);
        x.rows(0, basis.ncols()).into_owned()
    }
}

fn fiber_restriction(fk: &FiberedKnot, rep: &Representation) -> Representation {
    Representation {
        images: rep.images[..fk.fiber_rank()].to_vec(),
        flavor: rep.flavor,
    }
}

pub fn twisted_monodromy_on_h1(
    fk: &FiberedKnot,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<MonodromyAction> {
    rep.check_relators(&fk.presentation(), tol)?;
    let n = fk.fiber_rank();
    let fiber = fiber_restriction(fk, rep);
    let d0 = coboundary_zero(&fiber);
    let fixed = linalg::kernel(&d0, tol).ncols();
    if fixed > 0 {
        return Err(Error::ReducibleFiber { fixed_dim: fixed });
    }
    let ad_t = adjoint(rep.image(fk.meridian_index()), rep.flavor);
    let mut phi = CMat::zeros(3 * n, 3 * n);
    for (i, word) in fk.monodromy.iter().enumerate() {
        for j in 0..n {
            let block = ad_t * evaluate_group_ring(&fiber, &fox_derivative(word, j));
            for r in 0..3 {
                for c in 0..3 {
                    phi[(3 * i + r, 3 * j + c)] = block[(r, c)];
                }
            }
        }
    }
    let b = linalg::image(&d0, tol);
    let moved = &phi * &b;
    let leak = &moved - &b * (b.adjoint() * &moved);
    let residual = linalg::frobenius(&leak) / linalg::frobenius(&phi).max(1.0);
    if residual > tol.identity.max(1e-7) {
        return Err(Error::CoboundariesNotPreserved(residual));
    }
    let q = linalg::orthogonal_complement(&b, 3 * n, tol);
    let matrix = q.adjoint() * &phi * &q;
    Ok(MonodromyAction {
        cochain_action: phi,
        coboundaries: b,
        complement: q,
        matrix,
    })
}

fn sort_eigenvalues(v: &mut [C64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues other than the simple eigenvalue 1, sorted by (re, im).
pub fn eigenvalues_excluding_one(m: &CMat, tol: &Tolerances) -> Result<Vec<C64>> {
    let ev = linalg::eigenvalues(m)?;
    let near: Vec<usize> = (0..ev.len())
        .filter(|&i| (ev[i] - ONE).norm() < tol.unit_eigenvalue)
        .collect();
    // A defective eigenvalue 1 of multiplicity m splits by about ε^{1/m}, so
    // a wider cluster around 1 also counts when M − I is singular.
    let cluster = ev
        .iter()
        .filter(|z| (*z - ONE).norm() < tol.unit_eigenvalue.sqrt())
        .count();
    let n = m.nrows();
    let singular = n > 0 && linalg::rank(&(m - CMat::identity(n, n)), tol) < n;
    if singular && cluster >= 2 {
        return Err(Error::NonSimpleUnitEigenvalue { count: cluster });
    }
    match near.len() {
        0 => return Err(Error::NoUnitEigenvalue),
        1 => {}
        count => return Err(Error::NonSimpleUnitEigenvalue { count }),
    }
    let mut rest: Vec<C64> = ev
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != near[0])
        .map(|(_, z)| *z)
        .collect();
    sort_eigenvalues(&mut rest);
    Ok(rest)
}

/// Smallest max-deviation over all matchings of two equal-size multisets.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn go(a: &[C64], b: &mut Vec<C64>, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        let Some((first, rest)) = a.split_first() else {
            *best = worst;
            return;
        };
        for k in 0..b.len() {
            let z = b.swap_remove(k);
            go(rest, b, worst.max((first - z).norm()), best);
            b.push(z);
            let last = b.len() - 1;
            b.swap(k, last);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0.0, &mut best);
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Cohomology,
    Jacobian,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Cohomology => "cohomology",
            Method::Jacobian => "jacobian",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// Second computation of the spectrum from the trace-coordinate Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianCheck {
    pub point: [C64; 3],
    /// All eigenvalues of the Jacobian, sorted.
    pub eigenvalues: Vec<C64>,
    /// Matching distance to the full spectrum of the cohomology pipeline.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub torsion: C64,
    pub epsilon0: i32,
    pub eigenvalues: Vec<C64>,
    pub unit_eigenvalue_gap: f64,
    pub method: Method,
    pub jacobian: Option<JacobianCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionReportJson {
    pub torsion_re: f64,
    pub torsion_im: f64,
    pub epsilon0: i32,
    pub eigenvalues: Vec<[f64; 2]>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_eigenvalue_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_eigenvalues: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_deviation: Option<f64>,
}

fn pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl TorsionReport {
    pub fn to_json(&self) -> TorsionReportJson {
        TorsionReportJson {
            torsion_re: self.torsion.re,
            torsion_im: self.torsion.im,
            epsilon0: self.epsilon0,
            eigenvalues: pairs(&self.eigenvalues),
            method: self.method,
            unit_eigenvalue_gap: self
                .unit_eigenvalue_gap
                .is_finite()
                .then_some(self.unit_eigenvalue_gap),
            jacobian_eigenvalues: self.jacobian.as_ref().map(|j| pairs(&j.eigenvalues)),
            jacobian_deviation: self.jacobian.as_ref().map(|j| j.deviation),
        }
    }
}

/// `−ε₀ ∏ 1/(1 − λᵢ)`, guarding against eigenvalues at 1.
fn torsion_from_eigenvalues(eps0: i32, lambdas: &[C64], tol: &Tolerances) -> Result<(C64, f64)> {
    let gap = lambdas
        .iter()
        .map(|l| (l - ONE).norm())
        .fold(f64::INFINITY, f64::min);
    if gap < tol.unit_eigenvalue {
        let z = lambdas
            .iter()
            .find(|l| (*l - ONE).norm() == gap)
            .copied()
            .unwrap_or(ONE);
        return Err(Error::UnitEigenvalueDivision(format!("{z}")));
    }
    let prod: C64 = lambdas.iter().map(|l| ONE - l).product();
    Ok((-(eps0 as f64) / prod, gap))
}

/// Trace coordinates `(Tr ρ(a), Tr ρ(b), Tr ρ(ab))` of a genus-1 fiber.
pub fn character_point(rep: &Representation) -> [C64; 3] {
    let a = rep.image(0);
    let b = rep.image(1);
    [sl2_trace(a), sl2_trace(b), sl2_trace(&(a * b))]
}

pub fn main_theorem_torsion(
    fk: &FiberedKnot,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<TorsionReport> {
    let eps0 = epsilon0(fk)?;
    let action = twisted_monodromy_on_h1(fk, rep, tol)?;
    let lambdas = eigenvalues_excluding_one(&action.matrix, tol)?;
    let (torsion, gap) = torsion_from_eigenvalues(eps0, &lambdas, tol)?;
    let jacobian = match (&fk.trace_map, fk.genus) {
        (Some(p), 1) => {
            let point = character_point(rep);
            let mut jev = linalg::eigenvalues(&trace_jacobian(p, &point))?;
            sort_eigenvalues(&mut jev);
            let full = linalg::eigenvalues(&action.matrix)?;
            let deviation = multiset_distance(&full, &jev);
            Some(JacobianCheck {
                point,
                eigenvalues: jev,
                deviation,
            })
        }
        _ => None,
    };
    Ok(TorsionReport {
        torsion,
        epsilon0: eps0,
        eigenvalues: lambdas,
        unit_eigenvalue_gap: gap,
        method: Method::Cohomology,
        jacobian,
    })
}

/// The same formula with eigenvalues taken from the trace-coordinate
/// Jacobian at a character (genus 1 only).
pub fn jacobian_torsion(
    fk: &FiberedKnot,
    point: &[C64; 3],
    tol: &Tolerances,
) -> Result<TorsionReport> {
    let p = fk.trace_map.as_ref().ok_or(Error::NoTraceMap)?;
    let eps0 = epsilon0(fk)?;
    let lambdas = eigenvalues_excluding_one(&trace_jacobian(p, point), tol)?;
    let (torsion, gap) = torsion_from_eigenvalues(eps0, &lambdas, tol)?;
    Ok(TorsionReport {
        torsion,
        epsilon0: eps0,
        eigenvalues: lambdas,
        unit_eigenvalue_gap: gap,
        method: Method::Jacobian,
        jacobian: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real};

    #[test]
    fn diagonal_excluding_one() {
        let tol = Tolerances::default();
        let m = from_real(3, 3, &[1., 0., 0., 0., 2., 0., 0., 0., 3.]);
        let ev = eigenvalues_excluding_one(&m, &tol).unwrap();
        assert!((ev[0] - c(2.0, 0.0)).norm() < 1e-12);
        assert!((ev[1] - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_simple_unit_eigenvalue() {
        let tol = Tolerances::default();
        let m = from_real(3, 3, &[1., 0., 0., 0., 1., 0., 0., 0., 2.]);
        assert_eq!(
            eigenvalues_excluding_one(&m, &tol),
            Err(Error::NonSimpleUnitEigenvalue { count: 2 })
        );
        let m = from_real(2, 2, &[2., 0., 0., 3.]);
        assert_eq!(
            eigenvalues_excluding_one(&m, &tol),
            Err(Error::NoUnitEigenvalue)
        );
    }

    #[test]
    fn matching_distance() {
        let a = [c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let b = [c(2.0, 0.0), c(1.0, 1e-3), c(0.0, 1.0)];
        assert!((multiset_distance(&a, &b) - 1e-3).abs() < 1e-12);
        assert_eq!(multiset_distance(&a, &b[..2]), f64::INFINITY);
    }

    #[test]
    fn division_guard() {
        let tol = Tolerances::default();
        assert!(matches!(
            torsion_from_eigenvalues(1, &[c(1.0 + 1e-9, 0.0)], &tol),
            Err(Error::UnitEigenvalueDivision(_))
        ));
    }
}
