//! Reidemeister torsion of finite based chain complexes over ℂ (and ℝ as a
//! subfield).
//!
//! A [`BasedChainComplex`] stores either a chain complex
//! `C_n → … → C_0` or a cochain complex `C^0 → … → C^N`. Cochain complexes
//! are converted to chain complexes before any torsion is evaluated by
//! setting `C_k = C^{N−k}`, so that the top cochain degree becomes chain
//! degree 0.
//!
//! With reference bases `c^i`, homology bases `h^i`, a choice `b^i ⊂ C_i`
//! such that `d_i(b^i)` is a basis of `B_{i−1}`, and lifts `h̃^i ⊂ Z_i`, the
//! torsion is
//!
//! ```text
//! tor(C) = ∏_i [ d_{i+1}(b^{i+1}) h̃^i b^i / c^i ]^{(−1)^{i+1}}
//! ```
//!
//! and the sign-determined torsion is `Tor(C) = (−1)^{|C|} tor(C)` with
//! `|C| = Σ_k α_k β_k` where `α_k`, `β_k` are partial sums of the dimensions
//! of `C_j` and `H_j` mod 2.

mod json;
mod multiplicativity;
pub mod random;

pub use json::{ComplexFixture, JsonScalar};
pub use multiplicativity::{
    multiplicativity_check, multiplicativity_signs, MultiplicativityReport, ShortExactSequence,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE};
use crate::tolerance::Tolerances;

/// An ordered list of vectors of a common ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<CVec>,
}

impl Basis {
    pub fn new(vectors: Vec<CVec>) -> Result<Self> {
        if let Some(first) = vectors.first() {
            let n = first.len();
            if vectors.iter().any(|v| v.len() != n) {
                return Err(Error::DimensionMismatch(
                    "basis vectors have different lengths".into(),
                ));
            }
        }
        Ok(Basis { vectors })
    }

    pub fn from_columns(m: &CMat) -> Self {
        Basis {
            vectors: m.column_iter().map(|c| c.into_owned()).collect(),
        }
    }

    pub fn standard(n: usize) -> Self {
        Self::from_columns(&CMat::identity(n, n))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    pub fn vectors(&self) -> &[CVec] {
        &self.vectors
    }

    /// Vectors as the columns of a matrix.
    pub fn to_matrix(&self) -> CMat {
        linalg::columns_to_matrix(self.ambient_dim(), &self.vectors)
    }

    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.vectors.swap(i, j);
        out
    }

    pub fn scaled(&self, i: usize, s: C64) -> Self {
        let mut out = self.clone();
        out.vectors[i] *= s;
        out
    }
}

/// `[a/b]`: the determinant of the matrix `p` with `a_i = Σ_j p_ij b_j`.
pub fn change_of_basis_det(a: &Basis, b: &Basis, tol: &Tolerances) -> Result<C64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "bases have {} and {} vectors",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Ok(ONE);
    }
    let n = a.len();
    if a.ambient_dim() != n || b.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} vectors in ambient dimensions {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let bm = b.to_matrix();
    if linalg::rank(&bm, tol) < n {
        return Err(Error::SingularBasis("second basis is dependent".into()));
    }
    Ok(linalg::det(&a.to_matrix()) / linalg::det(&bm))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `d_k : C_k → C_{k−1}`.
    #[default]
    Chain,
    /// `d^k : C^k → C^{k+1}`.
    Cochain,
}

/// A finite complex of coordinate spaces `C_k = F^{dims[k]}`.
///
/// `differentials[k]` connects degrees `k` and `k + 1`: for a chain complex
/// it is `d_{k+1} : C_{k+1} → C_k` (shape `dims[k] × dims[k+1]`), for a
/// cochain complex it is `d^k : C^k → C^{k+1}` (shape `dims[k+1] × dims[k]`).
///
/// Reference bases default to the standard coordinate bases. Homology bases
/// are given as columns in the coordinates of `C_k`, each lying in `Z_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasedChainComplex {
    direction: Direction,
    dims: Vec<usize>,
    differentials: Vec<CMat>,
    reference_bases: Vec<Option<CMat>>,
    homology_bases: Vec<Option<CMat>>,
}

impl BasedChainComplex {
    pub fn new(direction: Direction, dims: Vec<usize>, differentials: Vec<CMat>) -> Result<Self> {
        if dims.is_empty() {
            if !differentials.is_empty() {
                return Err(Error::DimensionMismatch(
                    "differentials given for an empty complex".into(),
                ));
            }
        } else if differentials.len() != dims.len() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            let (rows, cols) = match direction {
                Direction::Chain => (dims[k], dims[k + 1]),
                Direction::Cochain => (dims[k + 1], dims[k]),
            };
            if d.shape() != (rows, cols) {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} has shape {:?}, expected ({rows}, {cols})",
                    d.shape()
                )));
            }
        }
        let n = dims.len();
        Ok(BasedChainComplex {
            direction,
            dims,
            differentials,
            reference_bases: vec![None; n],
            homology_bases: vec![None; n],
        })
    }

    pub fn chain(dims: Vec<usize>, differentials: Vec<CMat>) -> Result<Self> {
        Self::new(Direction::Chain, dims, differentials)
    }

    pub fn cochain(dims: Vec<usize>, differentials: Vec<CMat>) -> Result<Self> {
        Self::new(Direction::Cochain, dims, differentials)
    }

    pub fn empty() -> Self {
        BasedChainComplex {
            direction: Direction::Chain,
            dims: Vec::new(),
            differentials: Vec::new(),
            reference_bases: Vec::new(),
            homology_bases: Vec::new(),
        }
    }

    pub fn with_homology_basis(mut self, degree: usize, basis: CMat) -> Result<Self> {
        self.check_basis_shape(degree, &basis)?;
        self.homology_bases[degree] = Some(basis);
        Ok(self)
    }

    pub fn with_reference_basis(mut self, degree: usize, basis: CMat) -> Result<Self> {
        self.check_basis_shape(degree, &basis)?;
        if basis.ncols() != self.dims[degree] {
            return Err(Error::DimensionMismatch(format!(
                "reference basis in degree {degree} needs {} vectors",
                self.dims[degree]
            )));
        }
        self.reference_bases[degree] = Some(basis);
        Ok(self)
    }

    pub fn set_homology_basis(&mut self, degree: usize, basis: Option<CMat>) -> Result<()> {
        if let Some(b) = &basis {
            self.check_basis_shape(degree, b)?;
        }
        self.homology_bases[degree] = basis;
        Ok(())
    }

    fn check_basis_shape(&self, degree: usize, basis: &CMat) -> Result<()> {
        match self.dims.get(degree) {
            None => Err(Error::DimensionMismatch(format!("no degree {degree}"))),
            Some(&n) if basis.nrows() != n => Err(Error::DimensionMismatch(format!(
                "basis vectors in degree {degree} must have length {n}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degree_count(&self) -> usize {
        self.dims.len()
    }

    pub fn differentials(&self) -> &[CMat] {
        &self.differentials
    }

    pub fn homology_basis(&self, degree: usize) -> Option<&CMat> {
        self.homology_bases.get(degree).and_then(|b| b.as_ref())
    }

    pub fn reference_basis(&self, degree: usize) -> Option<&CMat> {
        self.reference_bases.get(degree).and_then(|b| b.as_ref())
    }

    /// The map leaving degree `k` (`d_k` for chains, `d^k` for cochains).
    pub fn outgoing(&self, k: usize) -> Option<&CMat> {
        match self.direction {
            Direction::Chain => k.checked_sub(1).map(|j| &self.differentials[j]),
            Direction::Cochain => self.differentials.get(k),
        }
    }

    /// The map arriving in degree `k`.
    pub fn incoming(&self, k: usize) -> Option<&CMat> {
        match self.direction {
            Direction::Chain => self.differentials.get(k),
            Direction::Cochain => k.checked_sub(1).map(|j| &self.differentials[j]),
        }
    }

    /// Same complex re-indexed as a chain complex (`C_k = C^{N−k}`).
    pub fn to_chain_convention(&self) -> BasedChainComplex {
        match self.direction {
            Direction::Chain => self.clone(),
            Direction::Cochain => {
                let n = self.dims.len();
                let rev = |k: usize| n - 1 - k;
                BasedChainComplex {
                    direction: Direction::Chain,
                    dims: (0..n).map(|k| self.dims[rev(k)]).collect(),
                    differentials: (0..n.saturating_sub(1))
                        .map(|j| self.differentials[n - 2 - j].clone())
                        .collect(),
                    reference_bases: (0..n)
                        .map(|k| self.reference_bases[rev(k)].clone())
                        .collect(),
                    homology_bases: (0..n)
                        .map(|k| self.homology_bases[rev(k)].clone())
                        .collect(),
                }
            }
        }
    }

    /// Largest relative residual of `d ∘ d` over all degrees.
    pub fn dd_residual(&self) -> (usize, f64) {
        let mut worst = (0, 0.0);
        for k in 1..self.differentials.len() {
            let (first, second) = match self.direction {
                Direction::Chain => (&self.differentials[k], &self.differentials[k - 1]),
                Direction::Cochain => (&self.differentials[k - 1], &self.differentials[k]),
            };
            let prod = second * first;
            let scale = (linalg::frobenius(first) * linalg::frobenius(second)).max(1.0);
            let r = linalg::frobenius(&prod) / scale;
            if r > worst.1 {
                worst = (k, r);
            }
        }
        worst
    }

    pub fn check_dd(&self, tol: &Tolerances) -> Result<()> {
        let (degree, residual) = self.dd_residual();
        if residual > tol.identity {
            return Err(Error::NotAComplex { degree, residual });
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Cycles, boundaries and homology in one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    /// Orthonormal basis of `Z_k` as columns.
    pub cycles: CMat,
    /// Orthonormal basis of `B_k` as columns.
    pub boundaries: CMat,
    /// Orthonormal basis of the complement of `B_k` inside `Z_k`; the
    /// canonical lift of homology coordinates.
    pub representatives: CMat,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.representatives.ncols()
    }

    /// Lift homology coordinates (w.r.t. `representatives`) to a cycle.
    pub fn lift(&self, coords: &CVec) -> CVec {
        &self.representatives * coords
    }
}

/// Homology of a complex, indexed by the complex's own degrees.
#[derive(Debug, Clone)]
pub struct HomologyData {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyData {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let h = d.dim() as i64;
                if k % 2 == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum()
    }
}

pub fn homology(c: &BasedChainComplex, tol: &Tolerances) -> Result<HomologyData> {
    c.check_dd(tol)?;
    let mut degrees = Vec::with_capacity(c.dims.len());
    for (k, &n) in c.dims.iter().enumerate() {
        let cycles = match c.outgoing(k) {
            Some(d) => linalg::kernel(d, tol),
            None => CMat::identity(n, n),
        };
        let boundaries = match c.incoming(k) {
            Some(d) => linalg::image(d, tol),
            None => CMat::zeros(n, 0),
        };
        if boundaries.ncols() > cycles.ncols() {
            return Err(Error::NotAComplex {
                degree: k,
                residual: f64::NAN,
            });
        }
        // Boundaries expressed in the orthonormal cycle basis.
        let inside = cycles.adjoint() * &boundaries;
        let leak = linalg::frobenius(&(&boundaries - &cycles * &inside));
        if leak > tol.identity.max(1e-6) {
            return Err(Error::NotAComplex {
                degree: k,
                residual: leak,
            });
        }
        let comp = linalg::orthogonal_complement(&inside, cycles.ncols(), tol);
        let representatives = &cycles * comp;
        degrees.push(DegreeHomology {
            cycles,
            boundaries,
            representatives,
        });
    }
    Ok(HomologyData { degrees })
}

/// Parity bookkeeping for the sign-determined torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignData {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    pub complex_sign: u8,
}

/// Partial sums mod 2 of a dimension list.
pub(crate) fn parity_partial_sums(dims: &[usize]) -> Vec<u8> {
    let mut acc = 0usize;
    dims.iter()
        .map(|d| {
            acc += d;
            (acc % 2) as u8
        })
        .collect()
}

pub fn sign_data_from_dims(dims: &[usize], homology_dims: &[usize]) -> SignData {
    let alpha = parity_partial_sums(dims);
    let beta = parity_partial_sums(homology_dims);
    let complex_sign = alpha
        .iter()
        .zip(&beta)
        .fold(0u8, |acc, (a, b)| acc ^ (a & b));
    SignData {
        alpha,
        beta,
        complex_sign,
    }
}

/// Sign data of the chain-convention form of `c`.
pub fn sign_data(c: &BasedChainComplex, tol: &Tolerances) -> Result<SignData> {
    let chain = c.to_chain_convention();
    let h = homology(&chain, tol)?;
    Ok(sign_data_from_dims(&chain.dims, &h.dims()))
}

/// The deterministic choice of `b^k` (chain convention): standard basis
/// vectors selected by largest-pivot column selection on `d_k`.
pub fn pivoted_preimages(chain: &BasedChainComplex, tol: &Tolerances) -> Vec<CMat> {
    assert_eq!(chain.direction, Direction::Chain);
    chain
        .dims
        .iter()
        .enumerate()
        .map(|(k, &n)| match chain.outgoing(k) {
            Some(d) => {
                let piv = linalg::pivot_columns(d, tol);
                let id = CMat::identity(n, n);
                id.select_columns(&piv)
            }
            None => CMat::zeros(n, 0),
        })
        .collect()
}

/// Validated homology lifts of a chain-convention complex.
fn homology_lifts(
    chain: &BasedChainComplex,
    hom: &HomologyData,
    tol: &Tolerances,
) -> Result<Vec<CMat>> {
    let mut lifts = Vec::with_capacity(chain.dims.len());
    for (k, data) in hom.degrees.iter().enumerate() {
        let n = chain.dims[k];
        let dim_h = data.dim();
        let Some(h) = chain.homology_bases[k].clone() else {
            if dim_h > 0 {
                return Err(Error::MissingHomologyBasis { degree: k });
            }
            lifts.push(CMat::zeros(n, 0));
            continue;
        };
        if h.ncols() != dim_h {
            return Err(Error::InvalidHomologyBasis {
                degree: k,
                reason: format!("{} vectors for a {dim_h}-dimensional homology", h.ncols()),
            });
        }
        if dim_h == 0 {
            lifts.push(h);
            continue;
        }
        if let Some(d) = chain.outgoing(k) {
            let scale = linalg::frobenius(d).max(1.0) * linalg::frobenius(&h).max(1.0);
            let r = linalg::frobenius(&(d * &h)) / scale;
            if r > tol.identity {
                return Err(Error::InvalidHomologyBasis {
                    degree: k,
                    reason: format!("vectors are not cycles (residual {r:.3e})"),
                });
            }
        }
        let with_b = linalg::hconcat(n, &[&data.boundaries, &h]);
        if linalg::rank(&with_b, tol) != data.boundaries.ncols() + dim_h {
            return Err(Error::InvalidHomologyBasis {
                degree: k,
                reason: "classes are dependent modulo boundaries".into(),
            });
        }
        lifts.push(h);
    }
    Ok(lifts)
}

/// Torsion `tor(C, c, h)` with the deterministic internal choices.
pub fn torsion(c: &BasedChainComplex, tol: &Tolerances) -> Result<C64> {
    let chain = c.to_chain_convention();
    let hom = homology(&chain, tol)?;
    let lifts = homology_lifts(&chain, &hom, tol)?;
    let b = pivoted_preimages(&chain, tol);
    evaluate(&chain, &b, &lifts, tol)
}

/// Torsion with caller-supplied `b^k` and lifts `h̃^k`, both indexed in the
/// chain convention (see [`BasedChainComplex::to_chain_convention`]).
///
/// The lifts must represent the complex's homology bases modulo boundaries.
pub fn torsion_with_choices(
    c: &BasedChainComplex,
    preimages: &[CMat],
    lifts: &[CMat],
    tol: &Tolerances,
) -> Result<C64> {
    let chain = c.to_chain_convention();
    let hom = homology(&chain, tol)?;
    let reference = homology_lifts(&chain, &hom, tol)?;
    let n = chain.dims.len();
    if preimages.len() != n || lifts.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} preimage and lift blocks"
        )));
    }
    for k in 0..n {
        // A lift must differ from the reference basis by a boundary.
        let diff = &lifts[k] - &reference[k];
        if diff.ncols() > 0 {
            let b = &hom.degrees[k].boundaries;
            let resid = &diff - b * (b.adjoint() * &diff);
            if linalg::frobenius(&resid)
                > tol.identity.max(1e-7) * linalg::frobenius(&diff).max(1.0)
            {
                return Err(Error::InvalidHomologyBasis {
                    degree: k,
                    reason: "lift does not represent the homology basis".into(),
                });
            }
        }
        let expected = chain.outgoing(k).map_or(0, |d| linalg::rank(d, tol));
        if preimages[k].ncols() != expected {
            return Err(Error::DegenerateLift { degree: k });
        }
        if let Some(d) = chain.outgoing(k) {
            if linalg::rank(&(d * &preimages[k]), tol) != expected {
                return Err(Error::DegenerateLift { degree: k });
            }
        }
    }
    evaluate(&chain, preimages, lifts, tol)
}

fn evaluate(
    chain: &BasedChainComplex,
    preimages: &[CMat],
    lifts: &[CMat],
    tol: &Tolerances,
) -> Result<C64> {
    let mut value = ONE;
    for (k, &n) in chain.dims.iter().enumerate() {
        let image_part = match chain.incoming(k) {
            Some(d) => d * &preimages[k + 1],
            None => CMat::zeros(n, 0),
        };
        let m = linalg::hconcat(n, &[&image_part, &lifts[k], &preimages[k]]);
        if m.ncols() != n || linalg::rank(&m, tol) != n {
            return Err(Error::DegenerateLift { degree: k });
        }
        let mut factor = linalg::det(&m);
        if let Some(cref) = &chain.reference_bases[k] {
            let dc = linalg::det(cref);
            if dc.norm() == 0.0 {
                return Err(Error::SingularBasis(format!(
                    "reference basis in degree {k}"
                )));
            }
            factor /= dc;
        }
        if k % 2 == 0 {
            value /= factor;
        } else {
            value *= factor;
        }
    }
    Ok(value)
}

/// `Tor(C) = (−1)^{|C|} tor(C)`.
pub fn sign_determined_torsion(c: &BasedChainComplex, tol: &Tolerances) -> Result<C64> {
    let t = torsion(c, tol)?;
    let s = sign_data(c, tol)?;
    Ok(if s.complex_sign == 1 { -t } else { t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real, real};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn two_term(d: f64) -> BasedChainComplex {
        BasedChainComplex::chain(vec![1, 1], vec![from_real(1, 1, &[d])]).unwrap()
    }

    #[test]
    fn change_of_basis_identity_swap_scale() {
        let b = Basis::new(vec![
            CVec::from_vec(vec![real(1.0), real(2.0), real(0.0)]),
            CVec::from_vec(vec![real(0.0), real(1.0), real(3.0)]),
            CVec::from_vec(vec![real(1.0), real(0.0), real(1.0)]),
        ])
        .unwrap();
        let t = tol();
        assert!((change_of_basis_det(&b, &b, &t).unwrap() - ONE).norm() < 1e-12);
        assert!((change_of_basis_det(&b.swapped(0, 1), &b, &t).unwrap() + ONE).norm() < 1e-12);
        assert!(
            (change_of_basis_det(&b.scaled(0, real(2.0)), &b, &t).unwrap() - real(2.0)).norm()
                < 1e-12
        );
    }

    #[test]
    fn change_of_basis_errors() {
        let t = tol();
        let a = Basis::standard(2);
        let singular = Basis::new(vec![
            CVec::from_vec(vec![real(1.0), real(1.0)]),
            CVec::from_vec(vec![real(2.0), real(2.0)]),
        ])
        .unwrap();
        assert!(matches!(
            change_of_basis_det(&a, &singular, &t),
            Err(Error::SingularBasis(_))
        ));
        assert!(matches!(
            change_of_basis_det(&a, &Basis::standard(3), &t),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn homology_of_zero_differential() {
        let c = BasedChainComplex::chain(vec![2, 3], vec![CMat::zeros(2, 3)]).unwrap();
        assert_eq!(homology(&c, &tol()).unwrap().dims(), vec![2, 3]);
    }

    #[test]
    fn homology_of_isomorphism_vanishes() {
        assert_eq!(homology(&two_term(2.0), &tol()).unwrap().dims(), vec![0, 0]);
    }

    #[test]
    fn homology_rejects_non_complex() {
        let c = BasedChainComplex::chain(
            vec![1, 1, 1],
            vec![from_real(1, 1, &[1.0]), from_real(1, 1, &[1.0])],
        )
        .unwrap();
        assert!(matches!(
            homology(&c, &tol()),
            Err(Error::NotAComplex { .. })
        ));
    }

    #[test]
    fn torsion_of_two_term_complexes() {
        let t = tol();
        assert!((torsion(&two_term(1.0), &t).unwrap() - ONE).norm() < 1e-14);
        assert!((torsion(&two_term(2.0), &t).unwrap() - real(0.5)).norm() < 1e-14);
    }

    #[test]
    fn sign_determined_single_degree() {
        let t = tol();
        let c = BasedChainComplex::chain(vec![1], vec![])
            .unwrap()
            .with_homology_basis(0, CMat::identity(1, 1))
            .unwrap();
        assert!((torsion(&c, &t).unwrap() - ONE).norm() < 1e-14);
        assert!((sign_determined_torsion(&c, &t).unwrap() + ONE).norm() < 1e-14);
    }

    #[test]
    fn empty_complex_has_unit_torsion() {
        let t = tol();
        let c = BasedChainComplex::empty();
        assert_eq!(sign_determined_torsion(&c, &t).unwrap(), ONE);
    }

    #[test]
    fn acyclic_sign_determined_equals_plain() {
        let t = tol();
        let c = two_term(3.0);
        assert_eq!(
            torsion(&c, &t).unwrap(),
            sign_determined_torsion(&c, &t).unwrap()
        );
    }

    #[test]
    fn missing_homology_basis_is_reported() {
        let c = BasedChainComplex::chain(vec![2, 3], vec![CMat::zeros(2, 3)]).unwrap();
        assert!(matches!(
            torsion(&c, &tol()),
            Err(Error::MissingHomologyBasis { .. })
        ));
    }

    #[test]
    fn boundary_is_not_a_homology_basis() {
        // 0 → F² → F² → 0 with d = diag(1, 0): H_0 and H_1 are one-dimensional.
        let d = from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let c = BasedChainComplex::chain(vec![2, 2], vec![d])
            .unwrap()
            .with_homology_basis(0, from_real(2, 1, &[1.0, 0.0]))
            .unwrap()
            .with_homology_basis(1, from_real(2, 1, &[0.0, 1.0]))
            .unwrap();
        assert!(matches!(
            torsion(&c, &tol()),
            Err(Error::InvalidHomologyBasis { degree: 0, .. })
        ));
    }

    #[test]
    fn cochain_normalization_reverses_degrees() {
        let d0 = from_real(2, 1, &[1.0, 2.0]);
        let c = BasedChainComplex::cochain(vec![1, 2], vec![d0.clone()]).unwrap();
        let chain = c.to_chain_convention();
        assert_eq!(chain.dims(), &[2, 1]);
        assert_eq!(chain.differentials()[0], d0);
        assert_eq!(chain.direction(), Direction::Chain);
    }

    #[test]
    fn sign_bookkeeping() {
        let s = sign_data_from_dims(&[3, 9, 6], &[0, 1, 1]);
        assert_eq!(s.alpha, vec![1, 0, 0]);
        assert_eq!(s.beta, vec![0, 1, 0]);
        assert_eq!(s.complex_sign, 0);
    }
}
