//! Finitely presented groups, SU(2) / SL2(ℂ) representations and twisted
//! cochain complexes of presentation 2-complexes.
//!
//! Cochains follow the left convention: a 1-cochain is determined by its
//! values on generators and extends to words by
//! `h(uv) = h(u) + Ad_{ρ(u)} h(v)`; the coboundary of `v ∈ 𝔤` is
//! `g ↦ Ad_{ρ(g)} v − v`.

mod fox;
mod lie;
mod rep;
mod word;

pub use fox::{evaluate_group_ring, fox_derivative, GroupRingElement};
pub use lie::{adjoint, basis_matrices, killing_form, AdMatrix, LieVector};
pub use rep::{
    normalize_det, random_sl2, random_su2, sl2, sl2_det, sl2_inverse, sl2_norm, sl2_trace, Flavor,
    Representation, Sl2Matrix,
};
pub use word::{GroupPresentation, Letter, Word, WordDisplay};

use crate::error::Result;
use crate::linalg::{CMat, C64, ONE};
use crate::tolerance::Tolerances;
use crate::torsion::BasedChainComplex;

fn put_block(m: &mut CMat, row: usize, col: usize, block: &AdMatrix) {
    for i in 0..3 {
        for j in 0..3 {
            m[(row + i, col + j)] = block[(i, j)];
        }
    }
}

/// `d⁰ : 𝔤 → 𝔤^{#gens}`, block `g` equal to `Ad_{ρ(g)} − I`.
pub fn coboundary_zero(rep: &Representation) -> CMat {
    let n = rep.generator_count();
    let mut d0 = CMat::zeros(3 * n, 3);
    for g in 0..n {
        let block = adjoint(rep.image(g), rep.flavor) - AdMatrix::identity();
        put_block(&mut d0, 3 * g, 0, &block);
    }
    d0
}

/// Value on an arbitrary word of the cocycle with generator values given by
/// the 3-blocks of `h`.
pub fn cocycle_on_word(rep: &Representation, h: &CMat, w: &Word) -> CMat {
    let mut out = CMat::zeros(3, h.ncols());
    for g in 0..rep.generator_count() {
        let d = fox_derivative(w, g);
        if d.is_zero() {
            continue;
        }
        let m = evaluate_group_ring(rep, &d);
        let m = CMat::from_fn(3, 3, |i, j| m[(i, j)]);
        out += m * h.rows(3 * g, 3);
    }
    out
}

/// Cochain complex `𝔤 → 𝔤^{#gens} → 𝔤^{#relators}` of the presentation
/// 2-complex with coefficients twisted by `Ad ∘ ρ`.
pub fn twisted_cochain_complex(
    p: &GroupPresentation,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<BasedChainComplex> {
    rep.check_relators(p, tol)?;
    let n = p.generator_count();
    let r = p.relators.len();
    let d0 = coboundary_zero(rep);
    let mut d1 = CMat::zeros(3 * r, 3 * n);
    for (i, rel) in p.relators.iter().enumerate() {
        for g in 0..n {
            let block = evaluate_group_ring(rep, &fox_derivative(rel, g));
            put_block(&mut d1, 3 * i, 3 * g, &block);
        }
    }
    let c = BasedChainComplex::cochain(vec![3, 3 * n, 3 * r], vec![d0, d1])?;
    c.check_dd(tol)?;
    Ok(c)
}

/// `Tr[A, B]` from `(Tr A, Tr B, Tr AB)`.
pub fn commutator_trace(x1: C64, x2: C64, x3: C64) -> C64 {
    x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - 2.0 * ONE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::torsion::homology;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn commutator_trace_values() {
        let two = c(2.0, 0.0);
        assert_eq!(commutator_trace(two, two, two), two);
        assert_eq!(
            commutator_trace(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
            -two
        );
    }

    #[test]
    fn free_group_cohomology() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = GroupPresentation::free(&["a", "b"]);
        let rep = Representation::new(
            vec![random_sl2(&mut rng), random_sl2(&mut rng)],
            Flavor::Sl2C,
            &tol,
        )
        .unwrap();
        let c = twisted_cochain_complex(&p, &rep, &tol).unwrap();
        assert_eq!(homology(&c, &tol).unwrap().dims(), vec![0, 3, 0]);
    }

    #[test]
    fn relator_violation_is_reported() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = Representation::new(
            vec![random_sl2(&mut rng), random_sl2(&mut rng)],
            Flavor::Sl2C,
            &tol,
        )
        .unwrap();
        assert!(matches!(
            twisted_cochain_complex(&GroupPresentation::torus(), &rep, &tol),
            Err(crate::Error::RelatorViolation { index: 0, .. })
        ));
    }

    #[test]
    fn cocycle_extension_is_left_convention() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rep = Representation::new(
            vec![random_sl2(&mut rng), random_sl2(&mut rng)],
            Flavor::Sl2C,
            &tol,
        )
        .unwrap();
        let h = crate::torsion::random::random_matrix(&mut rng, 6, 1);
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let u = Word::parse("a B", &names).unwrap();
        let v = Word::parse("b b a", &names).unwrap();
        let lhs = cocycle_on_word(&rep, &h, &(&u * &v));
        let ad = adjoint(&rep.evaluate_word(&u), rep.flavor);
        let ad = CMat::from_fn(3, 3, |i, j| ad[(i, j)]);
        let rhs = cocycle_on_word(&rep, &h, &u) + ad * cocycle_on_word(&rep, &h, &v);
        assert!((lhs - rhs).norm() < 1e-10);
    }
}
