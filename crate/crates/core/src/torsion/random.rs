//! Seeded random based complexes and short exact sequences for testing.

use rand::Rng;

use super::{BasedChainComplex, HomologyData, ShortExactSequence};
use crate::error::Result;
use crate::linalg::{self, c, CMat, C64};
use crate::tolerance::Tolerances;

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_scalar(rng))
}

/// A well-conditioned random invertible matrix: unitary times a diagonal
/// with moduli in `[0.5, 2]`.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let q = random_matrix(rng, n, n).qr().q();
    let diag = CMat::from_fn(n, n, |i, j| {
        if i == j {
            C64::from_polar(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        } else {
            C64::new(0.0, 0.0)
        }
    });
    q * diag
}

/// Random chain complex with top degree at most `max_top` and at most
/// `max_dim` dimensions per degree, carrying random homology bases.
pub fn random_chain_complex<R: Rng + ?Sized>(
    rng: &mut R,
    max_top: usize,
    max_dim: usize,
) -> BasedChainComplex {
    let top = rng.gen_range(0..=max_top);
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_dim)).collect();
    random_complex_with_dims(rng, &dims)
}

/// Random chain complex with the given dimensions and random ranks.
pub fn random_complex_with_dims<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> BasedChainComplex {
    let n = dims.len();
    // ranks[k] = rank d_k : C_k → C_{k−1}; ranks[0] = 0.
    let mut ranks = vec![0usize; n + 1];
    for k in 1..n {
        let cap = (dims[k - 1] - ranks[k - 1]).min(dims[k]);
        ranks[k] = rng.gen_range(0..=cap);
    }
    complex_with_ranks(rng, dims, &ranks)
}

/// Random acyclic chain complex with the given dimensions, if one exists.
pub fn random_acyclic_complex<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
) -> Option<BasedChainComplex> {
    let n = dims.len();
    let mut ranks = vec![0usize; n + 1];
    for k in 1..n {
        ranks[k] = dims[k - 1].checked_sub(ranks[k - 1])?;
        if ranks[k] > dims[k] {
            return None;
        }
    }
    if n > 0 && ranks[n - 1] != dims[n - 1] {
        return None;
    }
    Some(complex_with_ranks(rng, dims, &ranks))
}

fn complex_with_ranks<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
    ranks: &[usize],
) -> BasedChainComplex {
    let n = dims.len();
    let r = |k: usize| ranks.get(k).copied().unwrap_or(0);
    // Adapted coordinates in degree k: [boundary part (r_{k+1}) | homology (h_k) | preimage part (r_k)].
    let changes: Vec<CMat> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let mut diffs = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let rk = r(k);
        let mut adapted = CMat::zeros(dims[k - 1], dims[k]);
        let start = dims[k] - rk;
        for j in 0..rk {
            adapted[(j, start + j)] =
                C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..6.3));
            for i in 0..j {
                adapted[(i, start + j)] = random_scalar(rng);
            }
        }
        let inv = changes[k]
            .clone()
            .try_inverse()
            .expect("invertible by construction");
        diffs.push(&changes[k - 1] * adapted * inv);
    }
    let mut complex =
        BasedChainComplex::chain(dims.to_vec(), diffs).expect("shapes are consistent");
    for k in 0..n {
        let h = dims[k] - r(k) - r(k + 1);
        if h == 0 {
            continue;
        }
        let b_part = r(k + 1);
        let mut adapted = CMat::zeros(dims[k], h);
        let mix = random_invertible(rng, h);
        adapted.view_mut((b_part, 0), (h, h)).copy_from(&mix);
        let noise = random_matrix(rng, b_part, h);
        adapted.view_mut((0, 0), (b_part, h)).copy_from(&noise);
        complex
            .set_homology_basis(k, Some(&changes[k] * adapted))
            .expect("shape is consistent");
    }
    complex
}

/// Replace every homology basis by a random basis of the same homology.
pub fn randomize_homology_bases<R: Rng + ?Sized>(
    rng: &mut R,
    c: &BasedChainComplex,
    hom: &HomologyData,
) -> BasedChainComplex {
    let mut out = c.clone();
    for (k, data) in hom.degrees.iter().enumerate() {
        let h = data.dim();
        if h == 0 {
            continue;
        }
        let mix = random_invertible(rng, h);
        let noise = random_matrix(rng, data.boundaries.ncols(), h);
        let basis = &data.representatives * mix + &data.boundaries * noise;
        out.set_homology_basis(k, Some(basis))
            .expect("shape is consistent");
    }
    out
}

/// `0 → C' → C → C'' → 0` where `C = C' ⊕ C''` as based spaces and the
/// differential of `C` is `[[d', f], [0, d'']]` with a random admissible
/// twisting `f` (zero when `split`).
pub fn random_short_exact_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    max_top: usize,
    max_dim: usize,
    split: bool,
    tol: &Tolerances,
) -> Result<ShortExactSequence> {
    let top = rng.gen_range(0..=max_top);
    let dims_sub: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_dim)).collect();
    let dims_quot: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_dim)).collect();
    let sub = random_complex_with_dims(rng, &dims_sub);
    let quotient = random_complex_with_dims(rng, &dims_quot);
    short_exact_from_parts(rng, sub, quotient, split, tol)
}

/// Twisted direct sum of two chain complexes of equal length.
pub fn short_exact_from_parts<R: Rng + ?Sized>(
    rng: &mut R,
    sub: BasedChainComplex,
    quotient: BasedChainComplex,
    split: bool,
    tol: &Tolerances,
) -> Result<ShortExactSequence> {
    let n = sub.degree_count();
    let ds = sub.dims().to_vec();
    let dq = quotient.dims().to_vec();
    let twists = if split || n < 2 {
        (1..n).map(|k| CMat::zeros(ds[k - 1], dq[k])).collect()
    } else {
        random_twists(rng, &sub, &quotient, tol)
    };
    let dims: Vec<usize> = (0..n).map(|k| ds[k] + dq[k]).collect();
    let mut diffs = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let mut d = CMat::zeros(dims[k - 1], dims[k]);
        d.view_mut((0, 0), (ds[k - 1], ds[k]))
            .copy_from(&sub.differentials()[k - 1]);
        d.view_mut((0, ds[k]), (ds[k - 1], dq[k]))
            .copy_from(&twists[k - 1]);
        d.view_mut((ds[k - 1], ds[k]), (dq[k - 1], dq[k]))
            .copy_from(&quotient.differentials()[k - 1]);
        diffs.push(d);
    }
    let inclusions: Vec<CMat> = (0..n)
        .map(|k| {
            let mut m = CMat::zeros(dims[k], ds[k]);
            m.view_mut((0, 0), (ds[k], ds[k])).fill_with_identity();
            m
        })
        .collect();
    let projections: Vec<CMat> = (0..n)
        .map(|k| {
            let mut m = CMat::zeros(dq[k], dims[k]);
            m.view_mut((0, ds[k]), (dq[k], dq[k])).fill_with_identity();
            m
        })
        .collect();
    let total = BasedChainComplex::chain(dims, diffs)?;
    let hom = super::homology(&total, tol)?;
    let total = randomize_homology_bases(rng, &total, &hom);
    Ok(ShortExactSequence {
        sub,
        total,
        quotient,
        inclusions,
        projections,
    })
}

/// Random solution of `d'_{k−1} f_k + f_{k−1} d''_k = 0` for all k.
fn random_twists<R: Rng + ?Sized>(
    rng: &mut R,
    sub: &BasedChainComplex,
    quotient: &BasedChainComplex,
    tol: &Tolerances,
) -> Vec<CMat> {
    let n = sub.degree_count();
    let ds = sub.dims();
    let dq = quotient.dims();
    // Unknown f_k (k = 1..n−1) occupies a column-major block of the vector.
    let sizes: Vec<usize> = (1..n).map(|k| ds[k - 1] * dq[k]).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let unknowns: usize = sizes.iter().sum();
    let rows: usize = (2..n).map(|k| ds[k - 2] * dq[k]).sum();
    let mut system = CMat::zeros(rows, unknowns);
    let mut row = 0;
    for k in 2..n {
        let block_rows = ds[k - 2] * dq[k];
        // vec(A X) = (I ⊗ A) vec(X)
        let a = &sub.differentials()[k - 2];
        let left = CMat::identity(dq[k], dq[k]).kronecker(a);
        system
            .view_mut((row, offsets[k - 1]), (block_rows, sizes[k - 1]))
            .copy_from(&left);
        // vec(X B) = (Bᵀ ⊗ I) vec(X)
        let b = &quotient.differentials()[k - 1];
        let right = b
            .transpose()
            .kronecker(&CMat::identity(ds[k - 2], ds[k - 2]));
        let mut target = system.view_mut((row, offsets[k - 2]), (block_rows, sizes[k - 2]));
        target += right;
        row += block_rows;
    }
    let solution = if unknowns == 0 {
        crate::linalg::CVec::zeros(0)
    } else if rows == 0 {
        crate::linalg::CVec::from_fn(unknowns, |_, _| random_scalar(rng))
    } else {
        let null = linalg::kernel(&system, tol);
        let coeffs = crate::linalg::CVec::from_fn(null.ncols(), |_, _| random_scalar(rng));
        null * coeffs
    };
    (1..n)
        .map(|k| {
            let o = offsets[k - 1];
            CMat::from_column_slice(ds[k - 1], dq[k], &solution.as_slice()[o..o + sizes[k - 1]])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::homology;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_complexes() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_chain_complex(&mut rng, 4, 5);
            let h = homology(&c, &tol).unwrap();
            assert_eq!(h.euler_characteristic(), c.euler_characteristic());
        }
    }

    #[test]
    fn twisted_sums_satisfy_dd() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let ses = random_short_exact_sequence(&mut rng, 3, 3, false, &tol).unwrap();
            ses.total.check_dd(&tol).unwrap();
        }
    }

    #[test]
    fn acyclic_generator_respects_euler_characteristic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(random_acyclic_complex(&mut rng, &[2, 3, 1]).is_some());
        assert!(random_acyclic_complex(&mut rng, &[2, 2, 1]).is_none());
    }
}
