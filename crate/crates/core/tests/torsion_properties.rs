use fibered_torsion::linalg::{self, CMat, C64};
use fibered_torsion::torsion::random::{
    random_chain_complex, random_invertible, random_matrix, random_short_exact_sequence,
    short_exact_from_parts,
};
use fibered_torsion::torsion::{
    homology, multiplicativity_check, multiplicativity_signs, pivoted_preimages,
    sign_determined_torsion, torsion, torsion_with_choices, BasedChainComplex, HomologyData,
    ShortExactSequence,
};
use fibered_torsion::Tolerances;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Coordinates matrix of `new` in terms of `old` modulo boundaries.
fn homology_change(new: &CMat, old: &CMat, boundaries: &CMat, tol: &Tolerances) -> CMat {
    let sys = linalg::hconcat(old.nrows(), &[old, boundaries]);
    let x = linalg::least_squares(&sys, new, tol);
    x.rows(0, old.ncols()).into_owned()
}

fn rechoose(
    rng: &mut ChaCha8Rng,
    c: &BasedChainComplex,
    hom: &HomologyData,
    tol: &Tolerances,
) -> (Vec<CMat>, Vec<CMat>) {
    let b = pivoted_preimages(c, tol);
    let mut pre = Vec::new();
    let mut lifts = Vec::new();
    for (k, data) in hom.degrees.iter().enumerate() {
        let r = b[k].ncols();
        let z = &data.cycles;
        pre.push(&b[k] * random_invertible(rng, r) + z * random_matrix(rng, z.ncols(), r));
        let h = c
            .homology_basis(k)
            .cloned()
            .unwrap_or_else(|| CMat::zeros(c.dims()[k], 0));
        let bd = &data.boundaries;
        lifts.push(&h + bd * random_matrix(rng, bd.ncols(), h.ncols()));
    }
    (pre, lifts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn torsion_independent_of_internal_choices(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chain_complex(&mut rng, 4, 6);
        let hom = homology(&c, &tol).unwrap();
        let reference = torsion(&c, &tol).unwrap();
        for _ in 0..3 {
            let (pre, lifts) = rechoose(&mut rng, &c, &hom, &tol);
            let other = torsion_with_choices(&c, &pre, &lifts, &tol).unwrap();
            prop_assert!(rel_err(other, reference) <= 1e-8, "{other} vs {reference}");
        }
    }

    #[test]
    fn basis_change_formula(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chain_complex(&mut rng, 4, 6);
        let hom = homology(&c, &tol).unwrap();
        let before = torsion(&c, &tol).unwrap();
        let mut changed = c.clone();
        let mut expected = before;
        for (k, data) in hom.degrees.iter().enumerate() {
            let n = c.dims()[k];
            let new_c = random_invertible(&mut rng, n);
            let mut factor = linalg::det(&new_c);
            changed = changed.with_reference_basis(k, new_c).unwrap();
            if data.dim() > 0 {
                let old_h = c.homology_basis(k).unwrap().clone();
                let bd = &data.boundaries;
                let new_h = &old_h * random_invertible(&mut rng, data.dim())
                    + bd * random_matrix(&mut rng, bd.ncols(), data.dim());
                factor /= linalg::det(&homology_change(&new_h, &old_h, bd, &tol));
                changed.set_homology_basis(k, Some(new_h)).unwrap();
            }
            if k % 2 == 0 { expected *= factor } else { expected /= factor }
        }
        let after = torsion(&changed, &tol).unwrap();
        prop_assert!(rel_err(after, expected) <= 1e-8, "{after} vs {expected}");
    }

    #[test]
    fn euler_characteristic_of_homology(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chain_complex(&mut rng, 4, 6);
        let hom = homology(&c, &tol).unwrap();
        prop_assert_eq!(hom.euler_characteristic(), c.euler_characteristic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn multiplicativity_on_twisted_sums(seed in any::<u64>(), split in any::<bool>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ses = random_short_exact_sequence(&mut rng, 4, 4, split, &tol).unwrap();
        let report = multiplicativity_check(&ses, &tol).unwrap();
        prop_assert!(report.residual <= 1e-7, "residual {}", report.residual);

        let hs = homology(&ses.sub, &tol).unwrap().dims();
        let ht = homology(&ses.total, &tol).unwrap().dims();
        let hq = homology(&ses.quotient, &tol).unwrap().dims();
        let signs = multiplicativity_signs(
            ses.sub.dims(), ses.total.dims(), ses.quotient.dims(), &hs, &ht, &hq,
        );
        prop_assert_eq!(signs, (report.alpha, report.epsilon));
        // The relation only holds with the signs included.
        if report.alpha ^ report.epsilon == 1 {
            let unsigned = report.tor_sub * report.tor_quotient * report.tor_long_exact;
            prop_assert!((report.tor_total - unsigned).norm() > 1e-6);
        }
    }
}

#[test]
fn acyclic_sign_determined_is_plain_torsion() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    while seen < 30 {
        let c = random_chain_complex(&mut rng, 4, 5);
        if homology(&c, &tol).unwrap().dims().iter().any(|&d| d > 0) {
            continue;
        }
        seen += 1;
        assert_eq!(
            torsion(&c, &tol).unwrap(),
            sign_determined_torsion(&c, &tol).unwrap()
        );
    }
}

#[test]
fn zero_sub_complex_gives_zero_residual() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let quotient = loop {
        let q = random_chain_complex(&mut rng, 3, 4);
        if q.degree_count() > 1 {
            break q;
        }
    };
    let n = quotient.degree_count();
    let sub =
        BasedChainComplex::chain(vec![0; n], (1..n).map(|_| CMat::zeros(0, 0)).collect()).unwrap();
    let ses = short_exact_from_parts(&mut rng, sub, quotient.clone(), true, &tol).unwrap();
    // Use the quotient's own homology bases on the total complex.
    let mut total = ses.total.clone();
    for k in 0..n {
        total
            .set_homology_basis(k, quotient.homology_basis(k).cloned())
            .unwrap();
    }
    let ses = ShortExactSequence { total, ..ses };
    let report = multiplicativity_check(&ses, &tol).unwrap();
    assert!(report.residual < 1e-12, "residual {}", report.residual);
}

#[test]
fn cochain_sequences_are_normalized_consistently() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let ses = random_short_exact_sequence(&mut rng, 3, 3, false, &tol).unwrap();
        let flip = |c: &BasedChainComplex| {
            let n = c.degree_count();
            let diffs: Vec<CMat> = c.differentials().iter().rev().cloned().collect();
            let mut out =
                BasedChainComplex::cochain(c.dims().iter().rev().copied().collect(), diffs)
                    .unwrap();
            for k in 0..n {
                out.set_homology_basis(n - 1 - k, c.homology_basis(k).cloned())
                    .unwrap();
            }
            out
        };
        let cochain = ShortExactSequence {
            sub: flip(&ses.sub),
            total: flip(&ses.total),
            quotient: flip(&ses.quotient),
            inclusions: ses.inclusions.iter().rev().cloned().collect(),
            projections: ses.projections.iter().rev().cloned().collect(),
        };
        let a = multiplicativity_check(&ses, &tol).unwrap();
        let b = multiplicativity_check(&cochain, &tol).unwrap();
        assert!((a.tor_total - b.tor_total).norm() < 1e-12);
        assert!(b.residual <= 1e-7);
    }
}
