use fibered_torsion::fibered::{figure_eight, lift_character_to_rep, trefoil, LiftSign};
use fibered_torsion::group::{
    adjoint, commutator_trace, evaluate_group_ring, fox_derivative, killing_form, random_sl2,
    random_su2, sl2, sl2_inverse, sl2_trace, twisted_cochain_complex, AdMatrix, Flavor,
    GroupPresentation, GroupRingElement, LieVector, Representation, Sl2Matrix, Word,
};
use fibered_torsion::linalg::{self, CMat, C64};
use fibered_torsion::torsion::{homology, BasedChainComplex};
use fibered_torsion::Tolerances;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_for(flavor: Flavor, r: &mut ChaCha8Rng) -> Sl2Matrix {
    match flavor {
        Flavor::Su2 => random_su2(r),
        Flavor::Sl2C => random_sl2(r),
    }
}

fn flavor_of(b: bool) -> Flavor {
    if b {
        Flavor::Su2
    } else {
        Flavor::Sl2C
    }
}

fn random_lie(r: &mut ChaCha8Rng, flavor: Flavor) -> LieVector {
    let mut coord = || C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    LieVector::new([coord(), coord(), coord()], flavor)
}

fn apply(m: &AdMatrix, v: &LieVector) -> LieVector {
    let out = m * nalgebra::Vector3::from(v.coords);
    LieVector::new([out[0], out[1], out[2]], v.flavor)
}

fn ad_norm(m: &AdMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_a_homomorphism(seed in any::<u64>(), su2 in any::<bool>()) {
        let flavor = flavor_of(su2);
        let mut r = rng(seed);
        let (g, h) = (random_for(flavor, &mut r), random_for(flavor, &mut r));
        let lhs = adjoint(&(g * h), flavor);
        let rhs = adjoint(&g, flavor) * adjoint(&h, flavor);
        prop_assert!(ad_norm(&(lhs - rhs)) <= 1e-10 * ad_norm(&lhs).max(1.0));
        prop_assert!((adjoint(&g, flavor).determinant() - 1.0).norm() <= 1e-10 * ad_norm(&lhs).powi(3).max(1.0));
    }

    #[test]
    fn killing_form_is_ad_invariant(seed in any::<u64>(), su2 in any::<bool>()) {
        let flavor = flavor_of(su2);
        let mut r = rng(seed);
        let g = random_for(flavor, &mut r);
        let (u, v) = (random_lie(&mut r, flavor), random_lie(&mut r, flavor));
        let ad = adjoint(&g, flavor);
        let before = killing_form(&u, &v);
        let after = killing_form(&apply(&ad, &u), &apply(&ad, &v));
        prop_assert!((before - after).norm() <= 1e-9 * before.norm().max(1.0), "{before} vs {after}");
    }

    #[test]
    fn killing_form_is_trace_form(seed in any::<u64>(), su2 in any::<bool>()) {
        // 4 Tr(uv) on 𝔰𝔩₂(ℂ); the quaternion normalization is Tr(uv).
        let flavor = flavor_of(su2);
        let scale = if su2 { 1.0 } else { 4.0 };
        let mut r = rng(seed);
        let (u, v) = (random_lie(&mut r, flavor), random_lie(&mut r, flavor));
        let trace_form = sl2_trace(&(u.to_matrix() * v.to_matrix())) * scale;
        prop_assert!((killing_form(&u, &v) - trace_form).norm() <= 1e-12);
    }

    #[test]
    fn commutator_trace_matches_matrices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_sl2(&mut r), random_sl2(&mut r));
        let direct = sl2_trace(&(a * b * sl2_inverse(&a) * sl2_inverse(&b)));
        let formula = commutator_trace(sl2_trace(&a), sl2_trace(&b), sl2_trace(&(a * b)));
        prop_assert!((direct - formula).norm() <= 1e-10 * direct.norm().max(1.0));
    }

    #[test]
    fn free_reduction_preserves_evaluation(seed in any::<u64>(), raw in proptest::collection::vec((0usize..3, any::<bool>()), 0..16)) {
        let tol = Tolerances::default();
        let mut r = rng(seed);
        let rep = Representation::new((0..3).map(|_| random_sl2(&mut r)).collect(), Flavor::Sl2C, &tol).unwrap();
        let names = ["a", "b", "c"];
        let text: String = raw.iter().map(|&(g, inv)| {
            let n = names[g];
            if inv { n.to_uppercase() } else { n.to_string() }
        }).collect::<Vec<_>>().join(" ");
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let w = Word::parse(&text, &names).unwrap();
        let reduced = w.reduce();
        for pair in reduced.letters.windows(2) {
            prop_assert!(!(pair[0].generator == pair[1].generator && pair[0].exponent == -pair[1].exponent));
        }
        let diff = rep.evaluate_word(&w) - rep.evaluate_word(&reduced);
        prop_assert!(diff.iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-9 * rep.evaluate_word(&w).norm().max(1.0));
    }

    #[test]
    fn fox_product_rule(raw_u in proptest::collection::vec((0usize..2, any::<bool>()), 0..8),
                        raw_v in proptest::collection::vec((0usize..2, any::<bool>()), 0..8)) {
        let to_word = |raw: &[(usize, bool)]| Word::from_letters(raw.iter().map(|&(g, inv)| {
            fibered_torsion::group::Letter::new(g, if inv { -1 } else { 1 })
        }).collect());
        let (u, v) = (to_word(&raw_u), to_word(&raw_v));
        for g in 0..2 {
            let lhs = fox_derivative(&(&u * &v), g);
            let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).left_mul(&u));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

fn knot_reps(seed: u64) -> Vec<(GroupPresentation, Representation)> {
    let tol = Tolerances::default();
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..4 {
        let x = C64::new(r.gen_range(-0.9..1.9), r.gen_range(-0.5..0.5));
        let fk = trefoil();
        let rep = lift_character_to_rep(&fk, &[x, x, x], LiftSign::Plus, &tol).unwrap();
        out.push((fk.presentation(), rep));
    }
    let fk = figure_eight();
    for x1 in [0.3, -0.7, 2.6] {
        let x1 = C64::new(x1, 0.2);
        let x2 = x1 / (x1 - 1.0);
        let rep = lift_character_to_rep(&fk, &[x1, x2, x1], LiftSign::Minus, &tol).unwrap();
        out.push((fk.presentation(), rep));
    }
    out
}

#[test]
fn fundamental_fox_identity_on_knot_relators() {
    for (p, rep) in knot_reps(3) {
        for r in &p.relators {
            let mut sum = AdMatrix::zeros();
            for g in 0..p.generator_count() {
                let d = evaluate_group_ring(&rep, &fox_derivative(r, g));
                sum += d * (adjoint(rep.image(g), rep.flavor) - AdMatrix::identity());
            }
            assert!(ad_norm(&sum) < 1e-9, "{}", ad_norm(&sum));
        }
    }
}

#[test]
fn fox_derivative_of_a_figure_eight_relator() {
    // ∂(t⁻¹ a t b⁻¹ a⁻¹)/∂a expanded by hand: t⁻¹ − t⁻¹ a t b⁻¹ a⁻¹.
    let p = figure_eight().presentation();
    let names = &p.generators;
    let r = Word::parse("T a t B A", names).unwrap();
    let expected = GroupRingElement::from_terms(vec![
        (1, Word::parse("T", names).unwrap()),
        (-1, Word::parse("T a t B A", names).unwrap()),
    ]);
    assert_eq!(fox_derivative(&r, 0), expected);
    // Under a representation the relator is trivial, so the sum is Ad_{t⁻¹} − I.
    let tol = Tolerances::default();
    let x1 = C64::new(0.4, 0.3);
    let rep = lift_character_to_rep(
        &figure_eight(),
        &[x1, x1 / (x1 - 1.0), x1],
        LiftSign::Plus,
        &tol,
    )
    .unwrap();
    let by_hand = adjoint(&sl2_inverse(rep.image(2)), rep.flavor) - AdMatrix::identity();
    let evaluated = evaluate_group_ring(&rep, &fox_derivative(&r, 0));
    assert!(ad_norm(&(evaluated - by_hand)) < 1e-10);
}

#[test]
fn group_ring_evaluation_basics() {
    let tol = Tolerances::default();
    let mut r = rng(4);
    let rep = Representation::new(
        vec![random_sl2(&mut r), random_sl2(&mut r)],
        Flavor::Sl2C,
        &tol,
    )
    .unwrap();
    assert_eq!(
        evaluate_group_ring(&rep, &GroupRingElement::one()),
        AdMatrix::identity()
    );
    let w = Word::generator(0) * Word::generator(1);
    let cancel = GroupRingElement::from_terms(vec![(1, w.clone()), (-1, w)]);
    assert!(cancel.is_zero());
    assert_eq!(evaluate_group_ring(&rep, &cancel), AdMatrix::zeros());
}

fn dims(p: &GroupPresentation, rep: &Representation) -> Vec<usize> {
    let tol = Tolerances::default();
    homology(&twisted_cochain_complex(p, rep, &tol).unwrap(), &tol)
        .unwrap()
        .dims()
}

fn hyperbolic_pair(r: &mut ChaCha8Rng) -> Vec<Sl2Matrix> {
    let g = random_sl2(r);
    let gi = sl2_inverse(&g);
    let zero = C64::new(0.0, 0.0);
    (0..2)
        .map(|_| {
            let l = C64::from_polar(
                r.gen_range(1.2..3.0),
                r.gen_range(0.0..std::f64::consts::TAU),
            );
            g * sl2(l, zero, zero, C64::new(1.0, 0.0) / l) * gi
        })
        .collect()
}

#[test]
fn torus_cohomology_at_hyperbolic_reps() {
    let tol = Tolerances::default();
    let mut r = rng(8);
    for _ in 0..10 {
        let rep = Representation::new(hyperbolic_pair(&mut r), Flavor::Sl2C, &tol).unwrap();
        assert_eq!(dims(&GroupPresentation::torus(), &rep), [1, 2, 1]);
    }
}

#[test]
fn abelian_torus_rep_has_one_dimensional_invariants() {
    let tol = Tolerances::default();
    let mut r = rng(9);
    for _ in 0..5 {
        // Elliptic and hyperbolic commuting pairs alike.
        let rep = Representation::new(hyperbolic_pair(&mut r), Flavor::Sl2C, &tol).unwrap();
        assert_eq!(dims(&GroupPresentation::torus(), &rep)[0], 1);
        let u = random_su2(&mut r);
        let ui = sl2_inverse(&u);
        let d = |t: f64| {
            let z = C64::from_polar(1.0, t);
            u * sl2(z, C64::new(0.0, 0.0), C64::new(0.0, 0.0), z.conj()) * ui
        };
        let rep = Representation::new(vec![d(0.7), d(1.9)], Flavor::Su2, &tol).unwrap();
        assert_eq!(dims(&GroupPresentation::torus(), &rep)[0], 1);
    }
}

#[test]
fn knot_exterior_cohomology() {
    for (p, rep) in knot_reps(11) {
        assert_eq!(dims(&p, &rep), [0, 1, 1]);
    }
}

#[test]
fn euler_characteristic_of_twisted_complexes() {
    let tol = Tolerances::default();
    let mut cases = knot_reps(12);
    let mut r = rng(12);
    cases.push((
        GroupPresentation::torus(),
        Representation::new(hyperbolic_pair(&mut r), Flavor::Sl2C, &tol).unwrap(),
    ));
    cases.push((
        GroupPresentation::free(&["a", "b"]),
        Representation::new(
            vec![random_sl2(&mut r), random_sl2(&mut r)],
            Flavor::Sl2C,
            &tol,
        )
        .unwrap(),
    ));
    for (p, rep) in cases {
        let c = twisted_cochain_complex(&p, &rep, &tol).unwrap();
        let chi = 3 * (1 - p.generator_count() as i64 + p.relators.len() as i64);
        assert_eq!(homology(&c, &tol).unwrap().euler_characteristic(), chi);
    }
}

/// The same complex in the right convention `h(uv) = Ad_{ρ(v)}⁻¹ h(u) + h(v)`,
/// built from suffixes instead of Fox derivatives.
fn right_convention_complex(p: &GroupPresentation, rep: &Representation) -> BasedChainComplex {
    let n = p.generator_count();
    let ad_inv = |m: &Sl2Matrix| adjoint(&sl2_inverse(m), rep.flavor);
    let mut d0 = CMat::zeros(3 * n, 3);
    for g in 0..n {
        let block = ad_inv(rep.image(g)) - AdMatrix::identity();
        d0.view_mut((3 * g, 0), (3, 3)).copy_from(&block);
    }
    let mut d1 = CMat::zeros(3 * p.relators.len(), 3 * n);
    for (i, r) in p.relators.iter().enumerate() {
        for k in 0..r.letters.len() {
            let l = r.letters[k];
            let suffix = Word::from_letters(r.letters[k + 1..].to_vec());
            let block = if l.exponent == 1 {
                ad_inv(&rep.evaluate_word(&suffix))
            } else {
                -ad_inv(&(sl2_inverse(rep.image(l.generator)) * rep.evaluate_word(&suffix)))
            };
            let mut view = d1.view_mut((3 * i, 3 * l.generator), (3, 3));
            view += block;
        }
    }
    BasedChainComplex::cochain(vec![3, 3 * n, 3 * p.relators.len()], vec![d0, d1]).unwrap()
}

#[test]
fn cohomology_dimensions_do_not_depend_on_the_cocycle_convention() {
    let tol = Tolerances::default();
    let mut cases = knot_reps(13);
    let mut r = rng(13);
    for _ in 0..3 {
        cases.push((
            GroupPresentation::torus(),
            Representation::new(hyperbolic_pair(&mut r), Flavor::Sl2C, &tol).unwrap(),
        ));
    }
    for (p, rep) in cases {
        let right = right_convention_complex(&p, &rep);
        right.check_dd(&tol).unwrap();
        assert_eq!(homology(&right, &tol).unwrap().dims(), dims(&p, &rep));
    }
}

#[test]
fn twisted_complex_rejects_non_representations() {
    let tol = Tolerances::default();
    let mut r = rng(14);
    let rep = Representation::new(
        vec![random_sl2(&mut r), random_sl2(&mut r), random_sl2(&mut r)],
        Flavor::Sl2C,
        &tol,
    )
    .unwrap();
    let err = twisted_cochain_complex(&trefoil().presentation(), &rep, &tol).unwrap_err();
    assert_eq!(err.code(), "RELATOR_VIOLATION");
    // A representation of the free group is never rejected.
    let free = GroupPresentation::free(&["a", "b", "t"]);
    let c = twisted_cochain_complex(&free, &rep, &tol).unwrap();
    assert_eq!(linalg::rank(&c.differentials()[0], &tol), 3);
}
