//! Known answers: classical identities and frozen classification values.

use std::sync::Arc;

use graded_identities::classify::{classify, witness_nonstrong, NonStrongWitness, WitnessKind};
use graded_identities::cohomology::Cocycle2;
use graded_identities::graded_algebra::{BasisAlgebra, GradedAlgebra, Presentation};
use graded_identities::grassmann::{envelope_identity_check, Z2Factorization};
use graded_identities::groups::{FiniteGroup, Subgroup};
use graded_identities::polynomials::{good_permutation_scalar, is_identity, GradedPolynomial, GradedVariable};
use graded_identities::sample::fixtures;
use graded_identities::scalars::{cyclotomic_polynomial, CycScalar};

type Row = (&'static str, [bool; 3], Option<bool>, [bool; 4], &'static [u8], &'static [usize]);

/// name, [connected, normal, cosets equal], invariant class,
/// [crossed product, division, strongly prime, division form], failed, normal tuple
const CLASSIFICATION: &[Row] = &[
    ("z2_e_e_sigma", [true, true, false], Some(true), [false, false, false, false], &[2], &[0, 1, 1]),
    ("z2_e_sigma_sigma", [true, true, false], Some(true), [false, false, false, false], &[2], &[0, 1, 1]),
    ("z2_e_sigma", [true, true, true], Some(true), [true, false, true, true], &[], &[0, 1]),
    ("z2_r2", [true, true, true], Some(true), [true, false, true, true], &[], &[0, 0, 1, 1]),
    ("z3_degenerate", [true, true, false], Some(true), [false, false, false, false], &[2], &[0, 1]),
    ("klein_twisted", [true, true, true], Some(true), [true, true, true, true], &[], &[0]),
    ("z2xz4_twisted", [true, true, true], Some(true), [true, true, true, true], &[], &[0]),
    ("d4_rotations", [true, true, true], Some(true), [true, false, true, true], &[], &[0, 4]),
    ("d4_klein_twisted", [true, true, true], Some(true), [true, false, true, true], &[], &[0, 1]),
    ("s3_non_normal", [true, false, true], None, [true, false, false, false], &[1], &[0, 1, 2]),
    ("klein_half_unequal", [true, true, false], Some(true), [false, false, false, false], &[2], &[0, 1, 1]),
    ("z3sq_swap_twisted", [true, true, true], Some(false), [true, false, false, false], &[3], &[0, 9]),
];

#[test]
fn frozen_classification_table() {
    let all = fixtures::all();
    assert_eq!(all.len(), CLASSIFICATION.len());
    for ((name, p), row) in all.iter().zip(CLASSIFICATION) {
        assert_eq!(*name, row.0);
        let r = classify(p).unwrap();
        assert_eq!([r.connected, r.h_normal, r.cosets_equal], row.1, "{name}");
        assert_eq!(r.class_g_invariant, row.2, "{name}");
        assert_eq!(
            [r.crossed_product, r.graded_division, r.strongly_verbally_prime, r.division_form_exists],
            row.3,
            "{name}"
        );
        assert_eq!(r.failed_conditions(), row.4, "{name}");
        assert_eq!(r.presentation.tuple(), row.5, "{name}");
        assert!(r.verbally_prime && r.is_consistent(), "{name}");
    }
}

fn ungraded_m(m: usize) -> GradedAlgebra {
    let g = Arc::new(FiniteGroup::cyclic(1));
    GradedAlgebra::new(&Presentation::new(Cocycle2::trivial(Subgroup::trivial(g), 1), vec![0; m]).unwrap())
}

fn standard(n: usize) -> GradedPolynomial {
    let vars: Vec<GradedVariable> = (0..n as u32).map(|id| GradedVariable { id, degree: 0 }).collect();
    let ids: Vec<u32> = (0..n as u32).collect();
    GradedPolynomial::monomial(1, vars).alternate(&ids).unwrap()
}

#[test]
fn amitsur_levitzki() {
    let m2 = ungraded_m(2);
    assert_eq!(standard(4).monomials().len(), 24);
    assert!(is_identity(&standard(4), &m2).unwrap().identity);
    assert!(!is_identity(&standard(3), &m2).unwrap().identity);
    let m3 = ungraded_m(3);
    assert!(!is_identity(&standard(5), &m3).unwrap().identity);
}

#[test]
fn grassmann_identities() {
    // E = envelope of F[Z2] graded by Z2 x {e}
    let (big, fac) = Z2Factorization::direct_product(Arc::new(FiniteGroup::cyclic(1)));
    let h = Subgroup::whole(big);
    let a = GradedAlgebra::new(&Presentation::new(Cocycle2::trivial(h, 1), vec![0]).unwrap());
    let small = fac.small().clone();
    let triple = GradedPolynomial::parse_terms(
        &small,
        1,
        &["1 x0:e x1:e x2:e", "-1 x1:e x0:e x2:e", "-1 x2:e x0:e x1:e", "1 x2:e x1:e x0:e"],
    )
    .unwrap();
    let comm = GradedPolynomial::parse_terms(&small, 1, &["1 x0:e x1:e", "-1 x1:e x0:e"]).unwrap();
    assert!(envelope_identity_check(&triple, &a, &fac, 3).unwrap());
    assert!(!envelope_identity_check(&comm, &a, &fac, 2).unwrap());
    assert!(envelope_identity_check(&triple, &a, &fac, 2).is_err());
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
}

#[test]
fn klein_binomial_scalars() {
    let c = fixtures::klein_twisted().cocycle().clone();
    assert_eq!(c.enumerate_binomials(2).len(), 4 + 32);
    assert_eq!(c.enumerate_binomials(4).len(), 6564);
    // u_a u_b = -u_b u_a for the two generators, u_x u_x = +-1 otherwise
    let (a, b) = (1, 2);
    let alt = |x, y| c.binomial_alpha_exponent(&[x, y], &[1, 0]).unwrap();
    assert_eq!(alt(a, b), 1);
    assert_eq!(alt(a, a), 0);
    assert_eq!(alt(b, a + b), 1);
}

#[test]
fn good_permutation_scalar_on_klein() {
    let p = fixtures::klein_twisted();
    let vars = [GradedVariable { id: 0, degree: 1 }, GradedVariable { id: 1, degree: 2 }];
    let s = good_permutation_scalar(&vars, &[0, 1], &[1, 0], &p).unwrap();
    assert_eq!(s, CycScalar::from_integer(2, -1));
    let t = good_permutation_scalar(&vars, &[0, 1], &[0, 1], &p).unwrap();
    assert!(t.is_one());
}

#[test]
fn frozen_witness_shapes() {
    let shape = |p: &Presentation| match witness_nonstrong(p).unwrap() {
        Some(NonStrongWitness::Polynomials(w)) => Some((w.kind, w.f.degree(), w.f.monomials().len())),
        _ => None,
    };
    assert_eq!(shape(&fixtures::z2_e_sigma_sigma()), Some((WitnessKind::BlockSizes, 13, 120)));
    assert_eq!(shape(&fixtures::s3_non_normal()), Some((WitnessKind::NonNormal, 11, 6)));
    assert_eq!(shape(&fixtures::z3_degenerate()).map(|s| s.0), Some(WitnessKind::Degenerate));
    assert!(matches!(
        witness_nonstrong(&fixtures::z3sq_swap_twisted()).unwrap(),
        Some(NonStrongWitness::Cohomological { g: 9, .. })
    ));
    assert_eq!(witness_nonstrong(&fixtures::d4_klein_twisted()).unwrap(), None);
}

#[test]
fn component_dimensions() {
    // M3 with (e, s, s): A_e = 1 + 4, A_s = 2 + 2
    let a = GradedAlgebra::new(&fixtures::z2_e_sigma_sigma());
    assert_eq!((a.dim(), a.component_dim(0), a.component_dim(1)), (9, 5, 4));
    let d4 = GradedAlgebra::new(&fixtures::d4_rotations());
    assert_eq!(d4.dim(), 16);
    assert!((0..8).all(|g| d4.component_dim(g) == 2));
}
