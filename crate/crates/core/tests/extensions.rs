mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use fourfold_core::chain_complex::LambdaComplex;
use fourfold_core::extensions::{
    baer_sum, em_torsion, em_torsion_closed_form, ext1, ext_vanishing_check, hom_lambda, pi2_extension,
    pi2_sequence, recover_m, EmFamily, ExtClass, Extension, FPModule, PsiChase,
};
use fourfold_core::group_homology::{bar_homology_oracle_with_budget, periodic_resolution, resolution_for, HomologyConfig};
use fourfold_core::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
use fourfold_core::linalg::{kernel_basis, AbelianInvariants, IntMatrix, Lattice};
use fourfold_core::manifolds::{
    cp2_complex, cyclic_presentation_complex, klein_four_presentation_complex, s4_complex, torus4_complex,
    wedge_sphere,
};
use fourfold_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn set(v: &[i64]) -> BTreeSet<BigInt> {
    v.iter().map(|&x| big(x)).collect()
}

/// `d_1 = t-1, d_2 = 0, d_3 = t-1, d_4 = N` over `Z[Z/2]`.
fn z2_test_complex() -> LambdaComplex {
    let g = Group::cyclic(2).unwrap();
    let t = RingElement::generator(&g, 0);
    let one = RingElement::one(&g);
    let s = |x: RingElement| LambdaMatrix::scalar(x);
    LambdaComplex::new(
        g.clone(),
        OrientationChar::trivial(&g),
        vec![1; 5],
        vec![s(&t - &one), LambdaMatrix::zeros(1, 1), s(&t - &one), s(&t + &one)],
    )
    .unwrap()
}

#[test]
fn hom_examples() {
    for p in [2u64, 3, 4] {
        let g = Group::cyclic(p).unwrap();
        let n = FPModule::trivial_cyclic(&g, 5).unwrap();
        let h = hom_lambda(&FPModule::free(&g, 1).unwrap(), &n).unwrap();
        assert_eq!(h.invariants, n.invariants());
    }
    let c2 = Group::cyclic(2).unwrap();
    let sign = FPModule::twisted_integers(&c2, &OrientationChar::new(&c2, &[-1]).unwrap()).unwrap();
    let triv = FPModule::trivial_cyclic(&c2, 0).unwrap();
    assert!(hom_lambda(&triv, &sign).unwrap().invariants.is_trivial());
}

#[test]
fn hom_contains_identity() {
    let g = Group::product(&[2, 2]).unwrap();
    let modules = [
        FPModule::trivial_cyclic(&g, 0).unwrap(),
        FPModule::trivial_cyclic(&g, 3).unwrap(),
        FPModule::free(&g, 2).unwrap(),
        FPModule::new(g.clone(), klein_four_presentation_complex().boundary(1)).unwrap(),
    ];
    let e = g.index_of(&g.identity());
    for m in modules {
        let h = hom_lambda(&m, &m).unwrap();
        let dim = m.model().dim();
        let a = m.num_generators();
        let n = g.order().unwrap() as usize;
        let mut identity = vec![BigInt::default(); a * dim];
        for i in 0..a {
            identity[i * dim + i * n + e] = big(1);
        }
        let lattice = Lattice::from_generators(a * dim, h.generators.clone());
        assert!(lattice.contains(&identity));
    }
}

#[test]
fn ext_examples() {
    for p in [2u64, 3, 5, 7] {
        let g = Group::cyclic(p).unwrap();
        let z = FPModule::trivial_cyclic(&g, 0).unwrap();
        assert!(ext1(&FPModule::free(&g, 2).unwrap(), &z).unwrap().is_trivial());
        assert!(ext1(&z, &z).unwrap().is_trivial());
        let zp = FPModule::trivial_cyclic(&g, p).unwrap();
        let expected = AbelianInvariants::cyclic(p);
        assert_eq!(ext1(&z, &zp).unwrap(), expected);
        // H^1(Z/p; Z/p) from the bar complex: Hom(H_1, Z/p) ⊕ Ext(H_0, Z/p) = Z/p
        let h1 = bar_homology_oracle_with_budget(&g, &OrientationChar::trivial(&g), 1, 100_000).unwrap();
        assert_eq!(h1, expected);
    }
    let a = Group::cyclic(2).unwrap();
    let b = Group::cyclic(3).unwrap();
    let err = ext1(&FPModule::free(&a, 1).unwrap(), &FPModule::free(&b, 1).unwrap());
    assert!(matches!(err, Err(Error::GroupMismatch(_))));
}

#[test]
fn pi2_examples() {
    assert!(pi2_extension(&s4_complex()).unwrap().is_trivial());
    assert!(pi2_extension(&cp2_complex()).unwrap().is_trivial());
    let c = z2_test_complex();
    let seq = pi2_sequence(&c).unwrap();
    assert!(seq.exact);
    assert_eq!(seq.kernel_d2, AbelianInvariants::free(2));
    assert_eq!(seq.h2, AbelianInvariants::free(1));
    assert_eq!(seq.cokernel_d3, AbelianInvariants::free(1));
    assert_eq!(seq.middle, AbelianInvariants::free(3));
    assert!(pi2_extension(&c).unwrap().is_trivial());
    assert!(seq.splits_on_invariants());
    assert!(matches!(pi2_extension(&torus4_complex()), Err(Error::InfiniteGroup(_))));
    let short = cyclic_presentation_complex(3).unwrap();
    assert!(matches!(pi2_extension(&short), Err(Error::WrongLength { .. })));
}

#[test]
fn pi2_triviality_matches_splitting() {
    for c in [s4_complex(), cp2_complex(), z2_test_complex()] {
        let seq = pi2_sequence(&c).unwrap();
        assert!(seq.exact);
        assert_eq!(pi2_extension(&c).unwrap().is_trivial(), seq.splits_on_invariants());
    }
    // invariants cannot see these classes: the middle term is Z^p either way
    for p in [2, 3, 5, 7] {
        let c = periodic_resolution(p, 4).unwrap().complex().clone();
        let seq = pi2_sequence(&c).unwrap();
        assert!(seq.exact);
        assert!(seq.splits_on_invariants());
        assert!(!pi2_extension(&c).unwrap().is_trivial());
    }
}

#[test]
fn baer_sum_identities_and_law() {
    let c = periodic_resolution(7, 4).unwrap().complex().clone();
    let x = pi2_extension(&c).unwrap();
    assert!(!x.is_trivial());
    let ctx = x.context().clone();
    assert_eq!(ctx.ext_invariants(), AbelianInvariants::cyclic(7));
    let zero = ExtClass::zero(ctx.clone());
    assert!(baer_sum(&x, &zero).unwrap().equals(&x).unwrap());
    assert!(baer_sum(&x, &x.negate()).unwrap().is_trivial());
    let class = |m: i64| Extension::pushout(&x, &big(m)).unwrap().class_in(ctx.clone()).unwrap();
    for m in -3..=3 {
        let e = Extension::pushout(&x, &big(m)).unwrap();
        assert!(e.verify(&ctx).unwrap());
        for n in -3..=3 {
            assert!(baer_sum(&class(m), &class(n)).unwrap().equals(&class(m + n)).unwrap());
        }
    }
    let other = pi2_extension(&periodic_resolution(5, 4).unwrap().complex().clone()).unwrap();
    assert_eq!(baer_sum(&x, &other).unwrap_err(), Error::ContextMismatch);
}

#[test]
fn em_examples() {
    let t4 = IntMatrix::zeros(6, 4);
    assert_eq!(
        em_torsion(&t4, &big(3)),
        AbelianInvariants::from_cyclic_orders(6, vec![big(3); 4])
    );
    assert!(em_torsion(&t4, &big(1)).torsion.is_empty());
    let a = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]);
    let zero = em_torsion(&a, &big(0));
    let fam = EmFamily::from_d3(&a);
    assert_eq!((fam.a_free, fam.b), (1, 1));
    assert_eq!(zero.torsion, vec![big(2), big(6)]);
    // Z^cols ⊕ coker A: the k diagonal columns stay free as well
    assert_eq!(zero.free_rank, fam.a_free + fam.deltas.len() + fam.b);
}

#[test]
fn recover_examples() {
    let t4 = EmFamily { a_free: 4, deltas: vec![], b: 6 };
    let three = AbelianInvariants::from_cyclic_orders(6, vec![big(3); 4]);
    assert_eq!(recover_m(&three, &t4).unwrap(), set(&[3]));
    assert_eq!(recover_m(&AbelianInvariants::free(6), &t4).unwrap(), set(&[0, 1]));
    let fam = EmFamily { a_free: 1, deltas: vec![big(2)], b: 0 };
    let twos = AbelianInvariants::from_cyclic_orders(0, vec![big(2), big(2)]);
    assert_eq!(recover_m(&twos, &fam).unwrap(), set(&[2]));
    let none = EmFamily { a_free: 0, deltas: vec![big(1)], b: 0 };
    assert!(matches!(recover_m(&twos, &none), Err(Error::HypothesisViolated(_))));
}

#[test]
fn torus_round_trip() {
    let c = torus4_complex();
    let d3 = c.augmented_boundary(3);
    let fam = EmFamily::from_d3(&d3);
    assert_eq!(fam, EmFamily { a_free: 4, deltas: vec![], b: 6 });
    for m in -8i64..=8 {
        let got = recover_m(&em_torsion(&d3, &big(m)), &fam).unwrap();
        if m.abs() >= 2 {
            assert_eq!(got, set(&[m.abs()]));
        } else {
            assert_eq!(got, set(&[0, 1]));
        }
    }
}

#[test]
fn closed_form_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ede4);
    for _ in 0..250 {
        let r = rng.gen_range(1..=6);
        let c = rng.gen_range(1..=6);
        let a = common::random_matrix(&mut rng, r, c, 9);
        let m = big(rng.gen_range(-12..=12));
        assert_eq!(em_torsion(&a, &m), em_torsion_closed_form(&a, &m), "{a:?} m={m}");
    }
}

#[test]
fn ext_vanishing_on_presentation_complexes() {
    let mut complexes = vec![klein_four_presentation_complex()];
    for p in 2..=7 {
        complexes.push(cyclic_presentation_complex(p).unwrap());
    }
    for k in complexes {
        assert!(ext_vanishing_check(&k).unwrap());
        let wedged = wedge_sphere(&k).unwrap();
        assert!(ext_vanishing_check(&wedged).unwrap());
        assert!(ext_vanishing_check(&wedge_sphere(&wedged).unwrap()).unwrap());
    }
    let infinite = LambdaComplex::circle(1).unwrap();
    assert!(matches!(ext_vanishing_check(&infinite), Err(Error::InfiniteGroup(_))));
}

/// Distinct classes hit by ψ on all 0/1 combinations of a basis of 4-cycles.
fn psi_image(group: &Group, k: &LambdaComplex, w: &OrientationChar) -> Vec<ExtClass> {
    let r = resolution_for(group, 5, &HomologyConfig::default()).unwrap();
    let chase = PsiChase::new(&r, k, w).unwrap();
    let cycles = kernel_basis(&r.complex().boundary(4).augment(w));
    let mut classes: Vec<ExtClass> = Vec::new();
    for mask in 0..1u32 << cycles.cols() {
        let mut z = vec![BigInt::default(); cycles.rows()];
        for j in (0..cycles.cols()).filter(|j| mask >> j & 1 == 1) {
            for (zi, cj) in z.iter_mut().zip(cycles.column(j)) {
                *zi += cj;
            }
        }
        let e = chase.chase(&z).unwrap();
        if !classes.iter().any(|c| c.equals(&e).unwrap()) {
            classes.push(e);
        }
    }
    classes
}

#[test]
fn psi_on_the_klein_four_group_hits_h4() {
    let g = Group::product(&[2, 2]).unwrap();
    let w = OrientationChar::trivial(&g);
    let classes = psi_image(&g, &klein_four_presentation_complex(), &w);
    let h4 = bar_homology_oracle_with_budget(&g, &w, 4, 100_000).unwrap();
    assert_eq!(h4.order(), Some(big(4)));
    assert_eq!(BigInt::from(classes.len()), big(4));
}

#[test]
fn psi_on_cyclic_groups_is_trivial() {
    for p in 2..=7u64 {
        let g = Group::cyclic(p).unwrap();
        let w = OrientationChar::trivial(&g);
        let classes = psi_image(&g, &cyclic_presentation_complex(p).unwrap(), &w);
        assert_eq!(classes.len(), 1);
        assert!(classes[0].is_trivial());
    }
    let one = Group::trivial();
    let point = LambdaComplex::new(one.clone(), OrientationChar::trivial(&one), vec![1, 0, 0], vec![
        LambdaMatrix::zeros(1, 0),
        LambdaMatrix::zeros(0, 0),
    ])
    .unwrap();
    let classes = psi_image(&one, &point, &OrientationChar::trivial(&one));
    assert!(classes.iter().all(|c| c.is_trivial()));
}

#[test]
fn psi_with_sign_character_on_z2() {
    // H_4(Z/2; Z^-) = Z/2 and ψ detects it
    let g = Group::cyclic(2).unwrap();
    let w = OrientationChar::new(&g, &[-1]).unwrap();
    let classes = psi_image(&g, &cyclic_presentation_complex(2).unwrap(), &w);
    assert_eq!(classes.len(), 2);
}

#[test]
fn psi_rejects_non_cycles() {
    let g = Group::cyclic(3).unwrap();
    let r = resolution_for(&g, 5, &HomologyConfig::default()).unwrap();
    let chase = PsiChase::new(&r, &cyclic_presentation_complex(3).unwrap(), &OrientationChar::trivial(&g)).unwrap();
    assert!(matches!(chase.chase(&[big(1)]), Err(Error::NotACycle(_))));
}

fn klein_chase() -> (PsiChase, IntMatrix) {
    let g = Group::product(&[2, 2]).unwrap();
    let w = OrientationChar::trivial(&g);
    let r = resolution_for(&g, 5, &HomologyConfig::default()).unwrap();
    let chase = PsiChase::new(&r, &klein_four_presentation_complex(), &w).unwrap();
    let cycles = kernel_basis(&r.complex().boundary(4).augment(&w));
    (chase, cycles)
}

fn combine(cycles: &IntMatrix, coeffs: &[i64]) -> Vec<BigInt> {
    cycles.mul_vec(&coeffs.iter().map(|&c| big(c)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn psi_is_additive(a in prop::collection::vec(-2i64..=2, 5), b in prop::collection::vec(-2i64..=2, 5)) {
        let (chase, cycles) = klein_chase();
        let k = cycles.cols();
        let (a, b) = (&a[..k], &b[..k]);
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let lhs = chase.chase(&combine(&cycles, &sum)).unwrap();
        let rhs = baer_sum(&chase.chase(&combine(&cycles, a)).unwrap(), &chase.chase(&combine(&cycles, b)).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn psi_ignores_lift_choices(a in prop::collection::vec(-2i64..=2, 5), seed in any::<u64>()) {
        let (chase, cycles) = klein_chase();
        let z = combine(&cycles, &a[..cycles.cols()]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut choice = |kernel: &IntMatrix| (0..kernel.cols()).map(|_| big(rng.gen_range(-3..=3))).collect();
        let perturbed = chase.chase_with(&z, &mut choice).unwrap();
        prop_assert!(perturbed.equals(&chase.chase(&z).unwrap()).unwrap());
    }

    #[test]
    fn em_is_even_in_m(seed in any::<u64>(), m in -12i64..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = common::random_matrix(&mut rng, r, c, 9);
        prop_assert_eq!(em_torsion(&a, &big(m)), em_torsion(&a, &big(-m)));
    }

    #[test]
    fn recovery_contains_the_true_value(seed in any::<u64>(), m in -12i64..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(1..=6);
        let c = rng.gen_range(1..=6);
        let mut a = common::random_matrix(&mut rng, r, c, 9);
        // force a nonzero kernel
        for i in 0..r {
            a[(i, c - 1)] = BigInt::default();
        }
        let fam = EmFamily::from_d3(&a);
        prop_assert!(fam.a_free >= 1);
        let got = recover_m(&em_torsion(&a, &big(m)), &fam).unwrap();
        prop_assert!(got.contains(&big(m.abs())));
    }
}

#[test]
fn contexts_are_shared_not_copied() {
    let x = pi2_extension(&periodic_resolution(3, 4).unwrap().complex().clone()).unwrap();
    let y = x.scale(&big(2));
    assert!(Arc::ptr_eq(x.context(), y.context()));
}
