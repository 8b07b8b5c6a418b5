use fourfold_core::group_ring::{twisted_augmentation, Group, LambdaMatrix, OrientationChar, RingElement};
use fourfold_core::linalg::IntMatrix;
use fourfold_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDERS: &[&[u64]] = &[&[2], &[3], &[4], &[2, 2], &[2, 3], &[6], &[3, 3]];

fn element(group: &Group) -> impl Strategy<Value = RingElement> {
    let g = group.clone();
    let n = group.num_generators();
    prop::collection::vec((-5i64..=5, prop::collection::vec(-3i64..=3, n)), 0..6).prop_map(move |terms| {
        RingElement::from_terms(&g, terms.into_iter().map(|(c, e)| (BigInt::from(c), e))).unwrap()
    })
}

fn finite_group() -> impl Strategy<Value = Group> {
    prop::sample::select(ORDERS).prop_map(|o| Group::product(o).unwrap())
}

fn laurent_group() -> impl Strategy<Value = Group> {
    (prop::sample::select(ORDERS), 1usize..=2).prop_map(|(o, r)| Group::laurent(&Group::product(o).unwrap(), r))
}

/// Characters with -1 exactly on a random subset of the even-order and
/// Laurent generators.
fn character(group: &Group, mask: u32) -> OrientationChar {
    let signs: Vec<i8> = (0..group.num_generators())
        .map(|i| {
            let allowed = group.generator_order(i).is_none_or(|o| o % 2 == 0);
            if allowed && mask >> i & 1 == 1 { -1 } else { 1 }
        })
        .collect();
    OrientationChar::new(group, &signs).unwrap()
}

#[test]
fn ring_examples() {
    let c2 = Group::cyclic(2).unwrap();
    let one = RingElement::one(&c2);
    let t = RingElement::generator(&c2, 0);
    assert_eq!(one.mul(&t, &c2), t);
    assert!((&one + &t).mul(&(&one - &t), &c2).is_zero());
    let c3 = Group::cyclic(3).unwrap();
    let n = RingElement::norm(&c3, 0);
    let t3 = RingElement::generator(&c3, 0);
    assert!(n.mul(&(&t3 - &RingElement::one(&c3)), &c3).is_zero());
}

#[test]
fn involution_examples() {
    let c5 = Group::cyclic(5).unwrap();
    let t = RingElement::generator(&c5, 0);
    assert_eq!(t.involution(&c5), RingElement::generator_power(&c5, 0, 4));
    assert_eq!(RingElement::one(&c5).involution(&c5), RingElement::one(&c5));
    let x = RingElement::constant(&c5, 2) + t.scale(&BigInt::from(3));
    let expected = RingElement::constant(&c5, 2) + RingElement::generator_power(&c5, 0, -1).scale(&BigInt::from(3));
    assert_eq!(x.involution(&c5), expected);
}

#[test]
fn augmentation_examples() {
    for p in [2u64, 3, 5, 7] {
        let g = Group::cyclic(p).unwrap();
        assert_eq!(RingElement::norm(&g, 0).augment(&OrientationChar::trivial(&g)), BigInt::from(p));
    }
    let c2 = Group::cyclic(2).unwrap();
    let w = OrientationChar::new(&c2, &[-1]).unwrap();
    let x = RingElement::generator(&c2, 0) - RingElement::one(&c2);
    assert_eq!(twisted_augmentation(&c2, &x, &w).unwrap(), BigInt::from(-2));
    let z = Group::laurent(&Group::trivial(), 1);
    let wz = OrientationChar::new(&z, &[-1]).unwrap();
    let s = RingElement::generator(&z, 0) - RingElement::one(&z);
    assert_eq!(s.augment(&wz), BigInt::from(-2));
}

#[test]
fn regular_representation_examples() {
    let c3 = Group::cyclic(3).unwrap();
    assert_eq!(RingElement::one(&c3).regular_representation(&c3).unwrap(), IntMatrix::identity(3));
    let perm = IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    assert_eq!(RingElement::generator(&c3, 0).regular_representation(&c3).unwrap(), perm);
    for p in [2u64, 5] {
        let g = Group::cyclic(p).unwrap();
        let ones = IntMatrix::from_fn(p as usize, p as usize, |_, _| BigInt::from(1));
        assert_eq!(RingElement::norm(&g, 0).regular_representation(&g).unwrap(), ones);
    }
}

#[test]
fn characters_reject_odd_orders() {
    let c3 = Group::cyclic(3).unwrap();
    assert!(matches!(OrientationChar::new(&c3, &[-1]), Err(Error::InvalidCharacter(_))));
    let g = Group::product(&[2, 3]).unwrap();
    assert!(OrientationChar::new(&g, &[-1, 1]).is_ok());
    assert!(OrientationChar::new(&g, &[1, -1]).is_err());
    assert!(OrientationChar::new(&g, &[1]).is_err());
}

#[test]
fn lambda_matrix_expansion_is_multiplicative() {
    let g = Group::product(&[2, 2]).unwrap();
    let a = RingElement::generator(&g, 0);
    let b = RingElement::generator(&g, 1) + RingElement::one(&g);
    let m = LambdaMatrix::from_rows(vec![vec![a.clone(), b.clone()]]).unwrap();
    let n = LambdaMatrix::from_rows(vec![vec![b], vec![a]]).unwrap();
    let prod = m.mul(&n, &g).unwrap();
    assert_eq!(
        prod.expand(&g).unwrap(),
        m.expand(&g).unwrap().mul(&n.expand(&g).unwrap()).unwrap()
    );
    assert_eq!(prod.augment(&OrientationChar::trivial(&g)), IntMatrix::from_rows(&[vec![4]]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn regular_representation_is_a_ring_homomorphism(
        (g, a, b) in finite_group().prop_flat_map(|g| (Just(g.clone()), element(&g), element(&g)))
    ) {
        let ra = a.regular_representation(&g).unwrap();
        let rb = b.regular_representation(&g).unwrap();
        prop_assert_eq!(a.mul(&b, &g).regular_representation(&g).unwrap(), ra.mul(&rb).unwrap());
        prop_assert_eq!((&a + &b).regular_representation(&g).unwrap(), ra.add(&rb).unwrap());
        // faithful: the first column is the coefficient vector
        prop_assert_eq!(ra.column(0), a.to_vector(&g).unwrap());
    }

    #[test]
    fn involution_is_an_anti_automorphism(
        (g, a, b, mask) in laurent_group().prop_flat_map(|g| (Just(g.clone()), element(&g), element(&g), any::<u32>()))
    ) {
        prop_assert_eq!(a.involution(&g).involution(&g), a.clone());
        prop_assert_eq!(a.mul(&b, &g).involution(&g), b.involution(&g).mul(&a.involution(&g), &g));
        let w = character(&g, mask);
        prop_assert_eq!(a.involution(&g).augment(&w), a.augment(&w));
        prop_assert_eq!(a.twisted_involution(&g, &w).twisted_involution(&g, &w), a.clone());
        prop_assert_eq!(a.mul(&b, &g).augment(&w), a.augment(&w) * b.augment(&w));
    }

    #[test]
    fn ring_axioms(
        (g, a, b, c) in finite_group().prop_flat_map(|g| (Just(g.clone()), element(&g), element(&g), element(&g)))
    ) {
        prop_assert_eq!(a.mul(&b, &g).mul(&c, &g), a.mul(&b.mul(&c, &g), &g));
        prop_assert_eq!(a.mul(&(&b + &c), &g), &a.mul(&b, &g) + &a.mul(&c, &g));
        prop_assert_eq!(a.mul(&b, &g), b.mul(&a, &g));
    }
}
