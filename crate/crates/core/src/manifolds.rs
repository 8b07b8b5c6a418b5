//! Example complexes and lens-space invariants.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};

/// `L(p, q)` with `p ≥ 2`, `1 ≤ q < p`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    p: u64,
    q: u64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 || q < 1 || q >= p || p.gcd(&q) != 1 {
            return Err(Error::InvalidLens { p, q });
        }
        Ok(LensSpace {
            p: p as u64,
            q: q as u64,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Inverse of a unit modulo `p`.
pub fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let g = (a as i64).extended_gcd(&(p as i64));
    (g.gcd == 1).then(|| g.x.rem_euclid(p as i64) as u64)
}

/// Units of `Z/p` in increasing order.
pub fn units(p: u64) -> Vec<u64> {
    (1..p).filter(|r| r.gcd(&p) == 1).collect()
}

/// Cellular chain complex of `L(p, q)` over `Z[Z/p]`:
/// `Λ --(t^e - 1)--> Λ --N--> Λ --(t - 1)--> Λ` with `e = q⁻¹ mod p`.
pub fn lens_complex(lens: &LensSpace) -> LambdaComplex {
    let p = lens.p;
    let group = Group::cyclic(p).expect("p >= 2");
    let e = mod_inverse(lens.q, p).expect("coprime parameters");
    let one = RingElement::one(&group);
    let d1 = RingElement::generator(&group, 0) - one.clone();
    let d2 = RingElement::norm(&group, 0);
    let d3 = RingElement::generator_power(&group, 0, e as i64) - one;
    LambdaComplex::new(
        group.clone(),
        OrientationChar::trivial(&group),
        vec![1; 4],
        vec![
            LambdaMatrix::scalar(d1),
            LambdaMatrix::scalar(d2),
            LambdaMatrix::scalar(d3),
        ],
    )
    .expect("lens boundaries compose to zero")
}

/// `N_{p,q} = L(p, q) × S¹`.
pub fn lens_cross_circle(lens: &LensSpace) -> LambdaComplex {
    lens_complex(lens)
        .cross_circle(1)
        .expect("product with the circle is a complex")
}

/// Image of the fundamental class in `H_3(Z/p) = Z/p`, with the class of
/// `L(p, 1)` as generator: `q⁻¹ mod p`.
pub fn fundamental_class_invariant(lens: &LensSpace) -> u64 {
    mod_inverse(lens.q, lens.p).expect("coprime parameters")
}

/// `r` and a sign with `q' ≡ sign · r² · q (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareWitness {
    pub r: u64,
    pub sign: i8,
}

/// Searches `r ∈ 0..p` and both signs for `target ≡ ±r² · source (mod p)`.
pub fn pm_square_witness(p: u64, source: u64, target: u64) -> Option<SquareWitness> {
    let p_i = p as i128;
    for r in 0..p {
        let sq = (r as i128 * r as i128) % p_i;
        for sign in [1i8, -1] {
            let v = (sign as i128 * sq * source as i128).rem_euclid(p_i);
            if v == target as i128 % p_i {
                return Some(SquareWitness { r, sign });
            }
        }
    }
    None
}

/// Whether `L(p, q)` and `L(p, q')` are homotopy equivalent, with the witness
/// `q' ≡ ±r² q (mod p)`.
pub fn lens_homotopy_equivalent(p: i64, q: i64, q_prime: i64) -> Result<Option<SquareWitness>> {
    let a = LensSpace::new(p, q)?;
    let b = LensSpace::new(p, q_prime)?;
    Ok(pm_square_witness(a.p, a.q, b.q))
}

/// The form `(x, y) ↦ -value · x · y / order` on `Z/order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingForm {
    pub order: u64,
    pub value: u64,
}

pub fn linking_form(lens: &LensSpace) -> LinkingForm {
    LinkingForm {
        order: lens.p,
        value: lens.q,
    }
}

/// `u` and a sign with `f2 ≡ sign · u² · f1`, if the forms are isometric up
/// to sign.
pub fn linking_isometric(f1: &LinkingForm, f2: &LinkingForm) -> Result<Option<SquareWitness>> {
    if f1.order != f2.order {
        return Err(Error::OrderMismatch(f1.order, f2.order));
    }
    let p = f1.order;
    for &u in &units(p) {
        let sq = (u as u128 * u as u128 % p as u128) as u64;
        for sign in [1i8, -1] {
            let v = (sign as i128 * sq as i128 * f1.value as i128).rem_euclid(p as i128) as u64;
            if v == f2.value % p {
                return Ok(Some(SquareWitness { r: u, sign }));
            }
        }
    }
    Ok(None)
}

/// `T⁴` as four products with the circle, over `Z[Z^4]`.
pub fn torus4_complex() -> LambdaComplex {
    (0..4).fold(LambdaComplex::point(), |c, _| {
        c.cross_circle(1).expect("torus complex")
    })
}

/// `RP⁴` over `Z[Z/2]` with the nontrivial orientation character.
pub fn rp4_complex() -> LambdaComplex {
    let group = Group::cyclic(2).expect("order 2");
    let t = RingElement::generator(&group, 0);
    let one = RingElement::one(&group);
    let minus = LambdaMatrix::scalar(&t - &one);
    let plus = LambdaMatrix::scalar(&t + &one);
    LambdaComplex::new(
        group.clone(),
        OrientationChar::new(&group, &[-1]).expect("order 2"),
        vec![1; 5],
        vec![minus.clone(), plus.clone(), minus, plus],
    )
    .expect("periodic boundaries")
}

fn simply_connected(ranks: Vec<usize>) -> LambdaComplex {
    let group = Group::trivial();
    let boundaries = (1..ranks.len())
        .map(|i| LambdaMatrix::zeros(ranks[i - 1], ranks[i]))
        .collect();
    LambdaComplex::new(group.clone(), OrientationChar::trivial(&group), ranks, boundaries)
        .expect("zero boundaries")
}

pub fn s4_complex() -> LambdaComplex {
    simply_connected(vec![1, 0, 0, 0, 1])
}

pub fn cp2_complex() -> LambdaComplex {
    simply_connected(vec![1, 0, 1, 0, 1])
}

/// The 2-complex of `⟨t | t^p⟩`.
pub fn cyclic_presentation_complex(p: u64) -> Result<LambdaComplex> {
    let group = Group::cyclic(p)?;
    let d1 = RingElement::generator(&group, 0) - RingElement::one(&group);
    LambdaComplex::new(
        group.clone(),
        OrientationChar::trivial(&group),
        vec![1, 1, 1],
        vec![
            LambdaMatrix::scalar(d1),
            LambdaMatrix::scalar(RingElement::norm(&group, 0)),
        ],
    )
}

/// The 2-complex of `⟨a, b | a², b², [a, b]⟩` over `Z[Z/2 × Z/2]`.
pub fn klein_four_presentation_complex() -> LambdaComplex {
    let group = Group::product(&[2, 2]).expect("orders 2");
    let one = RingElement::one(&group);
    let a = RingElement::generator(&group, 0);
    let b = RingElement::generator(&group, 1);
    let zero = RingElement::zero();
    let d1 = LambdaMatrix::from_rows(vec![vec![&a - &one, &b - &one]]).expect("one row");
    let d2 = LambdaMatrix::from_rows(vec![
        vec![&one + &a, zero.clone(), &one - &b],
        vec![zero, &one + &b, &a - &one],
    ])
    .expect("two rows");
    LambdaComplex::new(group.clone(), OrientationChar::trivial(&group), vec![1, 2, 3], vec![d1, d2])
        .expect("Fox derivatives of the presentation")
}

/// `K ∨ S²`: one more 2-cell with zero boundary.
pub fn wedge_sphere(k: &LambdaComplex) -> Result<LambdaComplex> {
    if k.top_degree() != 2 {
        return Err(Error::WrongLength {
            expected: 2,
            actual: k.top_degree(),
        });
    }
    let d2 = k.boundary(2);
    let wider = LambdaMatrix::from_fn(d2.rows(), d2.cols() + 1, |i, j| {
        if j < d2.cols() {
            d2.get(i, j).clone()
        } else {
            RingElement::zero()
        }
    });
    let mut ranks = k.ranks().to_vec();
    ranks[2] += 1;
    LambdaComplex::new(k.group().clone(), k.w().clone(), ranks, vec![k.boundary(1), wider])
}
