use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::{Element, Group, OrientationChar};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// An element of `ZG`: a finitely supported map from group elements to
/// integers, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    terms: BTreeMap<Element, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(group: &Group) -> Self {
        Self::monomial(group.identity(), BigInt::one())
    }

    pub fn constant(group: &Group, c: impl Into<BigInt>) -> Self {
        Self::monomial(group.identity(), c.into())
    }

    /// The group element `g` itself.
    pub fn group_element(group: &Group, g: &[i64]) -> Self {
        let mut e = g.to_vec();
        group.normalize(&mut e);
        Self::monomial(e, BigInt::one())
    }

    /// Generator number `i` (`t` for a cyclic factor, `s` for a Laurent one).
    pub fn generator(group: &Group, i: usize) -> Self {
        Self::monomial(group.generator(i), BigInt::one())
    }

    /// `g^k` for generator `i`, with negative `k` allowed.
    pub fn generator_power(group: &Group, i: usize, k: i64) -> Self {
        let mut e = group.identity();
        e[i] = k;
        Self::group_element(group, &e)
    }

    /// Norm element `1 + t + … + t^{o-1}` of cyclic factor `i`.
    pub fn norm(group: &Group, i: usize) -> Self {
        let o = group
            .generator_order(i)
            .expect("norm element of a Laurent generator");
        (0..o as i64).fold(Self::zero(), |acc, k| {
            acc + Self::generator_power(group, i, k)
        })
    }

    /// Sum over all elements of a finite group.
    pub fn full_norm(group: &Group) -> Result<Self> {
        Ok(group
            .elements()?
            .into_iter()
            .fold(Self::zero(), |acc, g| acc + Self::monomial(g, BigInt::one())))
    }

    fn monomial(g: Element, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        RingElement { terms }
    }

    /// Builds an element from `(coefficient, exponents)` pairs, reducing
    /// exponents and merging duplicates.
    pub fn from_terms(
        group: &Group,
        terms: impl IntoIterator<Item = (BigInt, Vec<i64>)>,
    ) -> Result<Self> {
        let mut out = Self::zero();
        for (c, mut g) in terms {
            if g.len() != group.num_generators() {
                return Err(Error::GroupMismatch(format!(
                    "exponent tuple of length {} for {group}",
                    g.len()
                )));
            }
            group.normalize(&mut g);
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: Element, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Element, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &[i64]) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn belongs_to(&self, group: &Group) -> bool {
        self.terms.keys().all(|g| group.is_element(g))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    /// Convolution product. Both factors must be reduced elements of `group`.
    pub fn mul(&self, other: &Self, group: &Group) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(group.mul(g, h), a * b);
            }
        }
        out
    }

    /// `Σ c_g g ↦ Σ c_g g⁻¹`.
    pub fn involution(&self, group: &Group) -> Self {
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (group.inverse(g), c.clone()))
                .collect(),
        }
    }

    /// `Σ c_g g ↦ Σ c_g w(g) g`.
    pub fn sign_twist(&self, w: &OrientationChar) -> Self {
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c * w.value(g)))
                .collect(),
        }
    }

    /// `Σ c_g g ↦ Σ c_g w(g) g⁻¹`, the entry map of the twisted dual.
    pub fn twisted_involution(&self, group: &Group, w: &OrientationChar) -> Self {
        self.involution(group).sign_twist(w)
    }

    /// `Σ c_g w(g)`.
    pub fn augment(&self, w: &OrientationChar) -> BigInt {
        self.terms.iter().map(|(g, c)| c * w.value(g)).sum()
    }

    /// Moves the element into a larger group whose generator `i` of the old
    /// group sits at `positions[i]`.
    pub fn embed(&self, positions: &[usize], target: &Group) -> Self {
        let n = target.num_generators();
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| {
                    let mut e = vec![0; n];
                    for (x, &p) in g.iter().zip(positions) {
                        e[p] = *x;
                    }
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Matrix of left multiplication on `ZG` in the enumeration basis.
    pub fn regular_representation(&self, group: &Group) -> Result<IntMatrix> {
        let elements = group.elements()?;
        let n = elements.len();
        let mut m = IntMatrix::zeros(n, n);
        for (j, h) in elements.iter().enumerate() {
            for (g, c) in &self.terms {
                let i = group.index_of(&group.mul(g, h));
                m[(i, j)] += c;
            }
        }
        Ok(m)
    }

    /// Coordinates in the enumeration basis of a finite group.
    pub fn to_vector(&self, group: &Group) -> Result<Vec<BigInt>> {
        let n = group.require_finite()? as usize;
        let mut v = vec![BigInt::zero(); n];
        for (g, c) in &self.terms {
            v[group.index_of(g)] += c;
        }
        Ok(v)
    }

    pub fn from_vector(group: &Group, v: &[BigInt]) -> Result<Self> {
        let elements = group.elements()?;
        if v.len() != elements.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a group of order {}",
                v.len(),
                elements.len()
            )));
        }
        let mut out = Self::zero();
        for (g, c) in elements.into_iter().zip(v) {
            out.add_term(g, c.clone());
        }
        Ok(out)
    }
}

fn check(group: &Group, a: &RingElement) -> Result<()> {
    if a.belongs_to(group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!("element {a} is not in Z[{group}]")))
    }
}

/// Product in `ZG`, checking both factors belong to `group`.
pub fn ring_mul(group: &Group, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    check(group, a)?;
    check(group, b)?;
    Ok(a.mul(b, group))
}

pub fn involution(group: &Group, a: &RingElement) -> Result<RingElement> {
    check(group, a)?;
    Ok(a.involution(group))
}

/// The ring homomorphism `ZG → Z`, `g ↦ w(g)`.
pub fn twisted_augmentation(group: &Group, a: &RingElement, w: &OrientationChar) -> Result<BigInt> {
    check(group, a)?;
    if w.signs().len() != group.num_generators() {
        return Err(Error::GroupMismatch(format!(
            "character with {} values on {group}",
            w.signs().len()
        )));
    }
    Ok(a.augment(w))
}

pub fn regular_representation(group: &Group, a: &RingElement) -> Result<IntMatrix> {
    check(group, a)?;
    a.regular_representation(group)
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(mut self, rhs: RingElement) -> RingElement {
        for (g, c) in rhs.terms {
            self.add_term(g, c);
        }
        self
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.clone() + rhs.clone()
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.into_iter().map(|(g, c)| (g, -c)).collect(),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -self.clone()
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self + (-rhs)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.clone() - rhs.clone()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if g.iter().all(|&x| x == 0) {
                    c.to_string()
                } else {
                    let exps: Vec<String> = g.iter().map(ToString::to_string).collect();
                    format!("{c}·g[{}]", exps.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
