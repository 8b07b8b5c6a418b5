use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An abelian group `Z/o_1 × … × Z/o_k × Z^free_rank`.
///
/// Elements are exponent tuples of length `k + free_rank`: finite exponents
/// reduced into `0..o_i`, Laurent exponents signed. Finite groups are
/// enumerated in lexicographic order of exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Group {
    orders: Vec<u64>,
    free_rank: usize,
}

pub type Element = Vec<i64>;

impl Group {
    pub fn trivial() -> Self {
        Group {
            orders: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(order: u64) -> Result<Self> {
        Self::product(&[order])
    }

    pub fn product(orders: &[u64]) -> Result<Self> {
        if let Some(o) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor of order {o}; orders must be at least 2"
            )));
        }
        if orders.iter().any(|&o| o > i64::MAX as u64) {
            return Err(Error::InvalidGroup("cyclic order too large".into()));
        }
        Ok(Group {
            orders: orders.to_vec(),
            free_rank: 0,
        })
    }

    /// `base × Z^rank`.
    pub fn laurent(base: &Group, rank: usize) -> Self {
        Group {
            orders: base.orders.clone(),
            free_rank: base.free_rank + rank,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Cyclic generators first, then Laurent generators.
    pub fn num_generators(&self) -> usize {
        self.orders.len() + self.free_rank
    }

    /// Order of generator `i`, `None` for a Laurent generator.
    pub fn generator_order(&self, i: usize) -> Option<u64> {
        self.orders.get(i).copied()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty() && self.free_rank == 0
    }

    /// The finite factor `Z/o_1 × … × Z/o_k`.
    pub fn finite_part(&self) -> Group {
        Group {
            orders: self.orders.clone(),
            free_rank: 0,
        }
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.orders.iter().product())
    }

    pub fn require_finite(&self) -> Result<u64> {
        self.order().ok_or_else(|| Error::InfiniteGroup(self.to_string()))
    }

    pub fn identity(&self) -> Element {
        vec![0; self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.identity();
        e[i] = 1;
        self.normalize(&mut e);
        e
    }

    pub fn normalize(&self, e: &mut [i64]) {
        for (x, &o) in e.iter_mut().zip(&self.orders) {
            *x = x.rem_euclid(o as i64);
        }
    }

    /// Whether `e` is a reduced element of this group.
    pub fn is_element(&self, e: &[i64]) -> bool {
        e.len() == self.num_generators()
            && e.iter().zip(&self.orders).all(|(&x, &o)| x >= 0 && (x as u64) < o)
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Element {
        let mut e: Element = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&mut e);
        e
    }

    pub fn inverse(&self, a: &[i64]) -> Element {
        let mut e: Element = a.iter().map(|x| -x).collect();
        self.normalize(&mut e);
        e
    }

    /// All elements in lexicographic order. Fails for infinite groups.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let n = self.require_finite()?;
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = self.identity();
        for _ in 0..n {
            out.push(cur.clone());
            for k in (0..self.orders.len()).rev() {
                cur[k] += 1;
                if (cur[k] as u64) < self.orders[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        Ok(out)
    }

    /// Position of `e` in the enumeration.
    pub fn index_of(&self, e: &[i64]) -> usize {
        debug_assert!(self.is_finite() && self.is_element(e));
        e.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &o)| acc * o as usize + x as usize)
    }

    /// `self × other` with cyclic factors of `self` first. Also returns where
    /// each group's generators land.
    pub fn direct_product(&self, other: &Group) -> (Group, Vec<usize>, Vec<usize>) {
        let (k1, k2) = (self.orders.len(), other.orders.len());
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let product = Group {
            orders,
            free_rank: self.free_rank + other.free_rank,
        };
        let left = (0..k1).chain((0..self.free_rank).map(|j| k1 + k2 + j)).collect();
        let right = (k1..k1 + k2)
            .chain((0..other.free_rank).map(|j| k1 + k2 + self.free_rank + j))
            .collect();
        (product, left, right)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.orders.iter().map(|o| format!("ℤ/{o}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" × "))
        }
    }
}

/// A homomorphism `w: π → {±1}` given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationChar {
    signs: Vec<i8>,
}

impl OrientationChar {
    pub fn trivial(group: &Group) -> Self {
        OrientationChar {
            signs: vec![1; group.num_generators()],
        }
    }

    /// Rejects values other than ±1 and `-1` on generators of odd order.
    pub fn new(group: &Group, signs: &[i8]) -> Result<Self> {
        if signs.len() != group.num_generators() {
            return Err(Error::InvalidCharacter(format!(
                "{} values for {} generators of {group}",
                signs.len(),
                group.num_generators()
            )));
        }
        for (i, &s) in signs.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(Error::InvalidCharacter(format!("value {s} on generator {i}")));
            }
            if s == -1 && group.generator_order(i).is_some_and(|o| o % 2 == 1) {
                return Err(Error::InvalidCharacter(format!(
                    "generator {i} has odd order {} and cannot act by -1",
                    group.generator_order(i).unwrap()
                )));
            }
        }
        Ok(OrientationChar {
            signs: signs.to_vec(),
        })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// `w(g)` as ±1.
    pub fn value(&self, g: &[i64]) -> i64 {
        let odd = g
            .iter()
            .zip(&self.signs)
            .filter(|(e, s)| **s == -1 && e.rem_euclid(2) == 1)
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Character on `π × Z` taking `sign` on the new generator.
    pub fn extended(&self, sign: i8) -> Self {
        let mut signs = self.signs.clone();
        signs.push(sign);
        OrientationChar { signs }
    }

    /// Restriction along a generator embedding.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        OrientationChar {
            signs: positions.iter().map(|&p| self.signs[p]).collect(),
        }
    }

    /// Character on a direct product from the characters on its factors.
    pub fn combine(
        product: &Group,
        (left, lpos): (&OrientationChar, &[usize]),
        (right, rpos): (&OrientationChar, &[usize]),
    ) -> Self {
        let mut signs = vec![1; product.num_generators()];
        for (s, &p) in left.signs.iter().zip(lpos) {
            signs[p] = *s;
        }
        for (s, &p) in right.signs.iter().zip(rpos) {
            signs[p] = *s;
        }
        OrientationChar { signs }
    }
}
