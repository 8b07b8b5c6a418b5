use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k`
/// in invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [order.into()])
    }

    /// Builds the invariants from Smith diagonal entries: zeros become free
    /// summands, units are dropped, the rest must already form a chain.
    pub(crate) fn from_chain(free_rank: usize, diag: impl IntoIterator<Item = BigInt>) -> Self {
        let torsion: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).filter(|d| *d > BigInt::one()).collect();
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        AbelianInvariants { free_rank, torsion }
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/o_i` for arbitrary orders `o_i`.
    ///
    /// A zero order contributes a free summand and orders `±1` vanish. The
    /// normalisation goes through primary decomposition, not Smith form.
    pub fn from_cyclic_orders(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        // prime -> exponents of the prime-power summands
        let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for order in orders {
            let order = order.abs();
            if order.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&order) {
                primary.entry(p).or_default().push(e);
            }
        }
        let depth = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigInt::one(); depth];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // largest exponents go into the last invariant factors
            for (slot, e) in torsion.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= num_traits::pow(p.clone(), *e as usize);
            }
        }
        AbelianInvariants { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Largest order of a torsion element (1 for torsion-free groups).
    pub fn highest_torsion(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// The torsion subgroup on its own.
    pub fn torsion_part(&self) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|s| *s == t).count();
            if run == 1 {
                parts.push(format!("ℤ/{t}"));
            } else {
                parts.push(format!("(ℤ/{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Trial-division factorisation; orders in this crate are small.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if let Some(mut m) = n.to_u64() {
        let mut p = 2u64;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
            p += 1;
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primary_decomposition_merges_coprime_orders() {
        let g = AbelianInvariants::from_cyclic_orders(0, orders(&[2, 3]));
        assert_eq!(g.torsion, orders(&[6]));
        let g = AbelianInvariants::from_cyclic_orders(1, orders(&[4, 6, 1, 0]));
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, orders(&[2, 12]));
    }

    #[test]
    fn display_groups_runs() {
        let g = AbelianInvariants::from_cyclic_orders(2, orders(&[3, 3, 3, 3]));
        assert_eq!(g.to_string(), "ℤ^2 ⊕ (ℤ/3)^4");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        assert_eq!(AbelianInvariants::cyclic(5).to_string(), "ℤ/5");
    }

    #[test]
    fn highest_torsion_and_order() {
        let g = AbelianInvariants::from_cyclic_orders(0, orders(&[2, 4]));
        assert_eq!(g.highest_torsion(), BigInt::from(4));
        assert_eq!(g.order(), Some(BigInt::from(8)));
        assert_eq!(AbelianInvariants::free(1).order(), None);
    }
}
