//! Chain complexes of free `Λ`-modules.
//!
//! `d_i: C_i → C_{i-1}` is a `rank_{i-1} x rank_i` matrix over `Λ` acting on
//! column vectors. Homology with `Z^w` coefficients works for any supported
//! group; homology with `Λ` coefficients needs a finite group.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::LatticeModule;
use crate::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
use crate::linalg::{homology_invariants, kernel_lattice, AbelianInvariants, IntMatrix, Lattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaComplex {
    group: Group,
    w: OrientationChar,
    ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `d_i`.
    boundaries: Vec<LambdaMatrix>,
}

/// `H_i(C; Λ)` as an abelian group together with its module structure.
#[derive(Clone, Debug)]
pub struct LambdaHomology {
    pub invariants: AbelianInvariants,
    pub module: LatticeModule,
}

impl LambdaComplex {
    /// Builds and validates a complex.
    pub fn new(
        group: Group,
        w: OrientationChar,
        ranks: Vec<usize>,
        boundaries: Vec<LambdaMatrix>,
    ) -> Result<Self> {
        let c = Self::unvalidated(group, w, ranks, boundaries)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks shapes and group membership but not `d² = 0`.
    pub fn unvalidated(
        group: Group,
        w: OrientationChar,
        ranks: Vec<usize>,
        boundaries: Vec<LambdaMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch("a complex needs at least C_0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        if w.signs().len() != group.num_generators() {
            return Err(Error::GroupMismatch(format!(
                "character with {} values on {group}",
                w.signs().len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let i = k + 1;
            if d.rows() != ranks[i - 1] || d.cols() != ranks[i] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{i} is {}x{} but C_{} and C_{i} have ranks {} and {}",
                    d.rows(),
                    d.cols(),
                    i - 1,
                    ranks[i - 1],
                    ranks[i]
                )));
            }
            if !d.belongs_to(&group) {
                return Err(Error::GroupMismatch(format!(
                    "d_{i} has entries outside Z[{group}]"
                )));
            }
        }
        Ok(LambdaComplex {
            group,
            w,
            ranks,
            boundaries,
        })
    }

    /// `d_{i-1} d_i = 0` for every `i`.
    pub fn validate(&self) -> Result<()> {
        for i in 2..=self.top_degree() {
            let prod = self.boundaries[i - 2].mul(&self.boundaries[i - 1], &self.group)?;
            if !prod.is_zero() {
                return Err(Error::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn w(&self) -> &OrientationChar {
        &self.w
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Largest degree `n` with `C_n` present.
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn boundaries(&self) -> &[LambdaMatrix] {
        &self.boundaries
    }

    /// `d_i`, or a zero matrix of the right shape outside `1..=n`.
    pub fn boundary(&self, i: usize) -> LambdaMatrix {
        if i >= 1 && i <= self.top_degree() {
            self.boundaries[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.rank(i - 1) };
            LambdaMatrix::zeros(rows, self.rank(i))
        }
    }

    /// Same complex with another orientation character.
    pub fn with_character(&self, w: OrientationChar) -> Result<Self> {
        Self::unvalidated(self.group.clone(), w, self.ranks.clone(), self.boundaries.clone())
    }

    /// Keeps degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.top_degree());
        LambdaComplex {
            group: self.group.clone(),
            w: self.w.clone(),
            ranks: self.ranks[..=n].to_vec(),
            boundaries: self.boundaries[..n].to_vec(),
        }
    }

    /// The complex of the dual handle decomposition: `C'_i = C_{n-i}` with
    /// `d'_i` the transpose of `d_{n+1-i}` under `g ↦ w(g) g⁻¹`.
    pub fn twisted_dual(&self) -> Self {
        let n = self.top_degree();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let boundaries = (1..=n)
            .map(|i| {
                self.boundaries[n - i]
                    .map(|x| x.twisted_involution(&self.group, &self.w))
                    .transpose()
            })
            .collect();
        LambdaComplex {
            group: self.group.clone(),
            w: self.w.clone(),
            ranks,
            boundaries,
        }
    }

    /// Boundary of `Z^w ⊗_Λ C` in degree `i`.
    pub fn augmented_boundary(&self, i: usize) -> IntMatrix {
        self.boundary(i).augment(&self.w)
    }

    /// `H_i(C; Z^w)`.
    pub fn homology_zw(&self, i: usize) -> Result<AbelianInvariants> {
        if i > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.top_degree(),
            });
        }
        homology_invariants(
            self.rank(i),
            &self.augmented_boundary(i),
            &self.augmented_boundary(i + 1),
        )
    }

    pub fn homology_zw_all(&self) -> Result<Vec<AbelianInvariants>> {
        (0..=self.top_degree()).map(|i| self.homology_zw(i)).collect()
    }

    /// `d_i` as an integer matrix on the underlying free abelian groups.
    pub fn expanded_boundary(&self, i: usize) -> Result<IntMatrix> {
        self.boundary(i).expand(&self.group)
    }

    /// `H_i(C; Λ) = ker d_i / im d_{i+1}` with its `π`-action.
    pub fn homology_lambda(&self, i: usize) -> Result<LambdaHomology> {
        self.group.require_finite()?;
        if i > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.top_degree(),
            });
        }
        let cycles = kernel_lattice(&self.expanded_boundary(i)?);
        let boundaries = Lattice::column_span(&self.expanded_boundary(i + 1)?);
        let module = LatticeModule::from_subquotient(&self.group, self.rank(i), &cycles, &boundaries)?;
        let invariants = module.invariants();
        Ok(LambdaHomology { invariants, module })
    }

    /// Tensor product over the product group, degrees `0..=max_degree`.
    ///
    /// Degree-`n` generators are ordered by descending `p` in `C_p ⊗ D_q`,
    /// then lexicographically. `d(x⊗y) = dx⊗y + (-1)^p x⊗dy`.
    pub fn tensor(&self, other: &LambdaComplex, max_degree: usize) -> Result<Self> {
        let (group, lpos, rpos) = self.group.direct_product(&other.group);
        let w = OrientationChar::combine(&group, (&self.w, &lpos), (&other.w, &rpos));
        let top = (self.top_degree() + other.top_degree()).min(max_degree);
        // blocks[n] = [(p, q, offset)]
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(top + 1);
        let mut ranks = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut offset = 0;
            let mut list = Vec::new();
            for p in (0..=n).rev() {
                let q = n - p;
                if p > self.top_degree() || q > other.top_degree() {
                    continue;
                }
                list.push((p, q, offset));
                offset += self.rank(p) * other.rank(q);
            }
            blocks.push(list);
            ranks.push(offset);
        }
        let left: Vec<LambdaMatrix> = (0..=self.top_degree())
            .map(|i| self.boundary(i).map(|x| x.embed(&lpos, &group)))
            .collect();
        let right: Vec<LambdaMatrix> = (0..=other.top_degree())
            .map(|i| other.boundary(i).map(|x| x.embed(&rpos, &group)))
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let mut d = LambdaMatrix::zeros(ranks[n - 1], ranks[n]);
            let find = |p: usize, q: usize| {
                blocks[n - 1]
                    .iter()
                    .find(|(bp, bq, _)| *bp == p && *bq == q)
                    .map(|b| b.2)
            };
            for &(p, q, off) in &blocks[n] {
                let (rp, rq) = (self.rank(p), other.rank(q));
                for a in 0..rp {
                    for b in 0..rq {
                        let col = off + a * rq + b;
                        if p >= 1 {
                            if let Some(target) = find(p - 1, q) {
                                for a2 in 0..self.rank(p - 1) {
                                    let e = left[p].get(a2, a);
                                    if !e.is_zero() {
                                        d.set(target + a2 * rq + b, col, e.clone());
                                    }
                                }
                            }
                        }
                        if q >= 1 {
                            if let Some(target) = find(p, q - 1) {
                                let sign = if p % 2 == 0 { 1 } else { -1 };
                                for b2 in 0..other.rank(q - 1) {
                                    let e = right[q].get(b2, b);
                                    if !e.is_zero() {
                                        let row = target + a * other.rank(q - 1) + b2;
                                        let v = d.get(row, col) + &e.scale(&BigInt::from(sign));
                                        d.set(row, col, v);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(d);
        }
        Self::new(group, w, ranks, boundaries)
    }

    /// `C × S^1`: the new Laurent generator `s` acts on `Z^w` by `sign`.
    pub fn cross_circle(&self, sign: i8) -> Result<Self> {
        let circle = Self::circle(sign)?;
        self.tensor(&circle, usize::MAX)
    }

    /// `Z --(s-1)--> Z` over `Z[s, s⁻¹]`.
    pub fn circle(sign: i8) -> Result<Self> {
        let group = Group::laurent(&Group::trivial(), 1);
        let w = OrientationChar::new(&group, &[sign])?;
        let d = RingElement::generator(&group, 0) - RingElement::one(&group);
        Self::new(group, w, vec![1, 1], vec![LambdaMatrix::scalar(d)])
    }

    /// A single 0-cell over the trivial group.
    pub fn point() -> Self {
        let group = Group::trivial();
        LambdaComplex {
            w: OrientationChar::trivial(&group),
            group,
            ranks: vec![1],
            boundaries: Vec::new(),
        }
    }

    /// Alternating sum of ranks mod 2.
    pub fn euler_char_mod2(&self) -> u8 {
        (self.ranks.iter().sum::<usize>() % 2) as u8
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Whether every column of `d_1` augments to zero, so `H_0(C; Z) = Z`
    /// for a connected complex.
    pub fn is_connected_cellular(&self) -> bool {
        self.rank(0) == 1
            && self
                .boundary(1)
                .augment(&OrientationChar::trivial(&self.group))
                .entries()
                .iter()
                .all(Zero::is_zero)
    }
}
