use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::invariants::AbelianInvariants;
use super::matrix::IntMatrix;
use super::smith::{invariant_factors, smith_normal_form};
use crate::error::{Error, Result};

/// A subgroup of `Z^dim` held in Hermite normal form.
///
/// Basis vectors have strictly increasing pivot positions, positive pivots,
/// and entries above each pivot reduced into `[0, pivot)`. Two lattices are
/// equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, IntMatrix::identity(dim).columns())
    }

    /// Lattice spanned by the given vectors, each of length `dim`.
    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length"))
            .filter(|g| g.iter().any(|e| !e.is_zero()))
            .collect();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // Euclid on column `col` until a single row is nonzero there
            loop {
                let mut best: Option<usize> = None;
                for (i, r) in rows.iter().enumerate() {
                    if r[col].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|b| r[col].magnitude() < rows[b][col].magnitude()) {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                let pivot_row = rows[b].clone();
                let mut others = 0;
                for (i, r) in rows.iter_mut().enumerate() {
                    if i == b || r[col].is_zero() {
                        continue;
                    }
                    let q = r[col].div_floor(&pivot_row[col]);
                    for (x, y) in r.iter_mut().zip(&pivot_row).skip(col) {
                        *x -= &q * y;
                    }
                    if !r[col].is_zero() {
                        others += 1;
                    }
                }
                if others == 0 {
                    let mut row = rows.swap_remove(b);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    basis.push(row);
                    pivots.push(col);
                    rows.retain(|r| r.iter().any(|e| !e.is_zero()));
                    break;
                }
            }
        }
        // Reduce entries above pivots, left to right: subtracting row k only
        // touches columns at or after p_k, which later passes fix up.
        for k in 0..basis.len() {
            let p = pivots[k];
            for i in 0..k {
                let q = basis[i][p].div_floor(&basis[k][p]);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in head[i].iter_mut().zip(&tail[0]).skip(p) {
                    *x -= &q * y;
                }
            }
        }
        Lattice { dim, basis, pivots }
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), m.columns())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, rem) = r[p].div_rem(&b[p]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(b).skip(p) {
                    *x -= &q * y;
                }
            }
            coords.push(q);
        }
        r.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice: pivot entries land in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = r[p].div_floor(&b[p]);
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(b).skip(p) {
                    *x -= &q * y;
                }
            }
        }
        r
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim, "lattice dimensions");
        Self::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Image of the lattice under `f`.
    pub fn image(&self, f: &IntMatrix) -> Result<Lattice> {
        let gens = self
            .basis
            .iter()
            .map(|b| f.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generators(f.rows(), gens))
    }

    /// `{x : f x ∈ target}`.
    pub fn preimage(f: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if f.rows() != target.dim {
            return Err(Error::DimensionMismatch(format!(
                "preimage under a map into Z^{} of a lattice in Z^{}",
                f.rows(),
                target.dim
            )));
        }
        let l = target.basis_matrix().scale(&BigInt::from(-1));
        let k = kernel_basis(&f.hstack(&l)?);
        Ok(Self::from_generators(
            f.cols(),
            k.columns().into_iter().map(|c| c[..f.cols()].to_vec()),
        ))
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        Self::preimage(&self.basis_matrix(), other)?.image(&self.basis_matrix())
    }

    /// Invariants of `self / sub`. Fails if `sub` is not contained in `self`.
    pub fn quotient_invariants(&self, sub: &Lattice) -> Result<AbelianInvariants> {
        let rel = self.coordinate_matrix(sub.basis())?;
        let diag = invariant_factors(&rel);
        Ok(AbelianInvariants::from_chain(self.rank() - diag.len(), diag))
    }

    /// Matrix whose columns are the coordinates of the given vectors.
    pub fn coordinate_matrix(&self, vectors: &[Vec<BigInt>]) -> Result<IntMatrix> {
        let cols = vectors
            .iter()
            .map(|v| {
                self.coordinates(v).ok_or_else(|| {
                    Error::DimensionMismatch("vector outside the ambient lattice".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(self.rank(), &cols))
    }
}

/// Saturated ℤ-basis of `ker a`, as columns in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    kernel_lattice(a).basis_matrix()
}

pub fn kernel_lattice(a: &IntMatrix) -> Lattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    Lattice::from_generators(a.cols(), (r..a.cols()).map(|j| snf.v.column(j)))
}

/// Whether `v` lies in the ℤ-span of the columns of `gens`.
pub fn subgroup_membership(gens: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    if v.len() != gens.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against generators in Z^{}",
            v.len(),
            gens.rows()
        )));
    }
    Ok(Lattice::column_span(gens).contains(v))
}
