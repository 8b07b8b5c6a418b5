use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::element::RingElement;
use super::group::{Group, OrientationChar};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A matrix over `ZG`, row-major. An `r x c` matrix is a map `Λ^c → Λ^r`
/// acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl LambdaMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LambdaMatrix {
            rows,
            cols,
            entries: vec![RingElement::zero(); rows * cols],
        }
    }

    pub fn identity(group: &Group, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                RingElement::one(group)
            } else {
                RingElement::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LambdaMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(LambdaMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// A `1 x 1` matrix.
    pub fn scalar(x: RingElement) -> Self {
        LambdaMatrix {
            rows: 1,
            cols: 1,
            entries: vec![x],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn belongs_to(&self, group: &Group) -> bool {
        self.entries.iter().all(|e| e.belongs_to(group))
    }

    pub fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Self {
        LambdaMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &LambdaMatrix, group: &Group) -> Result<LambdaMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{} over the group ring",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(RingElement::zero(), |acc, k| {
                acc + self.get(i, k).mul(other.get(k, j), group)
            })
        }))
    }

    pub fn add(&self, other: &LambdaMatrix) -> Result<LambdaMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{} over the group ring",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn neg(&self) -> LambdaMatrix {
        self.map(|x| -x)
    }

    /// Integer matrix of the underlying `Z`-linear map; block `(i, j)` is the
    /// regular representation of entry `(i, j)`.
    pub fn expand(&self, group: &Group) -> Result<IntMatrix> {
        let n = group.require_finite()? as usize;
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let block = e.regular_representation(group)?;
                for a in 0..n {
                    for b in 0..n {
                        out[(i * n + a, j * n + b)] = block[(a, b)].clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise twisted augmentation: the boundary of `Z^w ⊗_Λ C`.
    pub fn augment(&self, w: &OrientationChar) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augment(w))
    }

    /// Rebuilds a matrix from expanded coordinates of its columns.
    pub fn from_expanded_columns(group: &Group, rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let n = group.require_finite()? as usize;
        let mut out = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows * n {
                return Err(Error::DimensionMismatch(format!(
                    "expanded column of length {} for {rows} generators",
                    col.len()
                )));
            }
            for i in 0..rows {
                out.set(i, j, RingElement::from_vector(group, &col[i * n..(i + 1) * n])?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_is_multiplicative() {
        let g = Group::product(&[2, 2]).unwrap();
        let a = RingElement::generator(&g, 0);
        let b = RingElement::generator(&g, 1) - RingElement::one(&g);
        let m = LambdaMatrix::from_rows(vec![vec![a.clone(), b.clone()]]).unwrap();
        let n = LambdaMatrix::from_rows(vec![vec![b], vec![a]]).unwrap();
        let prod = m.mul(&n, &g).unwrap();
        assert_eq!(
            prod.expand(&g).unwrap(),
            m.expand(&g).unwrap().mul(&n.expand(&g).unwrap()).unwrap()
        );
    }

    #[test]
    fn expanded_columns_round_trip() {
        let g = Group::cyclic(3).unwrap();
        let m = LambdaMatrix::from_rows(vec![vec![RingElement::norm(&g, 0)], vec![
            RingElement::generator(&g, 0),
        ]])
        .unwrap();
        let cols: Vec<Vec<BigInt>> = (0..1)
            .map(|_| {
                let mut v = m.get(0, 0).to_vector(&g).unwrap();
                v.extend(m.get(1, 0).to_vector(&g).unwrap());
                v
            })
            .collect();
        assert_eq!(LambdaMatrix::from_expanded_columns(&g, 2, &cols).unwrap(), m);
    }
}
