//! Smith normal form over the integers.
//!
//! The dense routine tracks both unimodular transforms and always pivots on
//! an entry of minimal absolute value, scanning row-major, so results are
//! reproducible. `invariant_factors` skips the transforms and first strips
//! unit pivots with a sparse elimination pass, which is what makes the
//! bar-resolution matrices tractable.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::invariants::AbelianInvariants;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, positive and forming a divisibility chain.
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Operations applied during a Smith reduction. The diag-only path uses the
/// no-op implementation.
trait Transforms {
    fn swap_rows(&mut self, a: usize, b: usize);
    fn swap_cols(&mut self, a: usize, b: usize);
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt);
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt);
    fn negate_row(&mut self, i: usize);
}

struct NoTransforms;

impl Transforms for NoTransforms {
    fn swap_rows(&mut self, _: usize, _: usize) {}
    fn swap_cols(&mut self, _: usize, _: usize) {}
    fn add_row(&mut self, _: usize, _: usize, _: &BigInt) {}
    fn add_col(&mut self, _: usize, _: usize, _: &BigInt) {}
    fn negate_row(&mut self, _: usize) {}
}

/// Left transform acts on rows of `u`, right transform on columns of `v`.
struct Tracked {
    u: IntMatrix,
    v: IntMatrix,
}

impl Transforms for Tracked {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
    }
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.u.add_row_multiple(target, source, factor);
    }
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.v.add_col_multiple(target, source, factor);
    }
    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
    }
}

/// Computes the Smith normal form of `a` together with its transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut t = Tracked {
        u: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
    };
    let diag = reduce(&mut d, &mut t);
    SmithForm {
        u: t.u,
        d,
        v: t.v,
        diag,
    }
}

/// Position of a nonzero entry of minimal absolute value in `d[t.., t..]`.
fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => e.magnitude() < d[b].magnitude(),
            };
            if better {
                best = Some((i, j));
                if e.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn reduce(d: &mut IntMatrix, tr: &mut impl Transforms) -> Vec<BigInt> {
    let (m, n) = (d.rows(), d.cols());
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        tr.swap_rows(t, pi);
        d.swap_cols(t, pj);
        tr.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                tr.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                tr.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let mut best = (t, t);
                for i in t..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].magnitude() < d[best].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].magnitude() < d[best].magnitude() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                tr.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                tr.swap_cols(t, best.1);
                continue;
            }
            // enforce divisibility on the remaining block
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    tr.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            tr.negate_row(t);
        }
        t += 1;
    }
    (0..t).map(|i| d[(i, i)].clone()).collect()
}

/// Nonzero Smith diagonal entries of `a` (units included), without transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (units, rest) = strip_unit_pivots(a);
    let mut rest = rest;
    let mut diag = vec![BigInt::one(); units];
    diag.extend(reduce(&mut rest, &mut NoTransforms));
    diag
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Invariants of `Z^rows / im(a)`.
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianInvariants {
    let diag = invariant_factors(a);
    AbelianInvariants::from_chain(a.rows() - diag.len(), diag)
}

/// Homology at the middle of `C_{n+1} --incoming--> C_n --outgoing--> C_{n-1}`.
pub fn homology_invariants(
    chain_rank: usize,
    outgoing: &IntMatrix,
    incoming: &IntMatrix,
) -> Result<AbelianInvariants> {
    if outgoing.cols() != chain_rank || incoming.rows() != chain_rank {
        return Err(Error::DimensionMismatch(format!(
            "homology at a rank-{chain_rank} module with maps {}x{} and {}x{}",
            outgoing.rows(),
            outgoing.cols(),
            incoming.rows(),
            incoming.cols()
        )));
    }
    let out_rank = rank(outgoing);
    let diag = invariant_factors(incoming);
    Ok(AbelianInvariants::from_chain(
        chain_rank - out_rank - diag.len(),
        diag,
    ))
}

type SparseRow = Vec<(usize, BigInt)>;

/// Eliminates unit pivots sparsely. Returns the number of unit pivots and
/// the dense remainder, whose Smith form completes that of `a`.
fn strip_unit_pivots(a: &IntMatrix) -> (usize, IntMatrix) {
    let mut rows: Vec<SparseRow> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(j, e)| (j, e.clone()))
                .collect()
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].insert(i);
        }
    }
    let mut alive = vec![true; a.rows()];
    let mut units = 0;
    loop {
        // sparsest row holding a unit, then the unit in the sparsest column
        let mut choice: Option<(usize, usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !alive[i] || row.is_empty() {
                continue;
            }
            if let Some((ri, ..)) = choice {
                if rows[ri].len() <= row.len() {
                    continue;
                }
            }
            let unit = row
                .iter()
                .filter(|(_, e)| e.magnitude().is_one())
                .min_by_key(|(j, _)| (col_rows[*j].len(), *j));
            if let Some((j, _)) = unit {
                choice = Some((i, *j, row.len(), col_rows[*j].len()));
                if row.len() == 1 {
                    break;
                }
            }
        }
        let Some((pi, pj, ..)) = choice else { break };
        units += 1;
        alive[pi] = false;
        let pivot_row = std::mem::take(&mut rows[pi]);
        let pivot_val = pivot_row.iter().find(|(j, _)| *j == pj).unwrap().1.clone();
        for (j, _) in &pivot_row {
            col_rows[*j].remove(&pi);
        }
        let targets: Vec<usize> = col_rows[pj].iter().copied().collect();
        for r in targets {
            let coeff = &rows[r].iter().find(|(j, _)| *j == pj).unwrap().1;
            // pivot is ±1, so the multiplier is exact
            let factor = -(coeff * &pivot_val);
            let old: BTreeSet<usize> = rows[r].iter().map(|(j, _)| *j).collect();
            rows[r] = axpy(&rows[r], &pivot_row, &factor);
            let new: BTreeSet<usize> = rows[r].iter().map(|(j, _)| *j).collect();
            for j in old.difference(&new) {
                col_rows[*j].remove(&r);
            }
            for j in new.difference(&old) {
                col_rows[*j].insert(r);
            }
        }
        // column pj is now only in the pivot row; column operations clear the
        // rest of that row without touching any other row
        debug_assert!(col_rows[pj].is_empty());
    }
    let live_rows: Vec<usize> = (0..a.rows())
        .filter(|&i| alive[i] && !rows[i].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..a.cols()).filter(|&j| !col_rows[j].is_empty()).collect();
    let col_index: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &i) in live_rows.iter().enumerate() {
        for (j, e) in &rows[i] {
            rest[(k, col_index[j])] = e.clone();
        }
    }
    (units, rest)
}

/// `x + factor * y` on sorted sparse rows.
fn axpy(x: &SparseRow, y: &SparseRow, factor: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let ja = x.get(a).map(|e| e.0).unwrap_or(usize::MAX);
        let jb = y.get(b).map(|e| e.0).unwrap_or(usize::MAX);
        if ja < jb {
            out.push(x[a].clone());
            a += 1;
        } else if jb < ja {
            out.push((jb, &y[b].1 * factor));
            b += 1;
        } else {
            let v = &x[a].1 + &y[b].1 * factor;
            if !v.is_zero() {
                out.push((ja, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Solves `A x = b` over the integers.
///
/// Returns `Ok(None)` when no integral solution exists. The solution is the
/// one whose Smith coordinates `V^{-1} x` vanish outside the rank.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let r = snf.rank();
    if ub[r..].iter().any(|e| !e.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        if !(&ub[i] % &snf.diag[i]).is_zero() {
            return Ok(None);
        }
        y[i] = &ub[i] / &snf.diag[i];
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}
