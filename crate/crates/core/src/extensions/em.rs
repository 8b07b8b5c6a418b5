use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, invariant_factors, AbelianInvariants, IntMatrix};

/// Smith data of the augmented `d_3` of an aspherical complex:
/// `a` zero columns, diagonal entries `deltas`, `b` zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmFamily {
    pub a_free: usize,
    pub deltas: Vec<BigInt>,
    pub b: usize,
}

impl EmFamily {
    pub fn from_d3(d3_aug: &IntMatrix) -> Self {
        let deltas = invariant_factors(d3_aug);
        let k = deltas.len();
        EmFamily {
            a_free: d3_aug.cols() - k,
            deltas,
            b: d3_aug.rows() - k,
        }
    }

    fn rows(&self) -> usize {
        self.b + self.deltas.len()
    }

    /// `Z^w ⊗ E_m` from the Smith data: torsion `Z/gcd(δ_i, m)` and `a`
    /// copies of `Z/|m|`.
    pub fn torsion_for(&self, m: &BigInt) -> AbelianInvariants {
        let m = m.abs();
        let mut orders: Vec<BigInt> = self.deltas.iter().map(|d| d.gcd(&m)).collect();
        let free = if m.is_zero() {
            self.rows() + self.a_free
        } else {
            orders.extend(std::iter::repeat_n(m.clone(), self.a_free));
            self.rows()
        };
        AbelianInvariants::from_cyclic_orders(free, orders)
    }
}

/// `(Z^{rows} ⊕ Z^{cols}) / {(A a, m a)}`, the tensor of `E_m` with `Z^w`,
/// computed from its presentation.
pub fn em_torsion(d3_aug: &IntMatrix, m: &BigInt) -> AbelianInvariants {
    let presentation = d3_aug
        .vstack(&IntMatrix::identity(d3_aug.cols()).scale(m))
        .expect("matching column counts");
    cokernel_invariants(&presentation)
}

/// The same group from the Smith diagonal of `d3_aug`.
pub fn em_torsion_closed_form(d3_aug: &IntMatrix, m: &BigInt) -> AbelianInvariants {
    EmFamily::from_d3(d3_aug).torsion_for(m)
}

/// Candidate values of `|m|` whose `Z^w ⊗ E_m` has the torsion of `inv`.
///
/// Free ranks are ignored since the group is only known up to stabilisation.
/// For `|m| ≥ 2` the highest torsion is `|m|`, so the only candidates are
/// that value and `0`. With no torsion and all `δ_i = 1` the data cannot
/// separate `0` from `1`. An empty set means no `m` fits.
pub fn recover_m(inv: &AbelianInvariants, fam: &EmFamily) -> Result<BTreeSet<BigInt>> {
    if fam.a_free == 0 {
        return Err(Error::HypothesisViolated(
            "the augmented d_3 has no kernel (a = 0)".into(),
        ));
    }
    let target = inv.torsion_part();
    let candidates = [BigInt::zero(), BigInt::one(), inv.highest_torsion()];
    Ok(candidates
        .into_iter()
        .filter(|m| fam.torsion_for(m).torsion_part() == target)
        .collect())
}
