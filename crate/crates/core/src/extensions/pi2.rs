use std::sync::Arc;

use num_bigint::BigInt;

use super::ext::{verify_short_exact, ExtClass, ExtContext};
use super::module::{FPModule, LatticeModule};
use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::linalg::{kernel_lattice, AbelianInvariants, IntMatrix, Lattice};

fn check_four_complex(c: &LambdaComplex) -> Result<()> {
    c.group().require_finite()?;
    if c.top_degree() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            actual: c.top_degree(),
        });
    }
    Ok(())
}

/// The class of `0 → ker d_2 → C_2 ⊕ H_2(C) → coker d_3 → 0` in
/// `Ext¹_Λ(coker d_3, ker d_2)`, represented by `d_3` viewed as a map
/// `C_3 → ker d_2`.
pub fn pi2_extension(c: &LambdaComplex) -> Result<ExtClass> {
    check_four_complex(c)?;
    let group = c.group();
    let n = group.order().unwrap() as usize;
    let d3 = c.boundary(3);
    let d3x = c.expanded_boundary(3)?;
    let cycles = kernel_lattice(&c.expanded_boundary(2)?);
    let source = LatticeModule::from_subquotient(group, c.rank(2), &cycles, &Lattice::zero(cycles.dim()))?;
    let target = FPModule::new(group.clone(), d3)?;
    let context = Arc::new(ExtContext::resolve(target, source)?);
    let mut rep = Vec::with_capacity(context.hom_dim());
    for j in 0..c.rank(3) {
        let col = d3x.column(j * n);
        rep.extend(cycles.coordinates(&col).ok_or(Error::NotAComplex { degree: 3 })?);
    }
    ExtClass::new(context, rep)
}

/// Abelian invariants of the three terms of the π₂ sequence and whether the
/// explicitly constructed maps make it exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi2Sequence {
    pub kernel_d2: AbelianInvariants,
    pub middle: AbelianInvariants,
    pub cokernel_d3: AbelianInvariants,
    pub h2: AbelianInvariants,
    pub exact: bool,
}

impl Pi2Sequence {
    /// Whether the middle term has the invariants of the split extension.
    pub fn splits_on_invariants(&self) -> bool {
        self.middle == self.kernel_d2.direct_sum(&self.cokernel_d3)
    }
}

/// Builds `ker d_2 → C_2 ⊕ H_2 → coker d_3` with `s ↦ (s, -[s])` and
/// `(c, [h]) ↦ [c + h]`, and verifies exactness over `Z`.
pub fn pi2_sequence(c: &LambdaComplex) -> Result<Pi2Sequence> {
    check_four_complex(c)?;
    let big_n = c.rank(2) * c.group().order().unwrap() as usize;
    let cycles = kernel_lattice(&c.expanded_boundary(2)?);
    let image = Lattice::column_span(&c.expanded_boundary(3)?);
    let full = Lattice::full(big_n);

    let embed_second = |v: &[BigInt]| {
        let mut out = vec![BigInt::default(); big_n];
        out.extend_from_slice(v);
        out
    };
    let xb = Lattice::from_generators(
        2 * big_n,
        full.basis()
            .iter()
            .map(|v| {
                let mut out = v.clone();
                out.extend(vec![BigInt::default(); big_n]);
                out
            })
            .chain(cycles.basis().iter().map(|v| embed_second(v))),
    );
    let rb = Lattice::from_generators(2 * big_n, image.basis().iter().map(|v| embed_second(v)));
    let id = IntMatrix::identity(big_n);
    let f = id.vstack(&id.scale(&BigInt::from(-1)))?;
    let g = id.hstack(&id)?;
    let exact = verify_short_exact(
        (&cycles, &Lattice::zero(big_n)),
        (&xb, &rb),
        (&full, &image),
        &f,
        &g,
    )?;
    let h2 = cycles.quotient_invariants(&image)?;
    Ok(Pi2Sequence {
        kernel_d2: AbelianInvariants::free(cycles.rank()),
        middle: AbelianInvariants::free(big_n).direct_sum(&h2),
        cokernel_d3: full.quotient_invariants(&image)?,
        h2,
        exact,
    })
}
