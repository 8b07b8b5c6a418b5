use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ext::{ExtClass, ExtContext};
use super::module::{FPModule, LatticeModule};
use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::group_homology::Resolution;
use crate::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
use crate::linalg::{kernel_basis, kernel_lattice, solve_integer, IntMatrix, Lattice};

/// Extra kernel element added to each lifted column: receives the kernel
/// basis (as columns) and returns coefficients in it.
pub type LiftChoice<'a> = dyn FnMut(&IntMatrix) -> Vec<BigInt> + 'a;

/// The diagram chase sending a 4-cycle of `Z^w ⊗ D` to a class in
/// `Ext¹_Λ(coker δ_2^*, π_2(K))`, for a resolution `D` of `Z` and a
/// 2-complex `K` with `π_1 K = π`.
pub struct PsiChase {
    group: Group,
    w: OrientationChar,
    /// `δ'_i` for `i = 0..=4`: the resolution boundaries under `g ↦ w(g) g`.
    delta: Vec<LambdaMatrix>,
    d1: LambdaMatrix,
    d2: LambdaMatrix,
    d1x: IntMatrix,
    d2x: IntMatrix,
    d1_kernel: IntMatrix,
    d2_kernel: IntMatrix,
    pi2: Lattice,
    context: Arc<ExtContext>,
}

impl PsiChase {
    pub fn new(resolution: &Resolution, k: &LambdaComplex, w: &OrientationChar) -> Result<Self> {
        let group = resolution.group().clone();
        group.require_finite()?;
        if k.group() != &group {
            return Err(Error::GroupMismatch(format!(
                "resolution over Z[{group}] and complex over Z[{}]",
                k.group()
            )));
        }
        if resolution.bound() < 4 {
            return Err(Error::DegreeOutOfRange {
                degree: 4,
                max: resolution.bound(),
            });
        }
        if k.top_degree() != 2 || k.rank(0) != 1 {
            return Err(Error::WrongLength {
                expected: 2,
                actual: k.top_degree(),
            });
        }
        if w.signs().len() != group.num_generators() {
            return Err(Error::InvalidCharacter(format!("{} values for {group}", w.signs().len())));
        }
        let delta: Vec<LambdaMatrix> = (0..=4)
            .map(|i| resolution.complex().boundary(i).map(|x| x.sign_twist(w)))
            .collect();
        let d1 = k.boundary(1);
        let d2 = k.boundary(2);
        let d1x = d1.expand(&group)?;
        let d2x = d2.expand(&group)?;
        let pi2 = kernel_lattice(&d2x);
        let source = LatticeModule::from_subquotient(&group, k.rank(2), &pi2, &Lattice::zero(pi2.dim()))?;
        let target = FPModule::new(group.clone(), delta[2].transpose())?;
        let context = Arc::new(ExtContext::new(target, source, delta[1].transpose())?);
        Ok(PsiChase {
            d1_kernel: kernel_basis(&d1x),
            d2_kernel: kernel_basis(&d2x),
            group,
            w: w.clone(),
            delta,
            d1,
            d2,
            d1x,
            d2x,
            pi2,
            context,
        })
    }

    pub fn context(&self) -> &Arc<ExtContext> {
        &self.context
    }

    /// Chase with the deterministic lift from `solve_integer`.
    pub fn chase(&self, z: &[BigInt]) -> Result<ExtClass> {
        self.chase_with(z, &mut |k: &IntMatrix| vec![BigInt::zero(); k.cols()])
    }

    /// Chase with `choice` perturbing every lift by a kernel element.
    pub fn chase_with(&self, z: &[BigInt], choice: &mut LiftChoice<'_>) -> Result<ExtClass> {
        let g = &self.group;
        let n4 = self.delta[4].cols();
        if z.len() != n4 {
            return Err(Error::DimensionMismatch(format!(
                "cycle of length {} in a degree with {n4} generators",
                z.len()
            )));
        }
        let boundary = self.delta[4].augment(&OrientationChar::trivial(g)).mul_vec(z)?;
        if boundary.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle(format!(
                "the degree-4 boundary of {z:?} is nonzero"
            )));
        }
        let x40 = LambdaMatrix::from_fn(1, n4, |_, j| RingElement::constant(g, z[j].clone()));
        let y = x40.mul(&self.delta[4].transpose(), g)?;
        let x31 = self.lift(&self.d1, &self.d1x, &self.d1_kernel, &y, choice)?;
        let y = x31.mul(&self.delta[3].transpose(), g)?;
        let x22 = self.lift(&self.d2, &self.d2x, &self.d2_kernel, &y, choice)?;
        let x = x22.mul(&self.delta[2].transpose(), g)?;
        let mut rep = Vec::with_capacity(self.context.hom_dim());
        for j in 0..x.cols() {
            let col = column_vector(g, &x, j)?;
            rep.extend(self.pi2.coordinates(&col).ok_or_else(|| {
                Error::NotACycle("chase left the kernel of d_2".into())
            })?);
        }
        ExtClass::new(self.context.clone(), rep)
    }

    /// Solves `d X = Y` column by column over `Λ`.
    fn lift(
        &self,
        d: &LambdaMatrix,
        dx: &IntMatrix,
        kernel: &IntMatrix,
        y: &LambdaMatrix,
        choice: &mut LiftChoice<'_>,
    ) -> Result<LambdaMatrix> {
        let g = &self.group;
        let mut cols = Vec::with_capacity(y.cols());
        for j in 0..y.cols() {
            let target = column_vector(g, y, j)?;
            let mut x = solve_integer(dx, &target)?.ok_or_else(|| {
                Error::NotACycle("intermediate class does not lift; the 2-complex is not simply connected in its cover".into())
            })?;
            let coeffs = choice(kernel);
            let shift = kernel.mul_vec(&coeffs)?;
            for (a, b) in x.iter_mut().zip(shift) {
                *a += b;
            }
            cols.push(x);
        }
        LambdaMatrix::from_expanded_columns(g, d.cols(), &cols)
    }

    pub fn w(&self) -> &OrientationChar {
        &self.w
    }
}

fn column_vector(g: &Group, m: &LambdaMatrix, j: usize) -> Result<Vec<BigInt>> {
    let mut v = Vec::new();
    for i in 0..m.rows() {
        v.extend(m.get(i, j).to_vector(g)?);
    }
    Ok(v)
}

/// One-shot chase; see [`PsiChase`].
pub fn psi_chase(
    resolution: &Resolution,
    k: &LambdaComplex,
    w: &OrientationChar,
    z: &[BigInt],
) -> Result<ExtClass> {
    PsiChase::new(resolution, k, w)?.chase(z)
}
