use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::module::{unit_generator, FPModule, LatticeModule};
use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::group_ring::LambdaMatrix;
use crate::linalg::{solve_integer, AbelianInvariants, IntMatrix, Lattice};

/// `R^k` inside `(Z^dim)^k`.
pub(crate) fn power_lattice(r: &Lattice, k: usize) -> Lattice {
    let dim = r.dim();
    let mut gens = Vec::with_capacity(k * r.rank());
    for block in 0..k {
        for b in r.basis() {
            let mut v = vec![BigInt::default(); dim * k];
            v[block * dim..(block + 1) * dim].clone_from_slice(b);
            gens.push(v);
        }
    }
    Lattice::from_generators(dim * k, gens)
}

/// For `d: Λ^c → Λ^r`, the map `Hom(Λ^r, N) = N^r → N^c`, `x ↦ x ∘ d`.
pub(crate) fn dual_map(d: &LambdaMatrix, n: &LatticeModule) -> IntMatrix {
    let dim = n.dim();
    let mut out = IntMatrix::zeros(d.cols() * dim, d.rows() * dim);
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let block = n.act(e);
            for a in 0..dim {
                for b in 0..dim {
                    out[(j * dim + a, i * dim + b)] = block[(a, b)].clone();
                }
            }
        }
    }
    out
}

fn same_group(m: &FPModule, n: &LatticeModule) -> Result<()> {
    if m.group() != n.group() {
        return Err(Error::GroupMismatch(format!(
            "modules over Z[{}] and Z[{}]",
            m.group(),
            n.group()
        )));
    }
    Ok(())
}

/// `Hom_Λ(M, N)` as an abelian group, with vectors in `N^a` generating it.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub invariants: AbelianInvariants,
    pub generators: Vec<Vec<BigInt>>,
}

pub fn hom_lambda(m: &FPModule, n: &FPModule) -> Result<HomGroup> {
    hom_into(m, n.model())
}

/// `Hom_Λ(M, N)` for `N` given as a lattice module.
pub fn hom_into(m: &FPModule, n: &LatticeModule) -> Result<HomGroup> {
    same_group(m, n)?;
    let f = dual_map(m.presentation(), n);
    let z = Lattice::preimage(&f, &power_lattice(n.relations(), m.num_relations()))?;
    let b = power_lattice(n.relations(), m.num_generators());
    Ok(HomGroup {
        invariants: z.quotient_invariants(&b)?,
        generators: z.basis().to_vec(),
    })
}

/// The data fixing a model of `Ext¹_Λ(T, S)`: a partial free resolution
/// `P_2 → P_1 → P_0 → T` and the cocycle and coboundary lattices in
/// `Hom(P_1, S) = S^{rank P_1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtContext {
    target: FPModule,
    source: LatticeModule,
    syzygies: LambdaMatrix,
    cocycles: Lattice,
    coboundaries: Lattice,
}

impl ExtContext {
    /// `P_1 → P_0` is the presentation of `target`; `syzygies: P_2 → P_1`
    /// must map onto its kernel.
    pub fn new(target: FPModule, source: LatticeModule, syzygies: LambdaMatrix) -> Result<Self> {
        same_group(&target, &source)?;
        let group = target.group().clone();
        if syzygies.rows() != target.num_relations() {
            return Err(Error::DimensionMismatch(format!(
                "syzygies with {} rows for {} relations",
                syzygies.rows(),
                target.num_relations()
            )));
        }
        let composite = target.presentation().mul(&syzygies, &group)?;
        if !composite.is_zero() {
            return Err(Error::NotAComplex { degree: 2 });
        }
        let r = source.relations();
        let d1_star = dual_map(target.presentation(), &source);
        let d2_star = dual_map(&syzygies, &source);
        let cocycles = Lattice::preimage(&d2_star, &power_lattice(r, syzygies.cols()))?;
        let coboundaries = Lattice::full(d1_star.cols())
            .image(&d1_star)?
            .sum(&power_lattice(r, target.num_relations()));
        Ok(ExtContext {
            target,
            source,
            syzygies,
            cocycles,
            coboundaries,
        })
    }

    /// Context with the syzygies computed from the presentation.
    pub fn resolve(target: FPModule, source: LatticeModule) -> Result<Self> {
        let syzygies = target.relation_syzygies()?;
        Self::new(target, source, syzygies)
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn source(&self) -> &LatticeModule {
        &self.source
    }

    pub fn syzygies(&self) -> &LambdaMatrix {
        &self.syzygies
    }

    pub fn cocycles(&self) -> &Lattice {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Lattice {
        &self.coboundaries
    }

    /// Invariants of the Ext group.
    pub fn ext_invariants(&self) -> AbelianInvariants {
        self.cocycles
            .quotient_invariants(&self.coboundaries)
            .expect("coboundaries are cocycles")
    }

    /// Length of a representative vector.
    pub fn hom_dim(&self) -> usize {
        self.target.num_relations() * self.source.dim()
    }
}

/// `Ext¹_Λ(M, N)`.
pub fn ext1(m: &FPModule, n: &FPModule) -> Result<AbelianInvariants> {
    ext1_into(m, n.model())
}

pub fn ext1_into(m: &FPModule, n: &LatticeModule) -> Result<AbelianInvariants> {
    Ok(ExtContext::resolve(m.clone(), n.clone())?.ext_invariants())
}

/// An element of `Ext¹_Λ(T, S)` in a fixed context.
#[derive(Clone)]
pub struct ExtClass {
    context: Arc<ExtContext>,
    representative: Vec<BigInt>,
}

impl ExtClass {
    /// Fails with `NotACycle` unless the representative is a cocycle.
    pub fn new(context: Arc<ExtContext>, representative: Vec<BigInt>) -> Result<Self> {
        if representative.len() != context.hom_dim() {
            return Err(Error::DimensionMismatch(format!(
                "representative of length {} in Hom coordinates of size {}",
                representative.len(),
                context.hom_dim()
            )));
        }
        if !context.cocycles.contains(&representative) {
            return Err(Error::NotACycle(
                "representative does not vanish on the syzygies".into(),
            ));
        }
        Ok(ExtClass {
            context,
            representative,
        })
    }

    pub fn zero(context: Arc<ExtContext>) -> Self {
        let n = context.hom_dim();
        ExtClass {
            context,
            representative: vec![BigInt::default(); n],
        }
    }

    pub fn context(&self) -> &Arc<ExtContext> {
        &self.context
    }

    pub fn representative(&self) -> &[BigInt] {
        &self.representative
    }

    /// Canonical representative of the class.
    pub fn normal_form(&self) -> Vec<BigInt> {
        self.context.coboundaries.reduce(&self.representative)
    }

    pub fn is_trivial(&self) -> bool {
        self.context.coboundaries.contains(&self.representative)
    }

    fn check_context(&self, other: &ExtClass) -> Result<()> {
        if Arc::ptr_eq(&self.context, &other.context) || *self.context == *other.context {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Class equality by membership of the difference in the coboundaries.
    pub fn equals(&self, other: &ExtClass) -> Result<bool> {
        self.check_context(other)?;
        let diff: Vec<BigInt> = self
            .representative
            .iter()
            .zip(&other.representative)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.context.coboundaries.contains(&diff))
    }

    pub fn baer_sum(&self, other: &ExtClass) -> Result<ExtClass> {
        self.check_context(other)?;
        Ok(ExtClass {
            context: self.context.clone(),
            representative: self
                .representative
                .iter()
                .zip(&other.representative)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn negate(&self) -> ExtClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, m: &BigInt) -> ExtClass {
        ExtClass {
            context: self.context.clone(),
            representative: self.representative.iter().map(|a| a * m).collect(),
        }
    }
}

impl PartialEq for ExtClass {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtClass")
            .field("normal_form", &self.normal_form())
            .field("trivial", &self.is_trivial())
            .finish()
    }
}

pub fn baer_sum(e1: &ExtClass, e2: &ExtClass) -> Result<ExtClass> {
    e1.baer_sum(e2)
}

/// An extension `0 → S → E → T → 0` of lattice modules with the maps in
/// ambient coordinates. `T` is modelled by its presentation.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: LatticeModule,
    /// `S → E`
    pub inclusion: IntMatrix,
    /// `E → T`
    pub projection: IntMatrix,
}

impl Extension {
    /// The pushout of `P_0 ← P_1 → S` along `m` times the representative:
    /// `E = (P_0 ⊕ S) / {(∂a, -m x(a))}`.
    pub fn pushout(class: &ExtClass, m: &BigInt) -> Result<Self> {
        let ctx = class.context();
        let t = ctx.target();
        let s = ctx.source();
        let group = t.group();
        let p0 = t.model().dim();
        let sd = s.dim();
        let dim = p0 + sd;
        let n = group.order().unwrap() as usize;
        let d1 = t.presentation().expand(group)?;
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for r in s.relations().basis() {
            let mut v = vec![BigInt::default(); dim];
            v[p0..].clone_from_slice(r);
            gens.push(v);
        }
        let x = &class.representative;
        for j in 0..t.num_relations() {
            let xj = &x[j * sd..(j + 1) * sd];
            for g in group.elements()? {
                let mut v = vec![BigInt::default(); dim];
                let col = d1.column(j * n + group.index_of(&g));
                v[..p0].clone_from_slice(&col);
                let gx = s.element_action(&g).mul_vec(xj)?;
                for (slot, e) in v[p0..].iter_mut().zip(gx) {
                    *slot = -(m * e);
                }
                gens.push(v);
            }
        }
        let relations = Lattice::from_generators(dim, gens);
        let actions = t
            .model()
            .generator_actions()
            .iter()
            .zip(s.generator_actions())
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let middle = LatticeModule::new(group, dim, relations, actions)?;
        let inclusion = IntMatrix::zeros(p0, sd).vstack(&IntMatrix::identity(sd))?;
        let projection = IntMatrix::identity(p0).hstack(&IntMatrix::zeros(p0, sd))?;
        Ok(Extension {
            middle,
            inclusion,
            projection,
        })
    }

    /// Checks exactness of `0 → S → E → T → 0`.
    pub fn verify(&self, context: &ExtContext) -> Result<bool> {
        let s = context.source();
        let t = context.target().model();
        verify_short_exact(
            (&Lattice::full(s.dim()), s.relations()),
            (&Lattice::full(self.middle.dim()), self.middle.relations()),
            (&Lattice::full(t.dim()), t.relations()),
            &self.inclusion,
            &self.projection,
        )
    }

    /// The class of the extension, found by lifting the generators of `P_0`
    /// to `E` and pulling the relations back into `S`.
    pub fn class_in(&self, context: Arc<ExtContext>) -> Result<ExtClass> {
        let t = context.target();
        let group = t.group().clone();
        let t_rel = t.model().relations().basis_matrix();
        let lift_system = self.projection.hstack(&t_rel)?;
        let e_dim = self.middle.dim();
        let mut lifts = Vec::with_capacity(t.num_generators());
        for i in 0..t.num_generators() {
            let target = unit_generator(&group, t.num_generators(), i);
            let y = solve_integer(&lift_system, &target)?.ok_or_else(|| {
                Error::HypothesisViolated("projection is not onto the target".into())
            })?;
            lifts.push(y[..e_dim].to_vec());
        }
        let pull_system = self
            .inclusion
            .hstack(&self.middle.relations().basis_matrix())?;
        let sd = context.source().dim();
        let mut rep = Vec::with_capacity(context.hom_dim());
        for j in 0..t.num_relations() {
            let mut v = vec![BigInt::default(); e_dim];
            for (i, lift) in lifts.iter().enumerate() {
                let img = self.middle.act(t.presentation().get(i, j)).mul_vec(lift)?;
                for (a, b) in v.iter_mut().zip(img) {
                    *a += b;
                }
            }
            let y = solve_integer(&pull_system, &v)?.ok_or_else(|| {
                Error::HypothesisViolated("relation does not lift into the submodule".into())
            })?;
            rep.extend_from_slice(&y[..sd]);
        }
        ExtClass::new(context, rep)
    }
}

/// Exactness of `0 → A → B → C → 0` for subquotients `X/R` with maps given
/// on ambient coordinates.
pub fn verify_short_exact(
    a: (&Lattice, &Lattice),
    b: (&Lattice, &Lattice),
    c: (&Lattice, &Lattice),
    f: &IntMatrix,
    g: &IntMatrix,
) -> Result<bool> {
    let (xa, ra) = a;
    let (xb, rb) = b;
    let (xc, rc) = c;
    // maps are well defined
    if !xa.image(f)?.is_sublattice_of(xb)
        || !ra.image(f)?.is_sublattice_of(rb)
        || !xb.image(g)?.is_sublattice_of(xc)
        || !rb.image(g)?.is_sublattice_of(rc)
    {
        return Ok(false);
    }
    // injective
    let f_kernel = Lattice::preimage(f, rb)?.intersect(xa)?;
    if !f_kernel.is_sublattice_of(ra) {
        return Ok(false);
    }
    // g ∘ f = 0
    let gf = g.mul(f)?;
    if !xa.image(&gf)?.is_sublattice_of(rc) {
        return Ok(false);
    }
    // ker g ⊆ im f
    let g_kernel = Lattice::preimage(g, rc)?.intersect(xb)?;
    if !g_kernel.is_sublattice_of(&xa.image(f)?.sum(rb)) {
        return Ok(false);
    }
    // surjective
    Ok(xc.is_sublattice_of(&xb.image(g)?.sum(rc)))
}

/// Whether `Ext¹_Λ(H²(K; Λ^w), Λ)` vanishes for a 2-complex `K`.
pub fn ext_vanishing_check(k: &LambdaComplex) -> Result<bool> {
    let group = k.group();
    group.require_finite()?;
    if k.top_degree() > 2 {
        return Err(Error::WrongLength {
            expected: 2,
            actual: k.top_degree(),
        });
    }
    let k2 = if k.top_degree() < 2 {
        let mut ranks = k.ranks().to_vec();
        let mut bds = k.boundaries().to_vec();
        while ranks.len() < 3 {
            bds.push(LambdaMatrix::zeros(*ranks.last().unwrap(), 0));
            ranks.push(0);
        }
        LambdaComplex::new(group.clone(), k.w().clone(), ranks, bds)?
    } else {
        k.clone()
    };
    // H^2 is the cokernel of the dual of d_2, which is d_1 of the dual complex
    let dual = k2.twisted_dual();
    let h2 = FPModule::new(group.clone(), dual.boundary(1))?;
    let lambda = LatticeModule::free(group, 1)?;
    Ok(ext1_into(&h2, &lambda)?.is_trivial())
}
