use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
use crate::linalg::{AbelianInvariants, IntMatrix, Lattice};

/// A `Λ`-module (finite group) given as `Z^dim / relations` with the action
/// of each cyclic generator as an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeModule {
    group: Group,
    dim: usize,
    relations: Lattice,
    generator_actions: Vec<IntMatrix>,
    /// Action of every group element, in enumeration order.
    element_actions: Vec<IntMatrix>,
}

impl LatticeModule {
    /// Checks that `relations` is stable under the actions and that each
    /// generator of order `o` acts with `o`-th power the identity modulo it.
    pub fn new(
        group: &Group,
        dim: usize,
        relations: Lattice,
        generator_actions: Vec<IntMatrix>,
    ) -> Result<Self> {
        group.require_finite()?;
        if generator_actions.len() != group.num_generators()
            || relations.dim() != dim
            || generator_actions.iter().any(|a| a.rows() != dim || a.cols() != dim)
        {
            return Err(Error::DimensionMismatch(format!(
                "module of rank {dim} needs {} square actions of that size",
                group.num_generators()
            )));
        }
        for (k, a) in generator_actions.iter().enumerate() {
            if !relations.image(a)?.is_sublattice_of(&relations) {
                return Err(Error::HypothesisViolated(format!(
                    "generator {k} does not preserve the relations"
                )));
            }
            let o = group.generator_order(k).unwrap();
            let mut p = IntMatrix::identity(dim);
            for _ in 0..o {
                p = a.mul(&p)?;
            }
            let diff = p.add(&IntMatrix::identity(dim).scale(&BigInt::from(-1)))?;
            if !diff.columns().iter().all(|c| relations.contains(c)) {
                return Err(Error::HypothesisViolated(format!(
                    "generator {k} does not have order dividing {o}"
                )));
            }
        }
        Ok(Self::assemble(group, dim, relations, generator_actions))
    }

    fn assemble(group: &Group, dim: usize, relations: Lattice, generator_actions: Vec<IntMatrix>) -> Self {
        let element_actions = group
            .elements()
            .expect("finite group")
            .iter()
            .map(|g| {
                let mut m = IntMatrix::identity(dim);
                for (k, &e) in g.iter().enumerate() {
                    for _ in 0..e {
                        m = generator_actions[k].mul(&m).expect("square actions");
                    }
                }
                m
            })
            .collect();
        LatticeModule {
            group: group.clone(),
            dim,
            relations,
            generator_actions,
            element_actions,
        }
    }

    /// `Λ^rank` in the standard expanded basis.
    pub fn free(group: &Group, rank: usize) -> Result<Self> {
        group.require_finite()?;
        let generator_actions = free_actions(group, rank)?;
        let dim = generator_actions.first().map_or(rank * group.order().unwrap() as usize, IntMatrix::rows);
        Ok(Self::assemble(group, dim, Lattice::zero(dim), generator_actions))
    }

    /// `Z^w`.
    pub fn twisted_integers(group: &Group, w: &OrientationChar) -> Result<Self> {
        let actions = w
            .signs()
            .iter()
            .map(|&s| IntMatrix::from_rows(&[vec![s as i64]]))
            .collect();
        Self::new(group, 1, Lattice::zero(1), actions)
    }

    /// `Z/m` with trivial action.
    pub fn trivial_cyclic(group: &Group, m: u64) -> Result<Self> {
        let actions = vec![IntMatrix::identity(1); group.num_generators()];
        Self::new(group, 1, Lattice::from_generators(1, [vec![BigInt::from(m)]]), actions)
    }

    /// `Z / B` for lattices `B ⊆ Z` inside `Λ^ambient_rank`, both stable
    /// under the group. Coordinates are those of the basis of `Z`.
    pub fn from_subquotient(group: &Group, ambient_rank: usize, z: &Lattice, b: &Lattice) -> Result<Self> {
        let ambient = free_actions(group, ambient_rank)?;
        let basis = z.basis();
        let generator_actions = ambient
            .iter()
            .map(|a| {
                let images = basis
                    .iter()
                    .map(|v| a.mul_vec(v))
                    .collect::<Result<Vec<_>>>()?;
                z.coordinate_matrix(&images).map_err(|_| {
                    Error::HypothesisViolated("subquotient is not stable under the group".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rel = z.coordinate_matrix(b.basis()).map_err(|_| {
            Error::HypothesisViolated("relations are not contained in the cycles".into())
        })?;
        Ok(Self::assemble(
            group,
            z.rank(),
            Lattice::column_span(&rel),
            generator_actions,
        ))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn generator_actions(&self) -> &[IntMatrix] {
        &self.generator_actions
    }

    pub fn invariants(&self) -> AbelianInvariants {
        Lattice::full(self.dim)
            .quotient_invariants(&self.relations)
            .expect("relations live in the ambient lattice")
    }

    pub fn element_action(&self, g: &[i64]) -> &IntMatrix {
        &self.element_actions[self.group.index_of(g)]
    }

    /// Integer matrix of multiplication by `λ`.
    pub fn act(&self, lambda: &RingElement) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.dim, self.dim);
        for (g, c) in lambda.terms() {
            out = out
                .add(&self.element_action(g).scale(c))
                .expect("square actions");
        }
        out
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.relations.contains(v)
    }

    /// `Λ`-span of the given vectors plus the relations.
    pub fn lambda_span(&self, vectors: &[Vec<BigInt>]) -> Lattice {
        let mut gens: Vec<Vec<BigInt>> = self.relations.basis().to_vec();
        for v in vectors {
            for a in &self.element_actions {
                gens.push(a.mul_vec(v).expect("vector length"));
            }
        }
        Lattice::from_generators(self.dim, gens)
    }

    /// Greedy choice of `Λ`-generators among `candidates` so that their
    /// `Λ`-span together with `start` contains every candidate.
    pub fn orbit_basis(&self, start: &Lattice, candidates: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let mut span = start.clone();
        let mut chosen = Vec::new();
        for v in candidates {
            if span.contains(v) {
                continue;
            }
            let orbit: Vec<Vec<BigInt>> = self
                .element_actions
                .iter()
                .map(|a| a.mul_vec(v).expect("vector length"))
                .collect();
            span = span.sum(&Lattice::from_generators(self.dim, orbit));
            chosen.push(v.clone());
        }
        chosen
    }

    /// A `Λ`-presentation `Λ^b → Λ^a → M → 0`.
    pub fn presentation(&self) -> Result<FPModule> {
        let unit: Vec<Vec<BigInt>> = IntMatrix::identity(self.dim).columns();
        let gens = self.orbit_basis(&self.relations, &unit);
        let a = gens.len();
        // column j|π| + idx(g) is g · gens[j]
        let mut cols = Vec::with_capacity(a * self.element_actions.len());
        for v in &gens {
            for act in &self.element_actions {
                cols.push(act.mul_vec(v)?);
            }
        }
        let phi = IntMatrix::from_columns(self.dim, &cols);
        let kernel = Lattice::preimage(&phi, &self.relations)?;
        let relations = lambda_cover(&self.group, a, &kernel)?;
        FPModule::new(self.group.clone(), relations)
    }
}

/// Actions of the cyclic generators on `Λ^rank` in expanded coordinates.
pub(crate) fn free_actions(group: &Group, rank: usize) -> Result<Vec<IntMatrix>> {
    (0..group.num_generators())
        .map(|k| {
            Ok(RingElement::generator(group, k)
                .regular_representation(group)?
                .block_diagonal(rank))
        })
        .collect()
}

/// `Λ`-generators of a `Λ`-stable sublattice of `Λ^rank`, as the columns of
/// a matrix over `Λ`.
pub fn lambda_cover(group: &Group, rank: usize, sub: &Lattice) -> Result<LambdaMatrix> {
    let free = LatticeModule::free(group, rank)?;
    let gens = free.orbit_basis(&Lattice::zero(free.dim()), sub.basis());
    LambdaMatrix::from_expanded_columns(group, rank, &gens)
}

/// A finitely presented `Λ`-module: the cokernel of `Λ^b → Λ^a` given by an
/// `a x b` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPModule {
    group: Group,
    presentation: LambdaMatrix,
    model: LatticeModule,
}

impl FPModule {
    pub fn new(group: Group, presentation: LambdaMatrix) -> Result<Self> {
        group.require_finite()?;
        if !presentation.belongs_to(&group) {
            return Err(Error::GroupMismatch(format!(
                "presentation entries outside Z[{group}]"
            )));
        }
        let generator_actions = free_actions(&group, presentation.rows())?;
        let dim = presentation.rows() * group.order().unwrap() as usize;
        let relations = Lattice::column_span(&presentation.expand(&group)?);
        let model = LatticeModule::assemble(&group, dim, relations, generator_actions);
        Ok(FPModule {
            group,
            presentation,
            model,
        })
    }

    /// `Λ^rank`.
    pub fn free(group: &Group, rank: usize) -> Result<Self> {
        Self::new(group.clone(), LambdaMatrix::zeros(rank, 0))
    }

    /// `Z^w = Λ / (g - w(g))`.
    pub fn twisted_integers(group: &Group, w: &OrientationChar) -> Result<Self> {
        let row = (0..group.num_generators())
            .map(|k| RingElement::generator(group, k) - RingElement::constant(group, w.signs()[k]))
            .collect();
        Self::new(group.clone(), LambdaMatrix::from_rows(vec![row])?)
    }

    /// `Z/m` with trivial action; `m = 0` gives `Z`.
    pub fn trivial_cyclic(group: &Group, m: u64) -> Result<Self> {
        let mut row: Vec<RingElement> = (0..group.num_generators())
            .map(|k| RingElement::generator(group, k) - RingElement::one(group))
            .collect();
        if m != 0 {
            row.push(RingElement::constant(group, m));
        }
        Self::new(group.clone(), LambdaMatrix::from_rows(vec![row])?)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn presentation(&self) -> &LambdaMatrix {
        &self.presentation
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.rows()
    }

    pub fn num_relations(&self) -> usize {
        self.presentation.cols()
    }

    /// The module as `Z^{a|π|} / (expanded relations)`.
    pub fn model(&self) -> &LatticeModule {
        &self.model
    }

    pub fn invariants(&self) -> AbelianInvariants {
        self.model.invariants()
    }

    /// Second syzygy step: `Λ^c → Λ^b` covering the kernel of the presentation.
    pub fn relation_syzygies(&self) -> Result<LambdaMatrix> {
        let n = self.group.order().unwrap() as usize;
        let expanded = self.presentation.expand(&self.group)?;
        let kernel = crate::linalg::kernel_lattice(&expanded);
        debug_assert_eq!(kernel.dim(), self.num_relations() * n);
        lambda_cover(&self.group, self.num_relations(), &kernel)
    }
}

/// Vector in `Λ^rank` (expanded) with a single `1` at generator `i`.
pub(crate) fn unit_generator(group: &Group, rank: usize, i: usize) -> Vec<BigInt> {
    let n = group.order().unwrap() as usize;
    let mut v = vec![BigInt::zero(); rank * n];
    v[i * n] = BigInt::one();
    v
}
