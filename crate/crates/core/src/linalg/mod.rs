//! Exact integer linear algebra: matrices, Smith and Hermite forms,
//! kernels, cokernels and integral solving.

pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod smith;

pub use invariants::AbelianInvariants;
pub use lattice::{kernel_basis, kernel_lattice, subgroup_membership, Lattice};
pub use matrix::{int_vec, IntMatrix};
pub use smith::{
    cokernel_invariants, homology_invariants, invariant_factors, rank, smith_normal_form,
    solve_integer, SmithForm,
};
