//! Exact invariants for the CP²-stable classification of closed 4-manifolds.
//!
//! Everything is computed over `Z` with arbitrary-precision integers:
//! Smith and Hermite forms, group rings of finite abelian groups times free
//! abelian groups, chain complexes of free modules, twisted group homology,
//! `Ext¹` classes of `π₂`, and the lens-space and aspherical classifiers.

pub mod chain_complex;
pub mod classifier;
pub mod error;
pub mod extensions;
pub mod group_homology;
pub mod group_ring;
pub mod interface;
pub mod linalg;
pub mod manifolds;

pub use chain_complex::LambdaComplex;
pub use classifier::{
    bordism_group, classify_aspherical, classify_lens_family, hopf_check, kreck_equivalent,
    ManifoldRecord,
};
pub use error::{Error, Result};
pub use extensions::{ExtClass, FPModule, LatticeModule};
pub use group_homology::{group_homology, Resolution};
pub use group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
pub use interface::{emit_complex, parse_complex};
pub use linalg::{AbelianInvariants, IntMatrix, Lattice, SmithForm};
pub use manifolds::LensSpace;
