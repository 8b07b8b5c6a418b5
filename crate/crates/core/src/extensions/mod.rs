//! Modules over `Λ = Z[π]` for finite `π`, `Hom` and `Ext¹`, extension
//! classes and their Baer sums, the π₂ extension of a 4-dimensional complex,
//! the ψ diagram chase, and the `E_m` family.

mod em;
mod ext;
mod module;
mod pi2;
mod psi;

pub use em::{em_torsion, em_torsion_closed_form, recover_m, EmFamily};
pub use ext::{
    baer_sum, ext1, ext1_into, ext_vanishing_check, hom_into, hom_lambda, verify_short_exact,
    ExtClass, ExtContext, Extension, HomGroup,
};
pub use module::{lambda_cover, FPModule, LatticeModule};
pub use pi2::{pi2_extension, pi2_sequence, Pi2Sequence};
pub use psi::{psi_chase, LiftChoice, PsiChase};
