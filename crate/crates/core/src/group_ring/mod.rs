//! Finite abelian groups, their Laurent extensions, and the group ring
//! `Λ = ZG` with involution and twisted augmentation.

mod element;
mod group;
mod matrix;

pub use element::{
    involution, regular_representation, ring_mul, twisted_augmentation, RingElement,
};
pub use group::{Element, Group, OrientationChar};
pub use matrix::LambdaMatrix;
