//! Exact computations in Burnside rings and double Burnside algebras of small
//! finite groups: subgroup lattices, Möbius functions, bisets and their
//! composition, families of idempotents, atoric p-groups and the evaluation
//! decomposition of biset functors.

pub mod bits;
pub mod atoric;
pub mod biset;
pub mod burnside;
pub mod catalog;
pub mod error;
pub mod group;
pub mod functor;
pub mod idempotents;
pub mod linalg;
pub mod poset;
pub mod rational;
pub mod verify;

pub use bits::Bits;
pub use error::{Error, Result};
pub use group::{Group, GroupMap, Subgroup};
pub use rational::Q;
