//! Affine maps of finite groups.
//!
//! Groups are stored as dense Cayley tables. On top of that sit automorphism
//! group computation ([`autom`]), orders and invariants of affine maps
//! `x ↦ x^α·g` ([`affine`]), exact linear algebra over prime fields including
//! the primary rational canonical form ([`linfp`]), and a verification harness
//! that replays the structural theorems about affine maps of large order
//! against a catalog of groups and exhaustive sweeps of `GL(n, p)` ([`verify`]).
//!
//! All actions are right actions: `x^α` is the image of `x` under `α`,
//! `αβ` means "apply `α`, then `β`", and conjugation is `x^g = g⁻¹xg`.

pub mod affine;
pub mod autom;
mod error;
pub mod group;
pub mod linfp;
pub mod numtheory;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Elem, Group, Subgroup};
