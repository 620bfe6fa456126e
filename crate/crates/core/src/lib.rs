//! Exact root data and truncated denominator identities for Lorentzian
//! Kac–Moody algebras.

pub mod chamber;
pub mod data;
pub mod lattice;
pub mod modular;
pub mod registry;
pub mod series;
pub mod verify;
mod linalg;
