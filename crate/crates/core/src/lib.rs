//! Exact weight multiplicities, tensor products and level-k fusion rules for
//! simple Lie algebras, with the orbit-counting and group-covering checks
//! that go with them.

pub mod cartan;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod fusion;
mod linalg;
pub mod orbits;
pub mod report;
pub mod tensor;
pub mod verify;
pub mod weights;
pub mod weyl;

pub use cartan::{root_system, AffineWeight, AlgebraId, Family, RootSystem, Weight};
pub use error::{Error, Result};
