//! Finite matrix groups: packed arithmetic, closure, stabiliser chains, quotients and
//! local K₁ computations.

pub mod chain;
pub mod closure;
pub mod group;
pub mod k1;
pub mod quotient;
pub mod space;

pub use chain::StabilizerChain;
pub use closure::GroupSnapshot;
pub use group::{EngineConfig, MatrixGroup, Method, Strategy};
pub use k1::*;
pub use quotient::CosetSpace;
pub use space::{Element, MatrixSpace, Packed};
