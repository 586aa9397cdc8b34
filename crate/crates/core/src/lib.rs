//! Exact arithmetic for Γ-graded rings and their graded K₁.
//!
//! The crate is organised bottom-up:
//!
//! * [`grading`] – finitely generated abelian grading groups `Z^r × ∏ Z/nᵢ`.
//! * [`ring`] – graded rings, homogeneous elements, graded ideals, quotients and doubles.
//! * [`matrix`] – matrices obeying the shift-family degree law, elementary generators,
//!   stabilisation and suspension.
//! * [`whitehead`] – factorisation certificates: words in elementary letters that multiply
//!   out exactly to a claimed block matrix.
//! * [`engine`] – finite matrix groups (exhaustive closure and stabiliser chains), local K₁,
//!   relative K₁, exactness, perfectness and the Γ-action.
//! * [`sampling`] – random well-typed instances for fuzzing.
//!
//! Everything is `no_std` + `alloc`. The optional `parallel` feature pulls in `std` and
//! `rayon` to expand closure frontiers on several threads; results do not depend on it.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod engine;
pub mod error;
pub mod grading;
pub mod matrix;
pub mod ring;
pub mod sampling;
pub mod whitehead;

mod arith;

pub use error::{Error, Result};
pub use grading::{GradeElement, GradeGroup};
pub use matrix::{ElementaryGenerator, GradedMatrix, ShiftFamily};
pub use ring::{GradedIdeal, GradedRing, HomogeneousElement, Payload, RingKind};
pub use whitehead::{Certificate, ElementaryWord, Letter};
