//! Exact discrete Darboux factorization for second-order difference
//! operators of hypergeometric type.
//!
//! Everything here is exact rational arithmetic: operators are finite sums
//! `Σ a_k(x) E^k` with polynomial coefficients over `Q`, and every identity
//! (factorization, factor swap, intertwining, discrete Riccati, dressing
//! chain, ladder relations) is checked as a structural equality of
//! normalized values rather than by floating-point sampling.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod darboux;
pub mod diffop;
pub mod families;
pub mod ladder;
pub mod poly;
pub mod rational;
pub mod reference;
pub mod suite;

pub use darboux::{factor_pair, Branch, DarbouxError, FactorizationData, Perturbation, StepInputs};
pub use diffop::DiffOp;
pub use families::{FamilyError, FamilyKind, FamilySpec, GaugeSequence};
pub use ladder::{Direction, LadderError, LadderResult};
pub use poly::Poly;
pub use rational::{ParseRationalError, Rational};
