//! Quantum finite automata for the language `L_n` of words over `{a, b}` in
//! which both letter counts are divisible by `n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`modular`] – exact integer helpers (gcd, modular division, prime
//!   factorisation) and numerical evaluators for quadratic exponential sums.
//! * [`circulant`] – circulant ("shift") matrices stored by first row, the
//!   Gauss-phase matrix `M_n`, the cyclic shift `F`, and a classifier for the
//!   sparse quadratic-phase circulants that all powers of `M_n` belong to.
//! * [`qfa`] – a generic measure-many 1-way QFA model and deterministic
//!   simulator with exact probability accounting.
//! * [`ln`] – the `n + 2` state QFA for `L_n`, the product-counter DFA and
//!   Hopcroft minimisation.
//! * [`verify`] – scan / lemma / comparison reports used by the `lnqfa` CLI.

pub mod circulant;
pub mod dense;
mod error;
pub mod ln;
pub mod modular;
pub mod qfa;
pub mod verify;

pub use circulant::{ShiftMatrix, SpecialShiftProfile};
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use ln::{DfaSpec, LnQfa, WordStats};
pub use modular::Factorization;
pub use qfa::{QfaSpec, RunResult, Superposition, Symbol};

pub use num_complex::Complex64;
