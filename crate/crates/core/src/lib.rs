//! Bound states of diatomic molecules in the Tietz-Hua potential.
//!
//! [`model`] classifies a parameter set into one of five regimes;
//! [`spectrum`] solves each regime (closed form, transcendental
//! hypergeometric quantization, or the Morse limit); [`oracle`] is an
//! independent Numerov eigensolver used to cross-check every result.

// Reference constants keep their full published digits, and `!(x <= tol)`
// is used on purpose so that NaN fails the check.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod constants;
pub mod model;
pub mod oracle;
pub mod roots;
pub mod specfun;
pub mod spectrum;

pub use model::{classify_regime, Case, MoleculeParams, Regime, ScaledParams};
pub use spectrum::{BoundState, Method, SpectrumReport};
