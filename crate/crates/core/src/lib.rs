//! Complexity-based classification of wavefunction branch decompositions.
//!
//! The crate is organised bottom-up:
//!
//! * [`qsim`]: dense statevector simulation, Pauli-string Hamiltonians and
//!   seeded random states/circuits.
//! * [`complexity`]: relative, distinguishability and interference
//!   complexities between two states: certified alphabet-relative lower bounds
//!   by exhaustive enumeration and witness upper bounds by variational search.
//! * [`branches`]: branch decompositions, good/robust verdicts and the
//!   inequality checks relating the complexities to each other and to the
//!   distinguishability of a pure state from its branched mixture.
//! * [`codes`]: approximate error-correction residuals, the code complexity
//!   floor and the rectangular surface-code rate model.
//! * [`dynamics`]: the complexity growth flow model, complexity tracking
//!   under Hamiltonian evolution, symmetry freezing and ETH statistics.
//! * [`examples`]: deterministic branch decomposition fixtures.

pub mod branches;
pub mod codes;
pub mod complexity;
pub mod dynamics;
mod error;
pub mod examples;
pub mod json;
pub mod qsim;

pub use error::{Error, Result};

/// Version stamped into every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
