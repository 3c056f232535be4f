//! Numerical simulator and protocol library for strong-driving-assisted
//! entanglement generation in cavity QED.
//!
//! The crate builds the driven Tavis-Cummings Hamiltonians at every frame and
//! approximation level, evolves states exactly or by unitary time stepping,
//! constructs the predicted entangled states (Schroedinger cats, triple field
//! superpositions, entangled coherent states, mode-mode Bell pairs) in closed
//! form, and verifies the strong-driving effective Hamiltonians by direct
//! comparison against the full dynamics.

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod hamiltonians;
pub mod hilbert;
pub mod protocols;
pub mod states;

pub use error::{QedError, Result};
