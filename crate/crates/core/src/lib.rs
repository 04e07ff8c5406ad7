//! Sporadic SIC-POVMs and the probabilistic representation of quantum
//! states they induce, together with mechanical checks of three
//! nonclassicality results: Mermin's three-qubit Bell violation from the
//! GHZ state, instruction-set hidden-variable models for single qubits,
//! and the 21-vector qutrit Kochen-Specker contradiction.

pub mod hv;
pub mod ks;
pub mod mermin;
pub mod qmath;
pub mod random;
pub mod repr;
pub mod sics;

pub use qmath::{BlochVector, DensityOperator, Ket, Operator, QmathError, C64, DEFAULT_TOL};
