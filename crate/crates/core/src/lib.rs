//! Quantum parameter estimation with an indefinite time direction.
//!
//! The crate is layered bottom-up:
//!
//! * [`statekit`]: dense complex states and operators, Hermitian
//!   eigen-decomposition, matrix exponentials and tensor products.
//! * [`qfi`]: pure-state quantum Fisher information for the standard
//!   (single time direction) and indefinite (forward/backward superposed)
//!   encodings, plus their eigenvalue upper bounds.
//! * [`scenarios`]: Kerr phase, birefringence on the polarization sphere,
//!   and profile rotation on the modal sphere of order-`N` beams.
//! * [`protocol`]: the rotation measurement with a polarization switch,
//!   its outcome statistics, estimator and Monte-Carlo verification.
//! * [`emulator`]: two-detector time series synthesis, phase demodulation,
//!   OAM linear fit and amplitude-spectrum noise floor.
//!
//! All tensor products put the two-level meter on the outer (slow) index
//! and the probe on the inner (fast) index.

pub mod emulator;
pub mod error;
pub mod protocol;
pub mod qfi;
pub mod scenarios;
pub mod statekit;
pub mod tolerance;

pub use error::{Error, Result};
pub use statekit::{HermitianOperator, PureState, UnitaryMatrix, C64};
