//! Kerr phase `exp(-i theta n)` probed by a coherent state.
//!
//! The coherent amplitude is taken real and positive; `n` is
//! phase-covariant, so the phase of the amplitude does not enter the QFI.

use crate::error::{Error, Result};
use crate::qfi::{iqpe_qfi, sqpe_qfi, ParameterizedDynamics};
use crate::statekit::{HermitianOperator, PureState, C64};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrQfi {
    pub qfi_sqpe: f64,
    pub qfi_iqpe: f64,
    pub truncation: usize,
}

/// `diag(0, 1, ..., dim - 1)`.
pub fn number_operator(dim: usize) -> HermitianOperator {
    let values: Vec<f64> = (0..dim).map(|n| n as f64).collect();
    HermitianOperator::diagonal(&values)
}

/// `16 nbar + 32`.
pub fn default_truncation(nbar: f64) -> usize {
    (16.0 * nbar).ceil() as usize + 32
}

/// Coherent state with mean photon number `nbar` on `truncation` Fock levels.
/// Fails if the discarded tail carries more than 1e-12 probability.
pub fn coherent_state(nbar: f64, truncation: usize) -> Result<PureState> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(Error::invalid("nbar", format!("{nbar} is not a finite non-negative number")));
    }
    if truncation == 0 {
        return Err(Error::invalid("truncation", "must be positive"));
    }
    let amp = nbar.sqrt();
    let mut c = (-nbar / 2.0).exp();
    let mut amplitudes = Vec::with_capacity(truncation);
    for n in 0..truncation {
        if n > 0 {
            c *= amp / (n as f64).sqrt();
        }
        amplitudes.push(C64::from(c));
    }
    // Sum the discarded tail directly; terms decrease once n > nbar.
    let mut tail = 0.0;
    let mut n = truncation;
    loop {
        c *= amp / (n as f64).sqrt();
        let p = c * c;
        tail += p;
        if n as f64 > nbar && p < tail * 1e-17 || p == 0.0 {
            break;
        }
        n += 1;
    }
    if tail > tolerance::FOCK_TAIL {
        return Err(Error::InsufficientTruncation { truncation, tail });
    }
    PureState::normalized(amplitudes, "fock")
}

/// Standard and indefinite QFIs of the Kerr phase; `truncation` defaults
/// to [`default_truncation`].
pub fn kerr_qfi(nbar: f64, truncation: Option<usize>) -> Result<KerrQfi> {
    let truncation = truncation.unwrap_or_else(|| default_truncation(nbar));
    let probe = coherent_state(nbar, truncation)?;
    let dynamics = ParameterizedDynamics::unit_time(number_operator(truncation));
    Ok(KerrQfi {
        qfi_sqpe: sqpe_qfi(&dynamics, &probe)?,
        qfi_iqpe: iqpe_qfi(&dynamics, &probe)?,
        truncation,
    })
}
