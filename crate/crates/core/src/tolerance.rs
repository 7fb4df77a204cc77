//! Numerical tolerances shared by every module.

/// Structural checks: normalization, Hermiticity.
pub const STRUCTURAL: f64 = 1e-12;

/// Eigenpair residuals and spectral reconstructions.
pub const SPECTRAL: f64 = 1e-9;

/// Unitarity (Frobenius norm of `U^H U - I`) and norm preservation.
pub const UNITARY: f64 = 1e-10;

/// Largest imaginary part tolerated in an expectation value, relative to
/// `max(1, |real part|)`.
pub const EXPECTATION_IMAG: f64 = 1e-10;

/// Finite-difference QFI values this far below zero are clamped to zero.
pub const NUMERIC_QFI_FLOOR: f64 = 1e-8;

/// Disagreement between step-`h` and step-`h/2` derivatives that triggers
/// Richardson extrapolation.
pub const RICHARDSON_TRIGGER: f64 = 1e-6;

/// Default central-difference step for the numeric QFI.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Largest coherent-state tail probability left outside a Fock truncation.
pub const FOCK_TAIL: f64 = 1e-12;

/// Closed-form birefringence map vs engine (absolute).
pub const BIREFRINGENCE_MAP: f64 = 1e-8;

/// Closed-form rotation map vs engine (relative, floored at 1).
pub const ROTATION_MAP: f64 = 1e-6;

/// Compares `a` to `b` relative to `max(|b|, 1)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
