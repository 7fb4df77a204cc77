//! Dense complex linear algebra for small quantum systems.
//!
//! Matrices are backed by `nalgebra` and wrapped in newtypes that check
//! their structural invariant on construction: [`PureState`] is normalized,
//! [`HermitianOperator`] equals its adjoint, [`UnitaryMatrix`] satisfies
//! `U^H U = I`. Everything is immutable once built.

mod operator;
mod spectral;
mod state;

pub use operator::{expectation, variance, HermitianOperator, UnitaryMatrix};
pub use spectral::{expm_herm_generator, herm_eig, Spectral};
pub use state::PureState;

use nalgebra::{DMatrix, DVector};

pub type C64 = num_complex::Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Kronecker product with `self` on the outer (slow) index.
pub trait Kron: Sized {
    fn kron(&self, inner: &Self) -> Self;
}

/// `outer ⊗ inner`. Both operands must be the same kind; mixing a state
/// with an operator does not type-check.
pub fn tensor<T: Kron>(outer: &T, inner: &T) -> T {
    outer.kron(inner)
}

impl Kron for PureState {
    fn kron(&self, inner: &Self) -> Self {
        let amps: DVector<C64> = self.amplitudes().kronecker(inner.amplitudes());
        let label = format!("{}⊗{}", self.basis_label(), inner.basis_label());
        PureState::from_normalized_unchecked(amps, label)
    }
}

impl Kron for HermitianOperator {
    fn kron(&self, inner: &Self) -> Self {
        HermitianOperator::from_exact(self.matrix().kronecker(inner.matrix()))
    }
}

impl Kron for UnitaryMatrix {
    fn kron(&self, inner: &Self) -> Self {
        UnitaryMatrix::from_exact(self.matrix().kronecker(inner.matrix()))
    }
}

/// Block-diagonal `upper ⊕ lower`: `upper` acts on meter state 0, `lower` on 1.
pub(crate) fn block_diag(upper: &DMatrix<C64>, lower: &DMatrix<C64>) -> DMatrix<C64> {
    let (a, b) = (upper.nrows(), lower.nrows());
    let mut m = DMatrix::zeros(a + b, a + b);
    m.view_mut((0, 0), (a, a)).copy_from(upper);
    m.view_mut((a, a), (b, b)).copy_from(lower);
    m
}
