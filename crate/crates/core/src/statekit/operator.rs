use nalgebra::DMatrix;

use super::{PureState, C64};
use crate::error::{Error, Result};
use crate::tolerance;

/// Square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: DMatrix<C64>,
}

impl HermitianOperator {
    /// Rejects matrices whose entries differ from the adjoint by more than 1e-12.
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        check_square(&entries)?;
        let deviation = hermitian_deviation(&entries);
        if deviation > tolerance::STRUCTURAL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { entries })
    }

    /// Real symmetric convenience constructor.
    pub fn from_real(rows: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != rows * rows {
            return Err(Error::invalid("entries", format!("{} values for a {rows}x{rows} matrix", entries.len())));
        }
        Self::new(DMatrix::from_row_iterator(rows, rows, entries.iter().map(|&x| C64::from(x))))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (k, &v) in values.iter().enumerate() {
            m[(k, k)] = C64::from(v);
        }
        Self { entries: m }
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: DMatrix::identity(dim, dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: DMatrix::zeros(dim, dim) }
    }

    /// `(m + m^H) / 2`, for products that are Hermitian up to rounding.
    pub(crate) fn hermitian_part(m: DMatrix<C64>) -> Self {
        let adj = m.adjoint();
        Self { entries: (m + adj) * C64::from(0.5) }
    }

    /// For matrices that are exactly Hermitian by construction.
    pub(crate) fn from_exact(m: DMatrix<C64>) -> Self {
        debug_assert!(hermitian_deviation(&m) <= tolerance::STRUCTURAL);
        Self { entries: m }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { entries: &self.entries * C64::from(factor) }
    }

    pub fn squared(&self) -> Self {
        Self::hermitian_part(&self.entries * &self.entries)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(Self { entries: &self.entries + &other.entries })
    }

    /// `self * state`, without renormalizing.
    pub fn apply(&self, state: &PureState) -> Result<nalgebra::DVector<C64>> {
        state.check_dim(self.dim())?;
        Ok(&self.entries * state.amplitudes())
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> DMatrix<C64> {
        &self.entries * &other.entries - &other.entries * &self.entries
    }
}

/// Square complex matrix with `U^H U = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<C64>,
}

impl UnitaryMatrix {
    /// Rejects matrices with `||U^H U - I||_F > 1e-10`.
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        check_square(&entries)?;
        let deviation = unitary_deviation(&entries);
        if deviation > tolerance::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: DMatrix::identity(dim, dim) }
    }

    pub(crate) fn from_exact(m: DMatrix<C64>) -> Self {
        debug_assert!(unitary_deviation(&m) <= tolerance::UNITARY);
        Self { entries: m }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.adjoint() }
    }

    pub fn compose(&self, next: &Self) -> Result<Self> {
        if self.dim() != next.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: next.dim() });
        }
        Ok(Self { entries: &next.entries * &self.entries })
    }

    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        state.check_dim(self.dim())?;
        let out = &self.entries * state.amplitudes();
        Ok(PureState::from_normalized_unchecked(out, state.basis_label().to_owned()))
    }

    /// `||U^H U - I||_F`.
    pub fn unitarity_deviation(&self) -> f64 {
        unitary_deviation(&self.entries)
    }
}

/// `<psi|op|psi>`. Imaginary residuals above 1e-10 are reported as errors.
pub fn expectation(op: &HermitianOperator, state: &PureState) -> Result<f64> {
    let applied = op.apply(state)?;
    let value = state.amplitudes().dotc(&applied);
    real_part(value)
}

/// `<op^2> - <op>^2`, evaluated as `||(op - <op>) psi||^2` so it never goes negative.
pub fn variance(op: &HermitianOperator, state: &PureState) -> Result<f64> {
    let applied = op.apply(state)?;
    let mean = real_part(state.amplitudes().dotc(&applied))?;
    let centred = applied - state.amplitudes() * C64::from(mean);
    Ok(centred.norm_squared())
}

fn real_part(value: C64) -> Result<f64> {
    if value.im.abs() > tolerance::EXPECTATION_IMAG * value.re.abs().max(1.0) {
        return Err(Error::ComplexExpectation { residual: value.im });
    }
    Ok(value.re)
}

fn check_square(m: &DMatrix<C64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(())
}

fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn unitary_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - DMatrix::<C64>::identity(n, n)).norm()
}
