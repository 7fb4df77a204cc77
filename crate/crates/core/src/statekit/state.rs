use nalgebra::DVector;

use super::C64;
use crate::error::{Error, Result};
use crate::tolerance;

/// Normalized complex amplitude vector over a labelled finite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<C64>,
    basis_label: String,
}

impl PureState {
    /// Accepts `amplitudes` only if its Euclidean norm is 1 within 1e-12.
    pub fn new(amplitudes: impl Into<DVector<C64>>, basis_label: impl Into<String>) -> Result<Self> {
        let amplitudes = amplitudes.into();
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "empty state"));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tolerance::STRUCTURAL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, basis_label: basis_label.into() })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: impl Into<DVector<C64>>, basis_label: impl Into<String>) -> Result<Self> {
        let amplitudes = amplitudes.into();
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "empty state"));
        }
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { amplitudes: amplitudes / C64::from(norm), basis_label: basis_label.into() })
    }

    /// Basis ket `|index>` in a space of dimension `dim`.
    pub fn basis(dim: usize, index: usize, basis_label: impl Into<String>) -> Result<Self> {
        if index >= dim {
            return Err(Error::invalid("index", format!("{index} >= dimension {dim}")));
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::from(1.0);
        Ok(Self { amplitudes: v, basis_label: basis_label.into() })
    }

    /// Used for results of norm-preserving operations on valid states.
    pub(crate) fn from_normalized_unchecked(amplitudes: DVector<C64>, basis_label: String) -> Self {
        debug_assert!((amplitudes.norm() - 1.0).abs() < tolerance::UNITARY);
        Self { amplitudes, basis_label }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn basis_label(&self) -> &str {
        &self.basis_label
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        self.check_dim(other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Multiplies by the global phase `e^{i chi}`.
    pub fn with_global_phase(&self, chi: f64) -> Self {
        Self {
            amplitudes: &self.amplitudes * C64::from_polar(1.0, chi),
            basis_label: self.basis_label.clone(),
        }
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized() {
        let err = PureState::new(vec![C64::from(2.0), C64::from(0.0)], "x").unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert!(PureState::new(Vec::<C64>::new(), "x").is_err());
        assert_eq!(PureState::normalized(vec![C64::from(0.0)], "x"), Err(Error::ZeroVector));
    }

    #[test]
    fn normalizes() {
        let s = PureState::normalized(vec![C64::from(3.0), C64::new(0.0, 4.0)], "x").unwrap();
        assert!((s.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert_eq!(s.basis_label(), "x");
    }
}
