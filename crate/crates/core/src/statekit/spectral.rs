use nalgebra::{DMatrix, SymmetricEigen};

use super::{HermitianOperator, PureState, UnitaryMatrix, C64};
use crate::error::Result;

/// Eigen-decomposition `A = V diag(lambda) V^H` of a Hermitian operator,
/// kept around so repeated exponentials cost one matrix product each.
#[derive(Debug, Clone)]
pub struct Spectral {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl Spectral {
    pub fn new(op: &HermitianOperator) -> Self {
        let eig = SymmetricEigen::new(op.matrix().clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let n = order.len();
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Self { eigenvalues: order.iter().map(|&k| eig.eigenvalues[k]).collect(), eigenvectors: vectors }
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `exp(-i scale A)`.
    pub fn exp_minus_i(&self, scale: f64) -> UnitaryMatrix {
        let phases: Vec<C64> = self.eigenvalues.iter().map(|&l| C64::from_polar(1.0, -scale * l)).collect();
        let mut scaled = self.eigenvectors.clone();
        for (k, p) in phases.iter().enumerate() {
            scaled.column_mut(k).scale_mut_complex(*p);
        }
        UnitaryMatrix::from_exact(scaled * self.eigenvectors.adjoint())
    }

    /// `exp(-i scale A) |psi>` without forming the full exponential.
    pub fn evolve(&self, scale: f64, state: &PureState) -> Result<PureState> {
        state.check_dim(self.eigenvalues.len())?;
        let mut coeffs = self.eigenvectors.adjoint() * state.amplitudes();
        for (c, &l) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *c *= C64::from_polar(1.0, -scale * l);
        }
        let out = &self.eigenvectors * coeffs;
        Ok(PureState::from_normalized_unchecked(out, state.basis_label().to_owned()))
    }
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, factor: C64);
}

impl<S> ScaleComplex for nalgebra::Matrix<C64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<C64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, factor: C64) {
        for x in self.iter_mut() {
            *x *= factor;
        }
    }
}

/// Ascending eigenvalues and the unitary whose columns are the matching eigenvectors.
pub fn herm_eig(op: &HermitianOperator) -> (Vec<f64>, UnitaryMatrix) {
    let s = Spectral::new(op);
    (s.eigenvalues, UnitaryMatrix::from_exact(s.eigenvectors))
}

/// `exp(-i scale op)` through the eigen-decomposition of `op`.
pub fn expm_herm_generator(op: &HermitianOperator, scale: f64) -> UnitaryMatrix {
    Spectral::new(op).exp_minus_i(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::modal::modal_ladder;
    use crate::scenarios::polarization::stokes_operators;
    use crate::tolerance;
    use std::f64::consts::FRAC_PI_2;

    fn assert_eigenpairs(op: &HermitianOperator) {
        let (vals, vecs) = herm_eig(op);
        for (k, &l) in vals.iter().enumerate() {
            let v = vecs.matrix().column(k);
            let resid = (op.matrix() * v - v * C64::from(l)).norm();
            assert!(resid < tolerance::SPECTRAL, "column {k} residual {resid}");
        }
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_sorted() {
        let op = HermitianOperator::diagonal(&[3.0, 1.0, 2.0]);
        let (vals, _) = herm_eig(&op);
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        assert_eigenpairs(&op);
    }

    #[test]
    fn pauli_y_spectrum() {
        let [_, s2, _] = stokes_operators();
        let (vals, _) = herm_eig(&s2);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        assert_eigenpairs(&s2);
    }

    #[test]
    fn spin_two_j3_spectrum() {
        let ladder = modal_ladder(4).unwrap();
        let (vals, _) = herm_eig(ladder.j3());
        for (v, e) in vals.iter().zip([-2.0, -1.0, 0.0, 1.0, 2.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        assert_eigenpairs(ladder.j1());
        assert_eigenpairs(ladder.j2());
    }

    #[test]
    fn reconstruction() {
        let ladder = modal_ladder(10).unwrap();
        let op = ladder.j1().add(&ladder.j2().scaled(0.3)).unwrap();
        let (vals, v) = herm_eig(&op);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(vals.len(), vals.iter().map(|&x| C64::from(x))));
        let rebuilt = v.matrix() * d * v.matrix().adjoint();
        assert!((rebuilt - op.matrix()).norm() < tolerance::SPECTRAL);
    }

    #[test]
    fn expm_zero_is_identity() {
        let [s1, _, _] = stokes_operators();
        let u = expm_herm_generator(&s1, 0.0);
        assert!((u.matrix() - DMatrix::<C64>::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn expm_s3_half_pi() {
        let [_, _, s3] = stokes_operators();
        let u = expm_herm_generator(&s3, FRAC_PI_2);
        assert!((u.matrix()[(0, 0)] - C64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((u.matrix()[(1, 1)] - C64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(u.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn expm_lz_order_one() {
        let ladder = modal_ladder(1).unwrap();
        let alpha = 0.37;
        let u = expm_herm_generator(ladder.lz(), alpha);
        // index 0 is l = +1, index 1 is l = -1
        assert!((u.matrix()[(0, 0)] - C64::from_polar(1.0, -alpha)).norm() < 1e-14);
        assert!((u.matrix()[(1, 1)] - C64::from_polar(1.0, alpha)).norm() < 1e-14);
    }

    #[test]
    fn evolve_matches_full_exponential() {
        let ladder = modal_ladder(6).unwrap();
        let s = Spectral::new(ladder.j2());
        let psi = PureState::basis(7, 2, "N-l").unwrap();
        let a = s.evolve(0.8, &psi).unwrap();
        let b = s.exp_minus_i(0.8).apply(&psi).unwrap();
        assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-13);
    }
}
