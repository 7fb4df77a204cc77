//! Polarization states on the classical Poincaré sphere, in the circular
//! `(|R>, |L>)` basis with `|R>` at the north pole.

use rayon::prelude::*;

use super::sphere::{sphere_grid, QfiMapRow, SpherePoint};
use crate::error::{Error, Result};
use crate::qfi::{iqpe_qfi, sqpe_qfi, ParameterizedDynamics};
use crate::statekit::{HermitianOperator, PureState, C64, I};
use crate::tolerance;

/// `[S1, S2, S3]` as Pauli matrices in the `(|R>, |L>)` basis.
pub fn stokes_operators() -> [HermitianOperator; 3] {
    let o = C64::from(0.0);
    let one = C64::from(1.0);
    let mk = |v: [C64; 4]| HermitianOperator::from_exact(nalgebra::DMatrix::from_row_slice(2, 2, &v));
    [mk([o, one, one, o]), mk([o, -I, I, o]), mk([one, o, o, -one])]
}

/// `cos(theta/2)|R> + sin(theta/2) e^{i phi}|L>`.
pub fn polarization_state(pt: SpherePoint) -> PureState {
    let (s, c) = (pt.theta() / 2.0).sin_cos();
    PureState::normalized(vec![C64::from(c), C64::from_polar(s, pt.phi())], "RL")
        .expect("unit vector")
}

/// Closed forms `(4 - 4 sin^2 theta cos^2 phi, 4)` for the `S1` generator.
pub fn birefringence_closed_form(pt: SpherePoint) -> (f64, f64) {
    let x = pt.theta().sin() * pt.phi().cos();
    (4.0 - 4.0 * x * x, 4.0)
}

/// Engine QFIs of the birefringent phase over the sphere grid, each checked
/// against the closed form to 1e-8.
pub fn birefringence_qfi_map(resolution: usize) -> Result<Vec<QfiMapRow>> {
    let [s1, _, _] = stokes_operators();
    let dynamics = ParameterizedDynamics::unit_time(s1);
    sphere_grid(resolution)?
        .into_par_iter()
        .map(|point| {
            let probe = polarization_state(point);
            let row = QfiMapRow {
                point,
                qfi_sqpe: sqpe_qfi(&dynamics, &probe)?,
                qfi_iqpe: iqpe_qfi(&dynamics, &probe)?,
            };
            let (qs, qi) = birefringence_closed_form(point);
            if (row.qfi_sqpe - qs).abs() > tolerance::BIREFRINGENCE_MAP {
                return Err(Error::CrossCheck { what: "birefringence SQPE map", lhs: row.qfi_sqpe, rhs: qs });
            }
            if (row.qfi_iqpe - qi).abs() > tolerance::BIREFRINGENCE_MAP {
                return Err(Error::CrossCheck { what: "birefringence IQPE map", lhs: row.qfi_iqpe, rhs: qi });
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statekit::{expectation, expm_herm_generator};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn s3_fixes_r() {
        let [_, _, s3] = stokes_operators();
        let r = PureState::basis(2, 0, "RL").unwrap();
        assert_eq!(s3.apply(&r).unwrap(), r.amplitudes().clone());
    }

    #[test]
    fn s1_involution_and_commutator() {
        let [s1, s2, s3] = stokes_operators();
        assert_eq!(s1.squared().matrix(), HermitianOperator::identity(2).matrix());
        let comm = s1.commutator(&s2);
        assert!((comm - s3.matrix() * C64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn poles_and_equator() {
        let r = polarization_state(SpherePoint::new(0.0, 1.234).unwrap());
        assert!((r.amplitudes()[0] - C64::from(1.0)).norm() < 1e-15);
        let l = polarization_state(SpherePoint::new(PI, 0.0).unwrap());
        assert!((l.amplitudes()[1] - C64::from(1.0)).norm() < 1e-15);
        let e = polarization_state(SpherePoint::new(FRAC_PI_2, 0.0).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.amplitudes()[0] - C64::from(s)).norm() < 1e-15);
        assert!((e.amplitudes()[1] - C64::from(s)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_euler_rotation() {
        let [_, s2, s3] = stokes_operators();
        let r = PureState::basis(2, 0, "RL").unwrap();
        for &(theta, phi) in &[(0.3, 1.1), (2.0, 5.0), (FRAC_PI_2, 0.4)] {
            let pt = SpherePoint::new(theta, phi).unwrap();
            let rotated = expm_herm_generator(&s3, phi / 2.0)
                .apply(&expm_herm_generator(&s2, theta / 2.0).apply(&r).unwrap())
                .unwrap();
            let overlap = rotated.inner(&polarization_state(pt)).unwrap().norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stokes_expectations_are_sphere_coordinates() {
        let [s1, s2, s3] = stokes_operators();
        let (theta, phi) = (1.1, 2.3);
        let psi = polarization_state(SpherePoint::new(theta, phi).unwrap());
        assert!((expectation(&s1, &psi).unwrap() - theta.sin() * phi.cos()).abs() < 1e-14);
        assert!((expectation(&s2, &psi).unwrap() - theta.sin() * phi.sin()).abs() < 1e-14);
        assert!((expectation(&s3, &psi).unwrap() - theta.cos()).abs() < 1e-14);
    }

    #[test]
    fn map_examples() {
        let rows = birefringence_qfi_map(9).unwrap();
        assert_eq!(rows.len(), 162);
        let equator = rows
            .iter()
            .find(|r| (r.point.theta() - FRAC_PI_2).abs() < 1e-12 && r.point.phi() == 0.0)
            .unwrap();
        assert!(equator.qfi_sqpe.abs() < 1e-12);
        let s2_pole = birefringence_closed_form(SpherePoint::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        assert!((s2_pole.0 - 4.0).abs() < 1e-12);
        for r in &rows {
            let (s, i) = birefringence_closed_form(r.point);
            assert!((r.qfi_sqpe - s).abs() < 1e-10);
            assert!((r.qfi_iqpe - i).abs() < 1e-10);
        }
    }
}
