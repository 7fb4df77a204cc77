//! SU(2) representation of order-`N` transverse modes.
//!
//! Basis kets `|N, l>` are indexed `k = 0..=N` with `l = N - 2k`, so index 0
//! is the north pole (`l = +N`) and `J3 = diag(N/2, N/2 - 1, ..., -N/2)`.
//! For `N = 1` the `J` operators are the Pauli matrices over 2, matching the
//! `(|R>, |L>)` ordering of the polarization sphere.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::sphere::{sphere_grid, QfiMapRow, SpherePoint};
use crate::error::{Error, Result};
use crate::qfi::{iqpe_qfi, sqpe_qfi, ParameterizedDynamics};
use crate::statekit::{HermitianOperator, PureState, Spectral, C64, I};
use crate::tolerance;

pub const MAX_ORDER: u32 = 300;

/// Angular-momentum operators of spin `j = N/2` plus the OAM operator `L_z = 2 J3`.
#[derive(Debug, Clone)]
pub struct ModalLadder {
    order: u32,
    j1: HermitianOperator,
    j2: HermitianOperator,
    j3: HermitianOperator,
    lz: HermitianOperator,
    j2_spectral: OnceLock<Spectral>,
    j3_spectral: OnceLock<Spectral>,
}

/// Builds the `(N+1)`-dimensional ladder from raising/lowering matrix elements.
pub fn modal_ladder(order: u32) -> Result<ModalLadder> {
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    let n = order as usize + 1;
    let j = order as f64 / 2.0;
    // J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>, with m = j - k at index k.
    let mut raise = DMatrix::<C64>::zeros(n, n);
    for k in 1..n {
        let m = j - k as f64;
        raise[(k - 1, k)] = C64::from((j * (j + 1.0) - m * (m + 1.0)).sqrt());
    }
    let lower = raise.adjoint();
    let j1 = (&raise + &lower) * C64::from(0.5);
    let j2 = (&raise - &lower) * (-I * 0.5);
    let m_values: Vec<f64> = (0..n).map(|k| j - k as f64).collect();
    let l_values: Vec<f64> = m_values.iter().map(|m| 2.0 * m).collect();

    Ok(ModalLadder {
        order,
        j1: HermitianOperator::new(j1)?,
        j2: HermitianOperator::new(j2)?,
        j3: HermitianOperator::diagonal(&m_values),
        lz: HermitianOperator::diagonal(&l_values),
        j2_spectral: OnceLock::new(),
        j3_spectral: OnceLock::new(),
    })
}

impl ModalLadder {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.order as usize + 1
    }

    pub fn j1(&self) -> &HermitianOperator {
        &self.j1
    }

    pub fn j2(&self) -> &HermitianOperator {
        &self.j2
    }

    pub fn j3(&self) -> &HermitianOperator {
        &self.j3
    }

    pub fn lz(&self) -> &HermitianOperator {
        &self.lz
    }

    /// Allowed charges `-N, -N+2, ..., N`.
    pub fn charges(&self) -> impl Iterator<Item = i64> + '_ {
        let n = self.order as i64;
        (0..=n).map(move |k| n - 2 * k)
    }

    pub fn index_of(&self, l: i64) -> Result<usize> {
        let n = self.order as i64;
        if l.abs() > n || (n - l) % 2 != 0 {
            return Err(Error::InvalidCharge { l, order: self.order });
        }
        Ok(((n - l) / 2) as usize)
    }

    /// `|N, l>`.
    pub fn ket(&self, l: i64) -> Result<PureState> {
        PureState::basis(self.dim(), self.index_of(l)?, "N-l")
    }

    pub(crate) fn j2_spectral(&self) -> &Spectral {
        self.j2_spectral.get_or_init(|| Spectral::new(&self.j2))
    }

    pub(crate) fn j3_spectral(&self) -> &Spectral {
        self.j3_spectral.get_or_init(|| Spectral::new(&self.j3))
    }
}

/// `exp(-i J3 phi) exp(-i J2 theta) |N, l>`.
pub fn hlg_state(ladder: &ModalLadder, l: i64, pt: SpherePoint) -> Result<PureState> {
    let start = ladder.ket(l)?;
    let tilted = ladder.j2_spectral().evolve(pt.theta(), &start)?;
    ladder.j3_spectral().evolve(pt.phi(), &tilted)
}

/// Closed forms for the `l = N` start state:
/// `(4 N sin^2 theta, 4 N^2 cos^2 theta + 4 N sin^2 theta)`.
pub fn rotation_closed_form(order: u32, pt: SpherePoint) -> (f64, f64) {
    let n = order as f64;
    let (s, c) = pt.theta().sin_cos();
    (4.0 * n * s * s, 4.0 * n * n * c * c + 4.0 * n * s * s)
}

/// Engine QFIs of the rotation angle for the `l = N` start state over the
/// sphere grid, each checked against the closed form to 1e-6 relative.
pub fn rotation_qfi_map(order: u32, resolution: usize) -> Result<Vec<QfiMapRow>> {
    let ladder = modal_ladder(order)?;
    let dynamics = ParameterizedDynamics::unit_time(ladder.lz.clone());
    let l = order as i64;
    // Warm the caches before fanning out.
    ladder.j2_spectral();
    ladder.j3_spectral();
    sphere_grid(resolution)?
        .into_par_iter()
        .map(|point| {
            let probe = hlg_state(&ladder, l, point)?;
            let row = QfiMapRow {
                point,
                qfi_sqpe: sqpe_qfi(&dynamics, &probe)?,
                qfi_iqpe: iqpe_qfi(&dynamics, &probe)?,
            };
            let (qs, qi) = rotation_closed_form(order, point);
            if !tolerance::rel_close(row.qfi_sqpe, qs, tolerance::ROTATION_MAP) {
                return Err(Error::CrossCheck { what: "rotation SQPE map", lhs: row.qfi_sqpe, rhs: qs });
            }
            if !tolerance::rel_close(row.qfi_iqpe, qi, tolerance::ROTATION_MAP) {
                return Err(Error::CrossCheck { what: "rotation IQPE map", lhs: row.qfi_iqpe, rhs: qi });
            }
            Ok(row)
        })
        .collect()
}
