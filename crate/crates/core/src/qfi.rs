//! Pure-state quantum Fisher information for linear encodings
//! `H_S = g V_S`, evolved for a time `T`.
//!
//! The standard scheme evolves the probe forward only; its QFI is
//! `4 T^2 Var(V_S)`. The indefinite scheme entangles a two-level meter in
//! `(|0> + |1>)/sqrt(2)` with the probe so that the probe evolves forward on
//! meter state 0 and backward on meter state 1; its QFI is `4 T^2 <V_S^2>`.

use std::sync::OnceLock;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::statekit::{self, block_diag, tensor, HermitianOperator, PureState, Spectral, UnitaryMatrix, C64};
use crate::tolerance;

/// Linear encoding `U(g) = exp(-i g T V)` with characteristic operator `V`.
#[derive(Debug, Clone)]
pub struct ParameterizedDynamics {
    characteristic: HermitianOperator,
    evolution_time: f64,
    spectral: OnceLock<Spectral>,
}

impl ParameterizedDynamics {
    pub fn linear(characteristic: HermitianOperator, evolution_time: f64) -> Result<Self> {
        if !evolution_time.is_finite() {
            return Err(Error::invalid("evolution_time", "must be finite"));
        }
        Ok(Self { characteristic, evolution_time, spectral: OnceLock::new() })
    }

    /// Unit evolution time.
    pub fn unit_time(characteristic: HermitianOperator) -> Self {
        Self { characteristic, evolution_time: 1.0, spectral: OnceLock::new() }
    }

    pub fn characteristic_op(&self) -> &HermitianOperator {
        &self.characteristic
    }

    pub fn evolution_time(&self) -> f64 {
        self.evolution_time
    }

    pub fn dim(&self) -> usize {
        self.characteristic.dim()
    }

    pub fn spectral(&self) -> &Spectral {
        self.spectral.get_or_init(|| Spectral::new(&self.characteristic))
    }

    /// `U_S(g)`.
    pub fn unitary_at(&self, g: f64) -> UnitaryMatrix {
        self.spectral().exp_minus_i(g * self.evolution_time)
    }

    /// `U_S(g) |probe>`.
    pub fn evolve(&self, g: f64, probe: &PureState) -> Result<PureState> {
        self.spectral().evolve(g * self.evolution_time, probe)
    }

    /// `U_S(g) ⊕ U_S(g)^H`: forward on meter state 0, backward on meter state 1.
    pub fn indefinite_unitary_at(&self, g: f64) -> UnitaryMatrix {
        let u = self.unitary_at(g);
        UnitaryMatrix::new(block_diag(u.matrix(), &u.matrix().adjoint()))
            .expect("direct sum of unitaries is unitary")
    }

    /// Generator `i U^H dU/dg`, which is `T V` for a linear encoding.
    pub fn generator(&self) -> HermitianOperator {
        self.characteristic.scaled(self.evolution_time)
    }
}

/// QFI values for one probe alongside their eigenvalue bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiReport {
    pub qfi_sqpe: f64,
    pub qfi_iqpe: f64,
    pub bound_sqpe: f64,
    pub bound_iqpe: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiBounds {
    pub sqpe: f64,
    pub iqpe: f64,
}

/// Balanced meter `(|0> + |1>)/sqrt(2)`.
pub fn balanced_meter() -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new(vec![C64::from(s), C64::from(s)], "meter").expect("normalized")
}

/// QFI of a state family by central differences:
/// `4 (<d psi|d psi> - |<d psi|psi>|^2)`.
///
/// Uses steps `step` and `step/2`; when the two derivative estimates
/// disagree by more than 1e-6 relative, the Richardson combination
/// `(4 D(h/2) - D(h)) / 3` is used instead.
pub fn qfi_numeric<F>(family: F, g: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<PureState>,
{
    if !(step > 0.0 && step <= 1e-2) {
        return Err(Error::invalid("step", format!("{step} not in (0, 1e-2]")));
    }
    let psi = family(g)?;
    let dim = psi.dim();
    let sample = |x: f64| -> Result<DVector<C64>> {
        let s = family(x)?;
        s.check_dim(dim)?;
        Ok(s.amplitudes().clone())
    };
    let coarse = (sample(g + step)? - sample(g - step)?) / C64::from(2.0 * step);
    let fine = (sample(g + step / 2.0)? - sample(g - step / 2.0)?) / C64::from(step);

    let scale = fine.norm().max(1e-6);
    let derivative = if (&coarse - &fine).norm() > tolerance::RICHARDSON_TRIGGER * scale {
        (fine * C64::from(4.0) - coarse) / C64::from(3.0)
    } else {
        fine
    };

    let overlap = derivative.dotc(psi.amplitudes());
    let q = 4.0 * (derivative.norm_squared() - overlap.norm_sqr());
    if q < -tolerance::NUMERIC_QFI_FLOOR {
        return Err(Error::CrossCheck { what: "numeric QFI sign", lhs: q, rhs: 0.0 });
    }
    Ok(q.max(0.0))
}

/// `4 T^2 Var(V)` on the probe.
pub fn sqpe_qfi(dynamics: &ParameterizedDynamics, probe: &PureState) -> Result<f64> {
    let t = dynamics.evolution_time;
    Ok(4.0 * t * t * statekit::variance(&dynamics.characteristic, probe)?)
}

/// `4 T^2 <V^2>` on the probe, with the meter in the balanced superposition.
pub fn iqpe_qfi(dynamics: &ParameterizedDynamics, probe: &PureState) -> Result<f64> {
    let t = dynamics.evolution_time;
    let applied = dynamics.characteristic.apply(probe)?;
    Ok(4.0 * t * t * applied.norm_squared())
}

/// Generator of the indefinite encoding at `g`:
/// `H ⊕ (-U H U^H)` with `H = T V`, meter on the outer index.
pub fn iqpe_generator(dynamics: &ParameterizedDynamics, g: f64) -> HermitianOperator {
    let h = dynamics.generator();
    let u = dynamics.unitary_at(g);
    let conjugated = -(u.matrix() * h.matrix() * u.matrix().adjoint());
    HermitianOperator::hermitian_part(block_diag(h.matrix(), &conjugated))
}

/// Indefinite-scheme QFI for an arbitrary two-level meter, computed as
/// `4 Var(iqpe_generator)` on `meter ⊗ probe`. With the balanced meter this
/// reduces to [`iqpe_qfi`]; other meters are an extension used for checks.
pub fn iqpe_qfi_with_meter(
    dynamics: &ParameterizedDynamics,
    probe: &PureState,
    meter: &PureState,
    g: f64,
) -> Result<f64> {
    meter.check_dim(2)?;
    probe.check_dim(dynamics.dim())?;
    let joint = tensor(meter, probe);
    Ok(4.0 * statekit::variance(&iqpe_generator(dynamics, g), &joint)?)
}

/// Eigenvalue bounds for constant `lambda_max`, `lambda_min` of `V`:
/// standard `[T (lambda_max - lambda_min)]^2`,
/// indefinite `max{(2 T lambda_max)^2, (2 T lambda_min)^2}`.
pub fn qfi_upper_bounds(dynamics: &ParameterizedDynamics) -> QfiBounds {
    let t = dynamics.evolution_time;
    let (lo, hi) = (dynamics.spectral().min(), dynamics.spectral().max());
    let sqpe = (t * (hi - lo)).powi(2);
    let iqpe = (2.0 * t * hi).powi(2).max((2.0 * t * lo).powi(2));
    debug_assert!(sqpe <= iqpe * (1.0 + 1e-12) + 1e-12);
    QfiBounds { sqpe, iqpe }
}

pub fn qfi_report(dynamics: &ParameterizedDynamics, probe: &PureState) -> Result<QfiReport> {
    let bounds = qfi_upper_bounds(dynamics);
    Ok(QfiReport {
        qfi_sqpe: sqpe_qfi(dynamics, probe)?,
        qfi_iqpe: iqpe_qfi(dynamics, probe)?,
        bound_sqpe: bounds.sqpe,
        bound_iqpe: bounds.iqpe,
    })
}
