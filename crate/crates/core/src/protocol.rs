//! Rotation measurement with a polarization switch.
//!
//! The probe is the `|N, l = N>` mode; the meter is polarization in the
//! `(|H>, |V>)` basis, prepared in `|+>`. `|H>` sees `exp(-i alpha L_z)`,
//! `|V>` sees `exp(+i alpha L_z)`, and the interferometer adds a systematic
//! phase `delta_phi` to `|V>`. Projecting the meter onto
//! `|L> = (|H> + i|V>)/sqrt(2)` and `|R> = (|H> - i|V>)/sqrt(2)` gives
//! `p_L = [1 + sin(2 l alpha + delta_phi)] / 2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qfi::ParameterizedDynamics;
use crate::scenarios::modal::modal_ladder;
use crate::statekit::{tensor, PureState, UnitaryMatrix, C64, I};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationProtocol {
    oam_l: u32,
    delta_phi: f64,
}

impl RotationProtocol {
    /// `oam_l >= 1`, `delta_phi` in `(-pi, pi]`.
    pub fn new(oam_l: u32, delta_phi: f64) -> Result<Self> {
        if oam_l == 0 {
            return Err(Error::invalid("oam_l", "must be at least 1"));
        }
        if !(delta_phi > -PI && delta_phi <= PI) {
            return Err(Error::invalid("delta_phi", format!("{delta_phi} not in (-pi, pi]")));
        }
        Ok(Self { oam_l, delta_phi })
    }

    pub fn oam_l(&self) -> u32 {
        self.oam_l
    }

    pub fn delta_phi(&self) -> f64 {
        self.delta_phi
    }

    /// Total meter phase `2 l alpha + delta_phi`.
    pub fn total_phase(&self, alpha: f64) -> f64 {
        2.0 * self.oam_l as f64 * alpha + self.delta_phi
    }

    /// `1 / (2 l sqrt(nu))`.
    pub fn cramer_rao(&self, nu: u64) -> f64 {
        1.0 / (2.0 * self.oam_l as f64 * (nu as f64).sqrt())
    }

    fn dynamics(&self) -> Result<ParameterizedDynamics> {
        let ladder = modal_ladder(self.oam_l)?;
        Ok(ParameterizedDynamics::unit_time(ladder.lz().clone()))
    }
}

/// Detected photon numbers in the two projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub nu_l: u64,
    pub nu_r: u64,
}

impl ShotRecord {
    pub fn new(nu_l: u64, nu_r: u64) -> Self {
        Self { nu_l, nu_r }
    }

    pub fn total(&self) -> u64 {
        self.nu_l + self.nu_r
    }
}

/// `exp(-i alpha L_z) ⊕ exp(+i alpha L_z)` on `meter ⊗ probe`, probe space
/// of order `N = l`.
pub fn indefinite_rotation_unitary(proto: &RotationProtocol, alpha: f64) -> Result<UnitaryMatrix> {
    Ok(proto.dynamics()?.indefinite_unitary_at(alpha))
}

/// Joint state after the rotation and the systematic meter phase.
pub fn final_state(proto: &RotationProtocol, alpha: f64) -> Result<PureState> {
    let ladder = modal_ladder(proto.oam_l)?;
    let plus = PureState::new(vec![C64::from(FRAC_1_SQRT_2), C64::from(FRAC_1_SQRT_2)], "HV")?;
    let joint = tensor(&plus, &ladder.ket(proto.oam_l as i64)?);
    let rotated = indefinite_rotation_unitary(proto, alpha)?.apply(&joint)?;
    let phase = C64::from_polar(1.0, proto.delta_phi);
    let dim = ladder.dim();
    let amps = rotated.amplitudes().map_with_location(|k, _, z| if k >= dim { z * phase } else { z });
    PureState::new(amps, "HV⊗N-l")
}

/// `(p_L, p_R)` from the closed form.
pub fn projection_probabilities(proto: &RotationProtocol, alpha: f64) -> (f64, f64) {
    let p_l = (0.5 * (1.0 + proto.total_phase(alpha).sin())).clamp(0.0, 1.0);
    (p_l, 1.0 - p_l)
}

/// `(p_L, p_R)` by projecting the explicit joint state onto `|L>` and `|R>`
/// of the meter.
pub fn projection_probabilities_from_state(proto: &RotationProtocol, alpha: f64) -> Result<(f64, f64)> {
    let psi = final_state(proto, alpha)?;
    let dim = psi.dim() / 2;
    let a = psi.amplitudes();
    let (mut p_l, mut p_r) = (0.0, 0.0);
    for k in 0..dim {
        let (h, v) = (a[k], a[k + dim]);
        // <L| = (<H| - i<V|)/sqrt(2), <R| = (<H| + i<V|)/sqrt(2)
        p_l += ((h - I * v) * FRAC_1_SQRT_2).norm_sqr();
        p_r += ((h + I * v) * FRAC_1_SQRT_2).norm_sqr();
    }
    Ok((p_l, p_r))
}

/// Classical Fisher information `sum_k (dp_k/d alpha)^2 / p_k` of the
/// `{|L>, |R>}` measurement.
pub fn cfi(proto: &RotationProtocol, alpha: f64) -> Result<f64> {
    let (p_l, p_r) = projection_probabilities(proto, alpha);
    if p_l.min(p_r) < 1e-12 {
        return Err(Error::DegenerateStatistics { alpha });
    }
    let dp = proto.oam_l as f64 * proto.total_phase(alpha).cos();
    Ok(dp * dp / p_l + dp * dp / p_r)
}

/// `[arcsin(clamp(dnu / nu)) - delta_phi] / (2 l)`.
pub fn estimate_alpha(record: &ShotRecord, proto: &RotationProtocol) -> Result<f64> {
    let total = record.total();
    if total == 0 {
        return Err(Error::NoData);
    }
    let ratio = (record.nu_l as f64 - record.nu_r as f64) / total as f64;
    Ok((ratio.clamp(-1.0, 1.0).asin() - proto.delta_phi) / (2.0 * proto.oam_l as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhotonStatistics {
    /// `nu_L ~ Binomial(nu, p_L)`, `nu_R = nu - nu_L`.
    #[default]
    Binomial,
    /// Independent `Poisson(nu p_L)` and `Poisson(nu p_R)` counts.
    PoissonPerChannel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionSummary {
    pub mean: f64,
    pub stddev: f64,
    pub crb: f64,
    pub trials: usize,
}

impl PrecisionSummary {
    pub fn ratio(&self) -> f64 {
        self.stddev / self.crb
    }
}

/// Per-trial generator: ChaCha8 keyed by `seed`, stream `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn monte_carlo_precision(
    proto: &RotationProtocol,
    alpha_true: f64,
    nu: u64,
    trials: usize,
    seed: u64,
) -> Result<PrecisionSummary> {
    monte_carlo_precision_with(proto, alpha_true, nu, trials, seed, PhotonStatistics::Binomial)
}

/// Samples `trials` acquisitions of `nu` photons, estimates alpha for each,
/// and reports the sample mean and standard deviation next to the
/// Cramér-Rao bound. Results do not depend on thread scheduling.
pub fn monte_carlo_precision_with(
    proto: &RotationProtocol,
    alpha_true: f64,
    nu: u64,
    trials: usize,
    seed: u64,
    statistics: PhotonStatistics,
) -> Result<PrecisionSummary> {
    if trials < 100 {
        return Err(Error::invalid("trials", format!("{trials} < 100")));
    }
    if nu < 1000 {
        return Err(Error::invalid("nu", format!("{nu} < 1000")));
    }
    let (p_l, p_r) = projection_probabilities(proto, alpha_true);
    let estimates: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let record = match statistics {
                PhotonStatistics::Binomial => {
                    let nu_l = Binomial::new(nu, p_l).expect("p in [0, 1]").sample(&mut rng);
                    ShotRecord::new(nu_l, nu - nu_l)
                }
                PhotonStatistics::PoissonPerChannel => {
                    let draw = |mean: f64, rng: &mut ChaCha8Rng| {
                        if mean > 0.0 {
                            Poisson::new(mean).expect("positive mean").sample(rng) as u64
                        } else {
                            0
                        }
                    };
                    let nu_l = draw(nu as f64 * p_l, &mut rng);
                    ShotRecord::new(nu_l, draw(nu as f64 * p_r, &mut rng))
                }
            };
            estimate_alpha(&record, proto)
        })
        .collect::<Result<_>>()?;

    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(PrecisionSummary { mean, stddev: var.sqrt(), crb: proto.cramer_rao(nu), trials })
}
