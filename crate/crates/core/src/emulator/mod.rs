//! Emulation of the two-detector rotation experiment.
//!
//! A run synthesizes the detector powers `I0 [1 ± sin(2 l alpha(t) + delta_phi)] / 2`,
//! demodulates the total phase with `arcsin((I1 - I2) / (I1 + I2))`, and then
//! either fits `Phi = 2 l alpha + delta_phi` across several OAM values or
//! takes the amplitude spectrum of `alpha(t)` to read off a marker peak and
//! the noise floor around it.

pub mod config;
pub mod demod;
pub mod fit;
pub mod pipeline;
pub mod pzt;
pub mod record;
pub mod spectrum;

pub use config::ExperimentConfig;
pub use demod::{demodulate, demodulate_phase, DemodulatedSeries};
pub use fit::{fit_oam_series, FitReport};
pub use pipeline::{precision_vs_oam, run_experiment, ExperimentRun, OamRun};
pub use pzt::pzt_rotation_amplitude;
pub use record::{synthesize_record, DetectorRecord, Interference, NoiseSpec, RecordSpec, RotationSignal};
pub use spectrum::{amplitude_spectrum, SpectrumReport};

/// Photodiode responsivity at 780 nm, A/W.
pub const RESPONSIVITY_A_PER_W: f64 = 0.585;
/// Transimpedance gain, V/A.
pub const TRANSIMPEDANCE_V_PER_A: f64 = 15e3;
pub const WAVELENGTH_M: f64 = 780e-9;

const PLANCK: f64 = 6.626_070_15e-34;
const LIGHT_SPEED: f64 = 299_792_458.0;

/// Photon energy at the laser wavelength, J.
pub fn photon_energy() -> f64 {
    PLANCK * LIGHT_SPEED / WAVELENGTH_M
}

/// Detector output voltage per watt of optical power.
pub fn volts_per_watt() -> f64 {
    RESPONSIVITY_A_PER_W * TRANSIMPEDANCE_V_PER_A
}

/// Mixes a run seed with a per-run index into an independent seed.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
