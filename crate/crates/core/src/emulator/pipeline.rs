use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::demod::{demodulate, DemodulatedSeries};
use super::derive_seed;
use super::fit::{fit_oam_series, FitReport};
use super::record::{synthesize_record, DetectorRecord, NoiseSpec};
use super::spectrum::{amplitude_spectrum, SpectrumReport};
use crate::error::Result;

/// Output of the pipeline for one OAM value.
#[derive(Debug, Clone)]
pub struct OamRun {
    pub l: u32,
    pub record: DetectorRecord,
    pub demod: DemodulatedSeries,
    /// Mean demodulated phase over the record, rad.
    pub phi_mean: f64,
    pub spectrum: Option<SpectrumReport>,
}

#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub runs: Vec<OamRun>,
    pub fit: Option<FitReport>,
}

fn run_one(cfg: &ExperimentConfig, l: u32, noise: &NoiseSpec, seed: u64) -> Result<OamRun> {
    let record = synthesize_record(&cfg.record_spec(l), noise, seed)?;
    let demod = demodulate(&record, l, cfg.delta_phi_rad)?;
    let spectrum = if cfg.wants_spectrum() {
        Some(amplitude_spectrum(&demod.alpha, cfg.sample_rate, cfg.band_hz)?)
    } else {
        None
    };
    Ok(OamRun { l, phi_mean: demod.mean_phi(), record, demod, spectrum })
}

/// Synthesize, demodulate and analyse every OAM value in `cfg.l`; the runs
/// are independent and use seeds derived from `seed` and their position.
pub fn run_experiment(cfg: &ExperimentConfig, seed: u64) -> Result<ExperimentRun> {
    let runs = cfg
        .l
        .par_iter()
        .enumerate()
        .map(|(i, &l)| run_one(cfg, l, &cfg.noise, derive_seed(seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let fit = if cfg.wants_fit() {
        let points: Vec<(u32, f64)> = runs.iter().map(|r| (r.l, r.phi_mean)).collect();
        Some(fit_oam_series(&points)?)
    } else {
        None
    };
    Ok(ExperimentRun { runs, fit })
}

/// Noise floor of the demodulated angle for each `l`, all other settings
/// taken from `base`. The signal is kept, so the band around it is
/// excluded exactly as in a marked run.
pub fn precision_vs_oam(base: &ExperimentConfig, l_values: &[u32], noise: &NoiseSpec, seed: u64) -> Result<Vec<(u32, f64)>> {
    let mut cfg = base.clone();
    if !cfg.wants_spectrum() {
        cfg.signal_freq_hz = (cfg.band_hz.0 + cfg.band_hz.1) / 2.0;
        cfg.signal_amp_rad = 0.0;
    }
    l_values
        .par_iter()
        .enumerate()
        .map(|(i, &l)| {
            let run = run_one(&cfg, l, noise, derive_seed(seed, i as u64))?;
            Ok((l, run.spectrum.expect("spectrum requested").noise_floor))
        })
        .collect()
}
