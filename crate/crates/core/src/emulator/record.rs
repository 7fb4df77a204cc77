use std::f64::consts::PI;
use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{photon_energy, volts_per_watt};
use crate::error::{Error, Result};

/// Rotation angle as a function of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationSignal {
    Constant(f64),
    Sinusoid { amplitude: f64, frequency_hz: f64, phase: f64 },
}

impl RotationSignal {
    pub fn angle(&self, t: f64) -> f64 {
        match *self {
            RotationSignal::Constant(a) => a,
            RotationSignal::Sinusoid { amplitude, frequency_hz, phase } => {
                amplitude * (2.0 * PI * frequency_hz * t + phase).sin()
            }
        }
    }

    pub fn max_frequency(&self) -> f64 {
        match *self {
            RotationSignal::Constant(_) => 0.0,
            RotationSignal::Sinusoid { frequency_hz, .. } => frequency_hz,
        }
    }
}

/// Same-frequency pickup on `Phi` from actuator-induced beam misalignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interference {
    pub amplitude: f64,
    pub phase: f64,
}

/// Additive noise model.
///
/// `phase_asd` is white Gaussian noise on `Phi` in rad/sqrt(Hz), giving a
/// per-sample standard deviation of `phase_asd * sqrt(sample_rate / 2)`.
/// With `shot` set, each channel's photon count per sample is perturbed by
/// a Gaussian of variance equal to its mean (photon energy at 780 nm).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseSpec {
    pub phase_asd: f64,
    pub shot: bool,
    pub interference: Option<Interference>,
}

impl NoiseSpec {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn is_noiseless(&self) -> bool {
        self.phase_asd == 0.0 && !self.shot
    }

    /// Standard deviation of `Phi` per sample from both noise sources, at
    /// total optical power `power_w`.
    pub fn phase_sigma_per_sample(&self, power_w: f64, sample_rate: f64) -> f64 {
        let phase = self.phase_asd * (sample_rate / 2.0).sqrt();
        let shot_var = if self.shot { photon_energy() * sample_rate / power_w } else { 0.0 };
        (phase * phase + shot_var).sqrt()
    }
}

/// White phase ASD for which the median spectrum amplitude of the
/// demodulated angle at OAM value `l` equals `target_floor`, after removing
/// the shot-noise share at `power_w` (pass `None` to ignore shot noise).
///
/// For white noise of per-sample deviation `s` over `n` samples the
/// single-sided amplitude bins are Rayleigh distributed with median
/// `2 s sqrt(ln 2 / n)`.
pub fn calibrate_phase_asd(target_floor: f64, l: u32, sample_rate: f64, duration: f64, power_w: Option<f64>) -> f64 {
    let n = (sample_rate * duration).round();
    let sigma_alpha = target_floor / (2.0 * (std::f64::consts::LN_2 / n).sqrt());
    let sigma_phi = sigma_alpha * 2.0 * l as f64;
    let shot_var = power_w.map_or(0.0, |p| photon_energy() * sample_rate / p);
    let phase_var = (sigma_phi * sigma_phi - shot_var).max(0.0);
    phase_var.sqrt() / (sample_rate / 2.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecordSpec {
    pub l: u32,
    pub signal: RotationSignal,
    pub delta_phi: f64,
    /// Total optical power `I0` reaching the two detectors, W.
    pub power_w: f64,
    pub sample_rate: f64,
    pub duration: f64,
}

impl RecordSpec {
    pub fn sample_count(&self) -> usize {
        (self.sample_rate * self.duration).round() as usize
    }
}

/// Two detector channels in volts.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorRecord {
    pub sample_rate: f64,
    pub duration: f64,
    pub ch1: Vec<f64>,
    pub ch2: Vec<f64>,
}

impl DetectorRecord {
    pub fn len(&self) -> usize {
        self.ch1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ch1.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 / self.sample_rate
    }

    /// Channel powers in watts.
    pub fn watts(&self) -> (Vec<f64>, Vec<f64>) {
        let k = volts_per_watt();
        (self.ch1.iter().map(|v| v / k).collect(), self.ch2.iter().map(|v| v / k).collect())
    }

    /// CSV `t,ch1,ch2`, volts.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,ch1,ch2")?;
        for k in 0..self.len() {
            writeln!(out, "{},{},{}", self.time(k), self.ch1[k], self.ch2[k])?;
        }
        Ok(())
    }
}

/// Synthesizes both detector channels:
/// `I1,2 = I0 [1 ± sin(2 l alpha(t) + delta_phi + noise)] / 2`, plus shot
/// noise if enabled, converted to volts.
pub fn synthesize_record(spec: &RecordSpec, noise: &NoiseSpec, seed: u64) -> Result<DetectorRecord> {
    if !(spec.sample_rate > 0.0 && spec.duration > 0.0) {
        return Err(Error::invalid("sample_rate", "sample rate and duration must be positive"));
    }
    if spec.power_w.is_nan() || spec.power_w <= 0.0 {
        return Err(Error::invalid("power_w", "must be positive"));
    }
    let f_max = spec.signal.max_frequency();
    if spec.sample_rate < 2.0 * f_max {
        return Err(Error::Nyquist { sample_rate: spec.sample_rate, frequency: f_max });
    }

    let n = spec.sample_count();
    let dt = 1.0 / spec.sample_rate;
    let two_l = 2.0 * spec.l as f64;
    let phase_sigma = noise.phase_asd * (spec.sample_rate / 2.0).sqrt();
    let photons_per_watt = dt / photon_energy();
    let to_volts = volts_per_watt();

    let mut phase_rng = ChaCha8Rng::seed_from_u64(seed);
    phase_rng.set_stream(0);
    let mut shot_rng = ChaCha8Rng::seed_from_u64(seed);
    shot_rng.set_stream(1);

    let mut ch1 = Vec::with_capacity(n);
    let mut ch2 = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 * dt;
        let mut phi = two_l * spec.signal.angle(t) + spec.delta_phi;
        if phase_sigma > 0.0 {
            let z: f64 = StandardNormal.sample(&mut phase_rng);
            phi += phase_sigma * z;
        }
        if let Some(i) = noise.interference {
            phi += i.amplitude * (2.0 * PI * f_max * t + i.phase).sin();
        }
        let s = phi.sin();
        let mut p1 = 0.5 * spec.power_w * (1.0 + s);
        let mut p2 = 0.5 * spec.power_w * (1.0 - s);
        if noise.shot {
            p1 = shot(p1, photons_per_watt, &mut shot_rng);
            p2 = shot(p2, photons_per_watt, &mut shot_rng);
        }
        ch1.push(p1 * to_volts);
        ch2.push(p2 * to_volts);
    }
    Ok(DetectorRecord { sample_rate: spec.sample_rate, duration: spec.duration, ch1, ch2 })
}

/// Gaussian approximation to Poisson counting, clamped at zero.
fn shot(power: f64, photons_per_watt: f64, rng: &mut ChaCha8Rng) -> f64 {
    let mean = power * photons_per_watt;
    let z: f64 = StandardNormal.sample(rng);
    (mean + mean.sqrt() * z).max(0.0) / photons_per_watt
}
