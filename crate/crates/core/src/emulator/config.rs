//! Flat `key = value` run configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! l = 1, 4, 7, 10, 20, 30
//! power_w = 1e-4
//! delta_phi_rad = 0.006108652381980153
//! signal_freq_hz = 0          # 0 means a constant rotation of signal_amp_rad
//! signal_amp_rad = 0.017278759594743863
//! sample_rate = 60000
//! duration_s = 0.1
//! noise.phase_asd = 0         # rad/sqrt(Hz) white phase noise on Phi
//! noise.shot = false
//! seed = 7                    # optional
//! ```
//!
//! Optional keys: `seed`, `band_lo_hz` / `band_hi_hz` (default 18 kHz and
//! 28 kHz), `noise.interference_amp_rad` / `noise.interference_phase_rad`
//! (an additive sinusoid on `Phi` at the signal frequency).

use std::collections::BTreeMap;

use super::record::{Interference, NoiseSpec, RecordSpec, RotationSignal};
use crate::error::{Error, Result};

/// Versioned noise calibration shipped with the crate.
pub const CALIBRATED_NOISE_V1: &str = include_str!("../../config/noise_calibrated_v1.conf");

const REQUIRED: [&str; 9] = [
    "l",
    "power_w",
    "delta_phi_rad",
    "signal_freq_hz",
    "signal_amp_rad",
    "sample_rate",
    "duration_s",
    "noise.phase_asd",
    "noise.shot",
];

const OPTIONAL: [&str; 5] = [
    "seed",
    "band_lo_hz",
    "band_hi_hz",
    "noise.interference_amp_rad",
    "noise.interference_phase_rad",
];

/// Parsed `key -> (line number, raw value)`.
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, (usize, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
                line,
                key: content.to_owned(),
                message: "expected `key = value`".into(),
            })?;
            let key = key.trim().to_owned();
            let value = value.trim().to_owned();
            if key.is_empty() {
                return Err(Error::Config { line, key, message: "empty key".into() });
            }
            if let Some((first, _)) = entries.get(&key) {
                return Err(Error::Config { line, key, message: format!("duplicate of line {first}") });
            }
            entries.insert(key, (line, value));
        }
        Ok(Self { entries })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn get_raw(&self, key: &str) -> Option<(usize, &str)> {
        self.entries.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn require(&self, key: &str) -> Result<(usize, &str)> {
        self.get_raw(key).ok_or_else(|| Error::Config { line: 0, key: key.to_owned(), message: "missing".into() })
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let (line, v) = self.require(key)?;
        parse_f64(line, key, v)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get_raw(key) {
            Some((line, v)) => parse_f64(line, key, v),
            None => Ok(default),
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        let (line, v) = self.require(key)?;
        match v {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            _ => Err(Error::Config { line, key: key.to_owned(), message: format!("`{v}` is not a boolean") }),
        }
    }

    pub fn u64_opt(&self, key: &str) -> Result<Option<u64>> {
        self.get_raw(key)
            .map(|(line, v)| {
                v.parse().map_err(|_| Error::Config {
                    line,
                    key: key.to_owned(),
                    message: format!("`{v}` is not a non-negative integer"),
                })
            })
            .transpose()
    }

    pub fn u32_list(&self, key: &str) -> Result<Vec<u32>> {
        let (line, v) = self.require(key)?;
        let values = v
            .split(',')
            .map(|s| {
                s.trim().parse::<u32>().map_err(|_| Error::Config {
                    line,
                    key: key.to_owned(),
                    message: format!("`{}` is not a non-negative integer", s.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Config { line, key: key.to_owned(), message: "empty list".into() });
        }
        Ok(values)
    }
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Config { line, key: key.to_owned(), message: format!("`{v}` is not a finite number") }),
    }
}

fn check(cond: bool, kv: &KeyValues, key: &str, message: &str) -> Result<()> {
    if cond {
        return Ok(());
    }
    let line = kv.get_raw(key).map_or(0, |(l, _)| l);
    Err(Error::Config { line, key: key.to_owned(), message: message.to_owned() })
}

impl NoiseSpec {
    /// Reads `noise.phase_asd`, `noise.shot` and the optional interference keys.
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let phase_asd = kv.f64("noise.phase_asd")?;
        check(phase_asd >= 0.0, kv, "noise.phase_asd", "must be non-negative")?;
        let amp = kv.f64_or("noise.interference_amp_rad", 0.0)?;
        let phase = kv.f64_or("noise.interference_phase_rad", 0.0)?;
        Ok(Self {
            phase_asd,
            shot: kv.bool("noise.shot")?,
            interference: (amp != 0.0).then_some(Interference { amplitude: amp, phase }),
        })
    }

    /// Noise budget that puts the `l = 150` floor at the reference value;
    /// see `config/noise_calibrated_v1.conf`.
    pub fn calibrated() -> Self {
        let kv = KeyValues::parse(CALIBRATED_NOISE_V1).expect("bundled calibration parses");
        Self::from_key_values(&kv).expect("bundled calibration is complete")
    }
}

/// Everything needed to run one emulated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub l: Vec<u32>,
    pub power_w: f64,
    pub delta_phi_rad: f64,
    pub signal_freq_hz: f64,
    pub signal_amp_rad: f64,
    pub sample_rate: f64,
    pub duration_s: f64,
    pub noise: NoiseSpec,
    pub seed: Option<u64>,
    pub band_hz: (f64, f64),
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let kv = KeyValues::parse(text)?;
        for key in kv.keys() {
            if !REQUIRED.contains(&key) && !OPTIONAL.contains(&key) {
                let (line, _) = kv.get_raw(key).expect("present");
                return Err(Error::Config { line, key: key.to_owned(), message: "unknown key".into() });
            }
        }
        let l = kv.u32_list("l")?;
        check(l.iter().all(|&x| x >= 1), &kv, "l", "OAM values must be at least 1")?;
        let cfg = Self {
            l,
            power_w: kv.f64("power_w")?,
            delta_phi_rad: kv.f64("delta_phi_rad")?,
            signal_freq_hz: kv.f64("signal_freq_hz")?,
            signal_amp_rad: kv.f64("signal_amp_rad")?,
            sample_rate: kv.f64("sample_rate")?,
            duration_s: kv.f64("duration_s")?,
            noise: NoiseSpec::from_key_values(&kv)?,
            seed: kv.u64_opt("seed")?,
            band_hz: (kv.f64_or("band_lo_hz", 18e3)?, kv.f64_or("band_hi_hz", 28e3)?),
        };
        check(cfg.power_w > 0.0, &kv, "power_w", "must be positive")?;
        check(cfg.sample_rate > 0.0, &kv, "sample_rate", "must be positive")?;
        check(cfg.duration_s > 0.0, &kv, "duration_s", "must be positive")?;
        check(cfg.signal_freq_hz >= 0.0, &kv, "signal_freq_hz", "must be non-negative")?;
        Ok(cfg)
    }

    /// Constant rotation when `signal_freq_hz == 0`, sinusoid otherwise.
    pub fn signal(&self) -> RotationSignal {
        if self.signal_freq_hz == 0.0 {
            RotationSignal::Constant(self.signal_amp_rad)
        } else {
            RotationSignal::Sinusoid { amplitude: self.signal_amp_rad, frequency_hz: self.signal_freq_hz, phase: 0.0 }
        }
    }

    pub fn record_spec(&self, l: u32) -> RecordSpec {
        RecordSpec {
            l,
            signal: self.signal(),
            delta_phi: self.delta_phi_rad,
            power_w: self.power_w,
            sample_rate: self.sample_rate,
            duration: self.duration_s,
        }
    }

    pub fn wants_spectrum(&self) -> bool {
        self.signal_freq_hz > 0.0
    }

    /// Static runs over at least three distinct OAM values.
    pub fn wants_fit(&self) -> bool {
        if self.wants_spectrum() {
            return false;
        }
        let mut distinct = self.l.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len() >= 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STATIC: &str = "\
# six-l static run
l = 1, 4, 7, 10, 20, 30
power_w = 1e-4
delta_phi_rad = 0.0061
signal_freq_hz = 0
signal_amp_rad = 0.0173
sample_rate = 60000
duration_s = 0.1
noise.phase_asd = 0
noise.shot = false
";

    #[test]
    fn parses_static_config() {
        let cfg = ExperimentConfig::parse(STATIC).unwrap();
        assert_eq!(cfg.l, vec![1, 4, 7, 10, 20, 30]);
        assert_eq!(cfg.signal(), RotationSignal::Constant(0.0173));
        assert!(cfg.wants_fit() && !cfg.wants_spectrum());
        assert_eq!(cfg.seed, None);
        assert_eq!(cfg.band_hz, (18e3, 28e3));
    }

    #[test]
    fn reports_line_and_key() {
        let bad = STATIC.replace("power_w = 1e-4", "power_w = lots");
        match ExperimentConfig::parse(&bad).unwrap_err() {
            Error::Config { line, key, .. } => assert_eq!((line, key.as_str()), (3, "power_w")),
            e => panic!("{e}"),
        }
        let missing = STATIC.replace("noise.shot = false\n", "");
        assert!(matches!(ExperimentConfig::parse(&missing), Err(Error::Config { key, .. }) if key == "noise.shot"));
        let unknown = format!("{STATIC}colour = blue\n");
        assert!(matches!(ExperimentConfig::parse(&unknown), Err(Error::Config { line: 11, .. })));
        let dup = format!("{STATIC}l = 3\n");
        assert!(matches!(ExperimentConfig::parse(&dup), Err(Error::Config { line: 11, .. })));
        let no_eq = format!("{STATIC}oops\n");
        assert!(ExperimentConfig::parse(&no_eq).is_err());
        let zero_l = STATIC.replace("l = 1,", "l = 0,");
        assert!(ExperimentConfig::parse(&zero_l).is_err());
    }

    #[test]
    fn bundled_calibration_loads() {
        let n = NoiseSpec::calibrated();
        assert!(n.phase_asd > 0.0 && n.shot && n.interference.is_none());
    }
}
