use std::io::{self, Write};

use super::record::DetectorRecord;
use crate::error::{Error, Result};

/// `arcsin((I1 - I2) / (I1 + I2))` per sample, ratio clamped to `[-1, 1]`.
/// Samples with zero total power are collected into the error.
pub fn demodulate_phase(record: &DetectorRecord) -> Result<Vec<f64>> {
    let mut bad = Vec::new();
    let phase = record
        .ch1
        .iter()
        .zip(&record.ch2)
        .enumerate()
        .map(|(k, (&a, &b))| {
            let total = a + b;
            if total <= 0.0 {
                bad.push(k);
                return 0.0;
            }
            ((a - b) / total).clamp(-1.0, 1.0).asin()
        })
        .collect();
    if !bad.is_empty() {
        return Err(Error::ZeroTotalPower { indices: bad });
    }
    Ok(phase)
}

/// Demodulated phase and the rotation angle `(Phi - delta_phi) / (2 l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DemodulatedSeries {
    pub sample_rate: f64,
    pub phi: Vec<f64>,
    pub alpha: Vec<f64>,
}

pub fn demodulate(record: &DetectorRecord, l: u32, delta_phi: f64) -> Result<DemodulatedSeries> {
    if l == 0 {
        return Err(Error::invalid("l", "must be at least 1"));
    }
    let phi = demodulate_phase(record)?;
    let alpha = phi.iter().map(|p| (p - delta_phi) / (2.0 * l as f64)).collect();
    Ok(DemodulatedSeries { sample_rate: record.sample_rate, phi, alpha })
}

impl DemodulatedSeries {
    pub fn mean_phi(&self) -> f64 {
        self.phi.iter().sum::<f64>() / self.phi.len() as f64
    }

    /// CSV `t,phi,alpha`, radians.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,phi,alpha")?;
        for (k, (p, a)) in self.phi.iter().zip(&self.alpha).enumerate() {
            writeln!(out, "{},{},{}", k as f64 / self.sample_rate, p, a)?;
        }
        Ok(())
    }
}
