use std::io::{self, Write};

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::statekit::C64;

pub const MIN_SPECTRUM_LEN: usize = 1024;
/// Bins on either side of the peak left out of the floor estimate.
pub const PEAK_EXCLUSION_BINS: usize = 3;

/// Single-sided amplitude spectrum of a demodulated angle series.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<f64>,
    /// Band used for the peak and floor, Hz.
    pub band: (f64, f64),
    /// Median in-band amplitude away from the peak, rad.
    pub noise_floor: f64,
    /// `(frequency, amplitude)` of the largest in-band bin.
    pub signal_peak: (f64, f64),
}

/// Rectangular-window DFT, scaled so a bin-centred sinusoid of amplitude `A`
/// reads `A`: interior bins `2 |X_k| / n`, DC and Nyquist `|X_k| / n`.
pub fn amplitude_spectrum(series: &[f64], sample_rate: f64, band: (f64, f64)) -> Result<SpectrumReport> {
    let n = series.len();
    if n < MIN_SPECTRUM_LEN {
        return Err(Error::invalid("series", format!("needs at least {MIN_SPECTRUM_LEN} samples, got {n}")));
    }
    if sample_rate.is_nan() || sample_rate <= 0.0 {
        return Err(Error::invalid("sample_rate", "must be positive"));
    }
    let nyquist = sample_rate / 2.0;
    let (lo, hi) = band;
    if !(lo >= 0.0 && lo < hi && hi <= nyquist) {
        return Err(Error::BandOutsideNyquist { lo, hi, nyquist });
    }

    let mut buf: Vec<C64> = series.iter().map(|&x| C64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let df = sample_rate / n as f64;
    let frequencies: Vec<f64> = (0..=half).map(|k| k as f64 * df).collect();
    let amplitudes: Vec<f64> = (0..=half)
        .map(|k| {
            let scale = if k == 0 || (n.is_multiple_of(2) && k == half) { 1.0 } else { 2.0 };
            scale * buf[k].norm() / n as f64
        })
        .collect();

    let in_band: Vec<usize> = (0..=half).filter(|&k| frequencies[k] >= lo && frequencies[k] <= hi).collect();
    if in_band.is_empty() {
        return Err(Error::invalid("band", "contains no frequency bins"));
    }
    let peak = in_band
        .iter()
        .copied()
        .fold(in_band[0], |best, k| if amplitudes[k] > amplitudes[best] { k } else { best });

    let mut rest: Vec<f64> = in_band
        .iter()
        .filter(|&&k| k.abs_diff(peak) > PEAK_EXCLUSION_BINS)
        .map(|&k| amplitudes[k])
        .collect();
    let noise_floor = median(&mut rest).unwrap_or(0.0);

    Ok(SpectrumReport {
        signal_peak: (frequencies[peak], amplitudes[peak]),
        frequencies,
        amplitudes,
        band,
        noise_floor,
    })
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 { values[m] } else { 0.5 * (values[m - 1] + values[m]) })
}

impl SpectrumReport {
    /// Mean square of the original series recovered from the amplitudes:
    /// `sum w_k A_k^2` with `w = 1` at DC and Nyquist and `1/2` elsewhere.
    /// Exact for even lengths.
    pub fn mean_square_from_amplitudes(&self) -> f64 {
        let last = self.amplitudes.len() - 1;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(k, a)| if k == 0 || k == last { a * a } else { 0.5 * a * a })
            .sum()
    }

    /// CSV `f_hz,amp_rad`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "f_hz,amp_rad")?;
        for (f, a) in self.frequencies.iter().zip(&self.amplitudes) {
            writeln!(out, "{f},{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft_amplitude(x: &[f64], k: usize) -> f64 {
        let n = x.len() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, v) in x.iter().enumerate() {
            let a = -2.0 * PI * (k * j) as f64 / n;
            re += v * a.cos();
            im += v * a.sin();
        }
        2.0 * (re * re + im * im).sqrt() / n
    }

    #[test]
    fn bin_centred_sinusoid() {
        let fs = 60e3;
        let x: Vec<f64> = (0..6000).map(|k| 60e-9 * (2.0 * PI * 20e3 * k as f64 / fs).sin()).collect();
        let s = amplitude_spectrum(&x, fs, (18e3, 28e3)).unwrap();
        assert_eq!(s.frequencies.len(), 3001);
        assert!((s.signal_peak.0 - 20e3).abs() < 1e-9);
        assert!((s.signal_peak.1 - 60e-9).abs() < 60e-9 * 1e-9);
        assert!(s.noise_floor < 1e-20);
        for k in [1000, 2000, 2500] {
            assert!((s.amplitudes[k] - naive_dft_amplitude(&x, k)).abs() < 1e-18);
        }
    }

    #[test]
    fn zero_input() {
        let s = amplitude_spectrum(&vec![0.0; 2048], 1000.0, (10.0, 400.0)).unwrap();
        assert!(s.amplitudes.iter().all(|&a| a == 0.0));
        assert_eq!(s.noise_floor, 0.0);
    }

    #[test]
    fn parseval() {
        let x: Vec<f64> = (0..4096).map(|k| ((k * 7919) % 113) as f64 - 56.0).collect();
        let s = amplitude_spectrum(&x, 1.0, (0.0, 0.5)).unwrap();
        let ms = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
        assert!((s.mean_square_from_amplitudes() - ms).abs() < 1e-9 * ms);
    }

    #[test]
    fn guards() {
        assert!(amplitude_spectrum(&[0.0; 100], 1.0, (0.0, 0.5)).is_err());
        assert!(matches!(
            amplitude_spectrum(&vec![0.0; 2048], 60e3, (18e3, 31e3)),
            Err(Error::BandOutsideNyquist { .. })
        ));
    }

    #[test]
    fn csv_header() {
        let s = amplitude_spectrum(&vec![1.0; 1024], 1024.0, (1.0, 10.0)).unwrap();
        let mut out = Vec::new();
        s.write_csv(&mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("f_hz,amp_rad\n0,1\n"));
    }
}
