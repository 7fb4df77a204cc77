use std::f64::consts::PI;

use iqpe_core::emulator::pzt::{marker_amplitude, MARKER_FREQ_HZ};
use iqpe_core::emulator::{
    amplitude_spectrum, demodulate, precision_vs_oam, run_experiment, synthesize_record, ExperimentConfig, NoiseSpec,
    RecordSpec, RotationSignal,
};

fn marker_cfg(l: Vec<u32>, noise: NoiseSpec) -> ExperimentConfig {
    ExperimentConfig {
        l,
        power_w: 1e-4,
        delta_phi_rad: 0.0,
        signal_freq_hz: MARKER_FREQ_HZ,
        signal_amp_rad: marker_amplitude(),
        sample_rate: 60e3,
        duration_s: 0.1,
        noise,
        seed: None,
        band_hz: (18e3, 28e3),
    }
}

fn loglog_slope(table: &[(u32, f64)]) -> f64 {
    let xs: Vec<f64> = table.iter().map(|t| (t.0 as f64).ln()).collect();
    let ys: Vec<f64> = table.iter().map(|t| t.1.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn calibrated_floor_at_l150() {
    let cfg = marker_cfg(vec![150], NoiseSpec::calibrated());
    let floors: Vec<f64> = (0..5)
        .map(|seed| run_experiment(&cfg, seed).unwrap().runs[0].spectrum.as_ref().unwrap().noise_floor)
        .collect();
    for f in floors {
        assert!((f - 12.9e-9).abs() < 0.15 * 12.9e-9, "floor {f}");
    }
}

#[test]
fn floor_scales_inversely_with_charge() {
    let cfg = marker_cfg(vec![50], NoiseSpec::calibrated());
    let phase_only = NoiseSpec { shot: false, ..NoiseSpec::calibrated() };
    let table = precision_vs_oam(&cfg, &[50, 80, 100, 150], &phase_only, 21).unwrap();
    assert!((loglog_slope(&table) + 1.0).abs() < 0.1);
    assert!(table.windows(2).all(|w| w[1].1 < w[0].1));
    let ratio = table[0].1 / table[2].1;
    assert!((ratio - 2.0).abs() < 0.2, "{ratio}");

    let shot_only = NoiseSpec { phase_asd: 0.0, shot: true, interference: None };
    let table = precision_vs_oam(&cfg, &[50, 80, 100, 150], &shot_only, 22).unwrap();
    assert!((loglog_slope(&table) + 1.0).abs() < 0.15);
}

#[test]
fn noiseless_marker_peak() {
    let cfg = marker_cfg(vec![150], NoiseSpec::noiseless());
    let run = run_experiment(&cfg, 0).unwrap();
    let (f, a) = run.runs[0].spectrum.as_ref().unwrap().signal_peak;
    assert_eq!(f, 20e3);
    assert!((a - marker_amplitude()).abs() < 1e-3 * marker_amplitude());
}

#[test]
fn peak_does_not_depend_on_power() {
    let signal = RotationSignal::Sinusoid { amplitude: 60e-9, frequency_hz: 20e3, phase: 0.0 };
    let peak = |power_w: f64| {
        let spec = RecordSpec { l: 100, signal, delta_phi: 0.1, power_w, sample_rate: 60e3, duration: 0.1 };
        let r = synthesize_record(&spec, &NoiseSpec::noiseless(), 0).unwrap();
        let d = demodulate(&r, 100, 0.1).unwrap();
        amplitude_spectrum(&d.alpha, 60e3, (18e3, 28e3)).unwrap().signal_peak.1
    };
    let (a, b) = (peak(1e-5), peak(1e-2));
    assert!((a - b).abs() < 0.01 * a);
}

#[test]
fn six_l_fit_under_calibrated_noise() {
    let d = PI / 180.0;
    let mut cfg = marker_cfg(vec![1, 4, 7, 10, 20, 30], NoiseSpec::calibrated());
    cfg.signal_freq_hz = 0.0;
    cfg.signal_amp_rad = 0.99 * d;
    cfg.delta_phi_rad = 0.35 * d;
    for seed in 0..3 {
        let fit = run_experiment(&cfg, seed).unwrap().fit.unwrap();
        assert!(fit.r_square >= 0.999, "{}", fit.r_square);
        assert!((fit.alpha_hat - 0.99 * d).abs() < 1e-3 * d);
    }
}

#[test]
fn parseval_for_noise_records() {
    let cfg = marker_cfg(vec![80], NoiseSpec::calibrated());
    let run = run_experiment(&cfg, 4).unwrap();
    let alpha = &run.runs[0].demod.alpha;
    let mean = alpha.iter().sum::<f64>() / alpha.len() as f64;
    let centred: Vec<f64> = alpha.iter().map(|a| a - mean).collect();
    let s = amplitude_spectrum(&centred, 60e3, (18e3, 28e3)).unwrap();
    let ms = centred.iter().map(|a| a * a).sum::<f64>() / centred.len() as f64;
    assert!((s.mean_square_from_amplitudes() - ms).abs() < 1e-6 * ms);
}
