use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use iqpe_core::emulator::{fit_oam_series, run_experiment, ExperimentConfig, ExperimentRun, FitReport};
use iqpe_core::protocol::{monte_carlo_precision_with, PhotonStatistics, RotationProtocol};
use iqpe_core::scenarios::{birefringence_qfi_map, kerr_qfi, rotation_qfi_map, write_map_csv, QfiMapRow};

use crate::args::{Cli, Command, FitArgs, KerrArgs, QfiMapArgs, RotationSimArgs, Scenario, Statistics};
use crate::error::CliError;
use crate::manifest::{RunManifest, MANIFEST_FILE};
use crate::output::ArtifactWriter;

/// `qfi_sqpe` below this marks a dead zone in the map summary.
pub const DEAD_ZONE_THRESHOLD: f64 = 1e-9;

pub fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    if cli.config.is_some() && !matches!(cli.command, Command::Experiment) {
        return Err(CliError::Usage("--config is only used by `experiment`".into()));
    }
    let mut out = ArtifactWriter::create(&cli.out)?;
    let (subcommand, seed, parameters) = match &cli.command {
        Command::QfiMap(a) => ("qfi-map", None, qfi_map(a, &mut out)?),
        Command::Kerr(a) => ("kerr", None, kerr(a, &mut out)?),
        Command::RotationSim(a) => {
            let seed = cli.seed.ok_or_else(|| CliError::Usage("`rotation-sim` requires --seed".into()))?;
            ("rotation-sim", Some(seed), rotation_sim(a, seed, &mut out)?)
        }
        Command::Experiment => {
            let path = cli.config.as_deref().ok_or_else(|| CliError::Usage("`experiment` requires --config".into()))?;
            let (seed, params) = experiment(path, cli.seed, &mut out)?;
            ("experiment", seed, params)
        }
        Command::Fit(a) => ("fit", None, fit(a, &mut out)?),
    };
    let dir = out.dir().to_path_buf();
    let manifest = RunManifest {
        subcommand: subcommand.to_owned(),
        config_path: cli.config.as_ref().map(|p| p.display().to_string()),
        seed,
        output_dir: dir.display().to_string(),
        parameters,
        artifact_checksums: out.into_checksums(),
    };
    let mut text = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    text.push(b'\n');
    crate::output::write_atomic(&dir.join(MANIFEST_FILE), &text)?;
    Ok(manifest)
}

fn range(values: impl Iterator<Item = f64>) -> Value {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    json!({ "min": lo, "max": hi })
}

fn qfi_map(a: &QfiMapArgs, out: &mut ArtifactWriter) -> Result<Value, CliError> {
    let rows: Vec<QfiMapRow> = match a.scenario {
        Scenario::Birefringence => birefringence_qfi_map(a.resolution)?,
        Scenario::Rotation => rotation_qfi_map(a.order, a.resolution)?,
    };
    out.write_with("qfi_map.csv", |buf| write_map_csv(&rows, buf))?;
    let dead: Vec<Value> = rows
        .iter()
        .filter(|r| r.qfi_sqpe < DEAD_ZONE_THRESHOLD)
        .map(|r| json!({ "theta": r.point.theta(), "phi": r.point.phi() }))
        .collect();
    let order = (a.scenario == Scenario::Rotation).then_some(a.order);
    let summary = json!({
        "scenario": a.scenario.name(),
        "order": order,
        "resolution": a.resolution,
        "rows": rows.len(),
        "qfi_sqpe": range(rows.iter().map(|r| r.qfi_sqpe)),
        "qfi_iqpe": range(rows.iter().map(|r| r.qfi_iqpe)),
        "dead_zones": dead,
    });
    out.write_json("summary.json", &summary)?;
    Ok(json!({ "scenario": a.scenario.name(), "order": order, "resolution": a.resolution }))
}

fn kerr(a: &KerrArgs, out: &mut ArtifactWriter) -> Result<Value, CliError> {
    let k = kerr_qfi(a.nbar, a.truncation)?;
    out.write_json(
        "kerr.json",
        &json!({ "nbar": a.nbar, "qfi_sqpe": k.qfi_sqpe, "qfi_iqpe": k.qfi_iqpe, "truncation": k.truncation }),
    )?;
    Ok(json!({ "nbar": a.nbar, "truncation": k.truncation }))
}

fn rotation_sim(a: &RotationSimArgs, seed: u64, out: &mut ArtifactWriter) -> Result<Value, CliError> {
    let alpha = a.alpha_deg.to_radians();
    let delta_phi = a.delta_phi_deg.to_radians();
    let proto = RotationProtocol::new(a.l, delta_phi)?;
    let (statistics, name) = match a.statistics {
        Statistics::Binomial => (PhotonStatistics::Binomial, "binomial"),
        Statistics::Poisson => (PhotonStatistics::PoissonPerChannel, "poisson"),
    };
    let s = monte_carlo_precision_with(&proto, alpha, a.nu, a.trials, seed, statistics)?;
    out.write_json(
        "rotation_sim.json",
        &json!({
            "l": a.l,
            "alpha_rad": alpha,
            "delta_phi_rad": delta_phi,
            "nu": a.nu,
            "trials": s.trials,
            "statistics": name,
            "mean_estimate": s.mean,
            "empirical_stddev": s.stddev,
            "crb": s.crb,
            "ratio": s.ratio(),
        }),
    )?;
    Ok(json!({
        "l": a.l,
        "alpha_rad": alpha,
        "delta_phi_rad": delta_phi,
        "nu": a.nu,
        "trials": a.trials,
        "statistics": name,
    }))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn experiment(path: &Path, seed_flag: Option<u64>, out: &mut ArtifactWriter) -> Result<(Option<u64>, Value), CliError> {
    let cfg = ExperimentConfig::parse(&read_text(path)?)
        .map_err(|source| CliError::Config { path: path.to_path_buf(), source })?;
    let mut sorted = cfg.l.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::Usage(format!("{}: repeated OAM value in `l`", path.display())));
    }
    let seed = seed_flag.or(cfg.seed);
    if seed.is_none() && !cfg.noise.is_noiseless() {
        return Err(CliError::Usage("noisy experiment needs --seed or a `seed` config key".into()));
    }
    let run = run_experiment(&cfg, seed.unwrap_or(0))?;
    write_experiment(&run, out)?;

    let params = json!({
        "l": cfg.l,
        "power_w": cfg.power_w,
        "delta_phi_rad": cfg.delta_phi_rad,
        "signal_freq_hz": cfg.signal_freq_hz,
        "signal_amp_rad": cfg.signal_amp_rad,
        "sample_rate": cfg.sample_rate,
        "duration_s": cfg.duration_s,
        "noise": {
            "phase_asd": cfg.noise.phase_asd,
            "shot": cfg.noise.shot,
            "interference_amp_rad": cfg.noise.interference.map_or(0.0, |i| i.amplitude),
            "interference_phase_rad": cfg.noise.interference.map_or(0.0, |i| i.phase),
        },
        "band_hz": [cfg.band_hz.0, cfg.band_hz.1],
    });
    Ok((seed, params))
}

fn write_experiment(run: &ExperimentRun, out: &mut ArtifactWriter) -> Result<(), CliError> {
    let mut runs = Vec::new();
    for r in &run.runs {
        out.write_with(&format!("record_l{}.csv", r.l), |buf| r.record.write_csv(buf))?;
        out.write_with(&format!("demod_l{}.csv", r.l), |buf| r.demod.write_csv(buf))?;
        let mut entry = json!({ "l": r.l, "phi_mean_rad": r.phi_mean });
        if let Some(s) = &r.spectrum {
            out.write_with(&format!("spectrum_l{}.csv", r.l), |buf| s.write_csv(buf))?;
            entry["signal_peak_hz"] = json!(s.signal_peak.0);
            entry["signal_peak_rad"] = json!(s.signal_peak.1);
            entry["noise_floor_rad"] = json!(s.noise_floor);
        }
        runs.push(entry);
    }
    let summary = json!({ "runs": runs, "fit": run.fit.map(fit_json) });
    out.write_json("summary.json", &summary)
}

fn fit_json(f: FitReport) -> Value {
    json!({
        "alpha_hat_rad": f.alpha_hat,
        "delta_phi_hat_rad": f.delta_phi_hat,
        "r_square": f.r_square,
        "alpha_hat_deg": f.alpha_hat.to_degrees(),
        "delta_phi_hat_deg": f.delta_phi_hat.to_degrees(),
    })
}

/// Reads `l,phi_rad` rows; blank lines are skipped.
pub fn parse_fit_csv(path: &Path, text: &str) -> Result<Vec<(u32, f64)>, CliError> {
    let bad = |line: usize, message: String| CliError::Input { path: path.to_path_buf(), line, message };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim().replace(' ', "") == "l,phi_rad" => {}
        Some((i, _)) => return Err(bad(i + 1, "expected header `l,phi_rad`".into())),
        None => return Err(bad(0, "empty file".into())),
    }
    lines
        .map(|(i, line)| {
            let mut cols = line.split(',').map(str::trim);
            let (Some(l), Some(phi), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(bad(i + 1, "expected two columns".into()));
            };
            let l: u32 = l.parse().map_err(|_| bad(i + 1, format!("`{l}` is not an OAM value")))?;
            let phi: f64 = match phi.parse::<f64>() {
                Ok(v) if v.is_finite() => v,
                _ => return Err(bad(i + 1, format!("`{phi}` is not a finite phase"))),
            };
            Ok((l, phi))
        })
        .collect()
}

fn fit(a: &FitArgs, out: &mut ArtifactWriter) -> Result<Value, CliError> {
    let points = parse_fit_csv(&a.input, &read_text(&a.input)?)?;
    let report = fit_oam_series(&points)?;
    let mut body = fit_json(report);
    body["points"] = json!(points.len());
    out.write_json("fit.json", &body)?;
    Ok(json!({ "input": a.input.display().to_string(), "points": points.len() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_csv_parsing() {
        let p = Path::new("m.csv");
        let pts = parse_fit_csv(p, "l,phi_rad\n1,0.1\n\n4, 0.4\n").unwrap();
        assert_eq!(pts, vec![(1, 0.1), (4, 0.4)]);
        match parse_fit_csv(p, "l,phi_rad\n1,0.1\nx,0.2\n").unwrap_err() {
            CliError::Input { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        assert!(parse_fit_csv(p, "l,phi\n1,0.1\n").is_err());
        assert!(parse_fit_csv(p, "").is_err());
    }
}
