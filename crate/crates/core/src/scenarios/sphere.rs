use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{Error, Result};

/// Euler angles addressing a point on a Poincaré-type sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    /// `theta` must lie in `[0, pi]`; `phi` is reduced modulo `2 pi`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::invalid("theta", format!("{theta} not in [0, pi]")));
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Equiangular grid: `resolution` polar angles from pole to pole inclusive,
/// `2 * resolution` azimuths in `[0, 2 pi)`. Row-major in `theta`.
pub fn sphere_grid(resolution: usize) -> Result<Vec<SpherePoint>> {
    if resolution < 2 {
        return Err(Error::invalid("resolution", format!("{resolution} < 2")));
    }
    let n_phi = 2 * resolution;
    let mut points = Vec::with_capacity(resolution * n_phi);
    for i in 0..resolution {
        let theta = PI * i as f64 / (resolution - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            points.push(SpherePoint { theta, phi });
        }
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiMapRow {
    pub point: SpherePoint,
    pub qfi_sqpe: f64,
    pub qfi_iqpe: f64,
}

/// CSV with header `theta,phi,qfi_sqpe,qfi_iqpe`, angles in radians.
pub fn write_map_csv<W: Write>(rows: &[QfiMapRow], mut out: W) -> io::Result<()> {
    writeln!(out, "theta,phi,qfi_sqpe,qfi_iqpe")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.point.theta, r.point.phi, r.qfi_sqpe, r.qfi_iqpe)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_grid() {
        let g = sphere_grid(2).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g[0].theta(), 0.0);
        assert_eq!(g[7].theta(), PI);
        assert_eq!(g[3].phi(), 1.5 * PI);
        assert!(sphere_grid(1).is_err());
    }

    #[test]
    fn phi_is_reduced() {
        let p = SpherePoint::new(1.0, -PI / 2.0).unwrap();
        assert!((p.phi() - 1.5 * PI).abs() < 1e-15);
        assert!(SpherePoint::new(4.0, 0.0).is_err());
        assert!(SpherePoint::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = [QfiMapRow { point: SpherePoint::new(0.0, 0.0).unwrap(), qfi_sqpe: 0.0, qfi_iqpe: 4.0 }];
        let mut buf = Vec::new();
        write_map_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "theta,phi,qfi_sqpe,qfi_iqpe\n0,0,0,4\n");
    }
}
