//! Sampled Laguerre-Gaussian fields at the focal plane, lengths in units
//! of the waist `w`.
//!
//! The azimuthal factor is `exp(-i l phi)`. Grids are node-centred: sample
//! `(i, j)` sits at `x = -extent + i dx`, `y = -extent + j dx` with
//! `dx = 2 extent / (n - 1)`, stored row-major with `j` (the `y` index) as
//! the row.
//!
//! # Binary layout
//!
//! [`LgFieldSample::write_to`] emits one ASCII header line
//!
//! ```text
//! LGFIELD v1 n=<n> extent=<extent> p=<p> l=<l>\n
//! ```
//!
//! followed by `n * n` complex samples in the same row-major order, each as
//! two little-endian `f64` values `(re, im)`.

use std::f64::consts::PI;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::statekit::C64;

/// Samples whose intensity at the grid boundary exceeds this fraction of
/// the peak are rejected as truncated.
pub const BOUNDARY_RATIO: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LgFieldSample {
    grid: Vec<C64>,
    n: usize,
    extent: f64,
    p: u32,
    l: i32,
}

/// Generalized Laguerre polynomial `L_p^a(x)` by three-term recurrence.
pub fn laguerre(p: u32, a: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + a - x);
    if p == 0 {
        return prev;
    }
    for k in 1..p {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Analytic field value at polar coordinates `(r, phi)`, `w = 1`.
pub fn lg_amplitude(p: u32, l: i32, r: f64, phi: f64) -> C64 {
    let al = l.unsigned_abs();
    // ln[p! / (p + |l|)!]
    let log_ratio: f64 = -(p + 1..=p + al).map(|k| (k as f64).ln()).sum::<f64>();
    let norm = (0.5 * ((al as f64 + 1.0) * 2f64.ln() + log_ratio - PI.ln())).exp();
    let radial = norm * laguerre(p, al as f64, 2.0 * r * r) * r.powi(al as i32) * (-r * r).exp();
    C64::from_polar(radial, -(l as f64) * phi)
}

/// Samples the field on an `n x n` grid spanning `[-extent, extent]^2` and
/// rescales so that `sum |psi|^2 dx^2 = 1`.
pub fn lg_field(p: u32, l: i32, grid_n: usize, extent: f64) -> Result<LgFieldSample> {
    if grid_n < 64 {
        return Err(Error::invalid("grid_n", format!("{grid_n} < 64")));
    }
    if !(extent >= 4.0 && extent.is_finite()) {
        return Err(Error::invalid("extent", format!("{extent} < 4 waists")));
    }
    let dx = 2.0 * extent / (grid_n - 1) as f64;
    let coord = |i: usize| -extent + i as f64 * dx;
    let mut grid = Vec::with_capacity(grid_n * grid_n);
    for j in 0..grid_n {
        let y = coord(j);
        for i in 0..grid_n {
            let x = coord(i);
            grid.push(lg_amplitude(p, l, x.hypot(y), y.atan2(x)));
        }
    }

    let peak = grid.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let mut edge = 0.0f64;
    for k in 0..grid_n {
        for idx in [k, (grid_n - 1) * grid_n + k, k * grid_n, k * grid_n + grid_n - 1] {
            edge = edge.max(grid[idx].norm_sqr());
        }
    }
    let ratio = edge / peak;
    if ratio > BOUNDARY_RATIO {
        return Err(Error::FieldAliasing { extent, ratio });
    }

    let total: f64 = grid.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx;
    let scale = 1.0 / total.sqrt();
    for z in &mut grid {
        *z *= scale;
    }
    Ok(LgFieldSample { grid, n: grid_n, extent, p, l })
}

impl LgFieldSample {
    pub fn grid_n(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn radial_index(&self) -> u32 {
        self.p
    }

    pub fn charge(&self) -> i32 {
        self.l
    }

    pub fn samples(&self) -> &[C64] {
        &self.grid
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.n - 1) as f64
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.grid[j * self.n + i]
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    /// `sum |psi|^2 dx^2`.
    pub fn l2_norm_squared(&self) -> f64 {
        let dx = self.spacing();
        self.grid.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx
    }

    /// Bilinear interpolation at `(x, y)`; zero outside the grid.
    pub fn sample(&self, x: f64, y: f64) -> C64 {
        let dx = self.spacing();
        let u = (x + self.extent) / dx;
        let v = (y + self.extent) / dx;
        let last = (self.n - 1) as f64;
        if !(0.0..=last).contains(&u) || !(0.0..=last).contains(&v) {
            return C64::from(0.0);
        }
        let i = (u.floor() as usize).min(self.n - 2);
        let j = (v.floor() as usize).min(self.n - 2);
        let (fu, fv) = (u - i as f64, v - j as f64);
        self.at(i, j) * ((1.0 - fu) * (1.0 - fv))
            + self.at(i + 1, j) * (fu * (1.0 - fv))
            + self.at(i, j + 1) * ((1.0 - fu) * fv)
            + self.at(i + 1, j + 1) * (fu * fv)
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "LGFIELD v1 n={} extent={} p={} l={}", self.n, self.extent, self.p, self.l)?;
        for z in &self.grid {
            out.write_all(&z.re.to_le_bytes())?;
            out.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(mut input: R) -> io::Result<Self> {
        let bad = |msg: &str| io::Error::new(io::ErrorKind::InvalidData, msg.to_owned());
        let mut header = String::new();
        input.read_line(&mut header)?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("LGFIELD") || fields.next() != Some("v1") {
            return Err(bad("not an LGFIELD v1 stream"));
        }
        let mut get = |key: &str| -> io::Result<String> {
            let f = fields.next().ok_or_else(|| bad("truncated header"))?;
            f.strip_prefix(key)
                .and_then(|s| s.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| bad("unexpected header field"))
        };
        let n: usize = get("n")?.parse().map_err(|_| bad("bad n"))?;
        let extent: f64 = get("extent")?.parse().map_err(|_| bad("bad extent"))?;
        let p: u32 = get("p")?.parse().map_err(|_| bad("bad p"))?;
        let l: i32 = get("l")?.parse().map_err(|_| bad("bad l"))?;
        let mut grid = Vec::with_capacity(n * n);
        let mut buf = [0u8; 8];
        for _ in 0..n * n {
            input.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf);
            input.read_exact(&mut buf)?;
            grid.push(C64::new(re, f64::from_le_bytes(buf)));
        }
        Ok(Self { grid, n, extent, p, l })
    }
}

/// Rotates the sampled field by `alpha` (counter-clockwise, bilinear
/// resampling with zero padding) and returns `<rotated|original>`. For a
/// pure `p = 0` mode this is `e^{-i l alpha}` up to resampling error.
pub fn field_rotation_check(field: &LgFieldSample, alpha: f64) -> Result<C64> {
    if field.p != 0 {
        return Err(Error::invalid("field", "rotation check expects a p = 0 mode"));
    }
    let (s, c) = alpha.sin_cos();
    let dx = field.spacing();
    let mut overlap = C64::from(0.0);
    for j in 0..field.n {
        let y = field.coordinate(j);
        for i in 0..field.n {
            let x = field.coordinate(i);
            // rotated(r) = original(R(-alpha) r)
            let rotated = field.sample(c * x + s * y, -s * x + c * y);
            overlap += rotated.conj() * field.at(i, j);
        }
    }
    Ok(overlap * (dx * dx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_values() {
        assert_eq!(laguerre(0, 3.0, 1.7), 1.0);
        assert!((laguerre(1, 2.0, 0.5) - 2.5).abs() < 1e-15);
        // L_2^1(x) = (x^2 - 6x + 6)/2
        let x = 1.3;
        assert!((laguerre(2, 1.0, x) - (x * x - 6.0 * x + 6.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn analytic_normalization() {
        // Radial quadrature of |psi|^2 over the plane is 1 for the printed prefactor.
        for (p, l) in [(0, 0), (0, 3), (2, 1)] {
            let dr = 1e-3;
            let total: f64 = (0..8000)
                .map(|k| {
                    let r = (k as f64 + 0.5) * dr;
                    lg_amplitude(p, l, r, 0.0).norm_sqr() * 2.0 * PI * r * dr
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-6, "p={p} l={l} total={total}");
        }
    }

    #[test]
    fn gaussian_peaks_at_origin() {
        let f = lg_field(0, 0, 65, 4.0).unwrap();
        let (idx, _) = f.samples().iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap();
        assert_eq!(idx, 32 * 65 + 32);
        assert!((f.l2_norm_squared() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn charge_one_ring() {
        let f = lg_field(0, 1, 128, 4.0).unwrap();
        assert!(f.sample(0.0, 0.0).norm() < 1e-12);
        let r_star = (1..4000)
            .map(|k| k as f64 * 1e-3)
            .max_by(|a, b| lg_amplitude(0, 1, *a, 0.0).norm().total_cmp(&lg_amplitude(0, 1, *b, 0.0).norm()))
            .unwrap();
        assert!((r_star - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    }

    #[test]
    fn charge_four_winds_eight_pi() {
        let steps = 720;
        let mut total = 0.0;
        let mut prev = lg_amplitude(0, 4, 1.0, 0.0).arg();
        for k in 1..=steps {
            let phi = 2.0 * PI * k as f64 / steps as f64;
            let cur = lg_amplitude(0, 4, 1.0, phi).arg();
            let mut d = cur - prev;
            d -= 2.0 * PI * (d / (2.0 * PI)).round();
            total += d;
            prev = cur;
        }
        assert!((total + 8.0 * PI).abs() < 1e-9, "{total}");
    }

    #[test]
    fn aliasing_guard() {
        assert!(matches!(lg_field(0, 30, 128, 4.0), Err(Error::FieldAliasing { .. })));
        assert!(lg_field(0, 0, 32, 4.0).is_err());
        assert!(lg_field(0, 0, 64, 3.0).is_err());
    }

    #[test]
    fn rotation_overlap() {
        let f = lg_field(0, 1, 128, 4.0).unwrap();
        let o = field_rotation_check(&f, 0.0).unwrap();
        assert!((o - C64::from(1.0)).norm() < 1e-9);
        let o = field_rotation_check(&f, 0.1).unwrap();
        assert!((o.arg() + 0.1).abs() < 5e-3 && (o.norm() - 1.0).abs() < 5e-3, "{o}");
        let f4 = lg_field(0, 4, 192, 4.5).unwrap();
        let o = field_rotation_check(&f4, 0.1).unwrap();
        assert!((o.arg() + 0.4).abs() < 5e-3 && (o.norm() - 1.0).abs() < 5e-3, "{o}");
        let p1 = lg_field(1, 1, 128, 5.0).unwrap();
        assert!(field_rotation_check(&p1, 0.1).is_err());
    }

    #[test]
    fn binary_round_trip() {
        let f = lg_field(0, 2, 64, 4.0).unwrap();
        let mut buf = Vec::new();
        f.write_to(&mut buf).unwrap();
        assert!(buf.starts_with(b"LGFIELD v1 n=64 extent=4 p=0 l=2\n"));
        let back = LgFieldSample::read_from(&buf[..]).unwrap();
        assert_eq!(back, f);
    }
}
