//! Piezo actuation of the Dove prism.
//!
//! Top and bottom PZT rows are driven in antiphase, so the differential
//! stroke is `2 * gain * (vpp / 2)`. Dividing by the row spacing gives the
//! prism roll, and the image rotates by twice the prism roll.

use crate::error::{Error, Result};

/// Stroke per volt of the PZT chips, m/V.
pub const PZT_GAIN_M_PER_V: f64 = 22e-9;
/// Distance between the top and bottom PZT rows, m.
pub const ROW_SPACING_M: f64 = 10e-3;
/// Peak-to-peak drive of the marker signal, V.
pub const MARKER_VPP: f64 = 12e-3;
pub const MARKER_FREQ_HZ: f64 = 20e3;

/// Amplitude (half peak-to-peak) of the beam-profile rotation, rad.
pub fn pzt_rotation_amplitude(vpp: f64, piezo_gain: f64, row_spacing: f64) -> Result<f64> {
    if !(vpp >= 0.0 && piezo_gain > 0.0 && row_spacing > 0.0) {
        return Err(Error::invalid("pzt", "drive, gain and spacing must be positive"));
    }
    let stroke = 2.0 * piezo_gain * (vpp / 2.0);
    let prism_roll = stroke / row_spacing;
    Ok(2.0 * prism_roll)
}

/// Marker amplitude for the reference drive, about 52.8 nrad.
pub fn marker_amplitude() -> f64 {
    pzt_rotation_amplitude(MARKER_VPP, PZT_GAIN_M_PER_V, ROW_SPACING_M).expect("positive constants")
}
