use super::MetrologyError;
use crate::physcore::TimeSeries;
use std::collections::VecDeque;
use std::f64::consts::PI;

/// Fraction of clipped samples above which inversion fails.
pub const MAX_CLIPPED_FRACTION: f64 = 0.01;

/// Michelson read-out near quadrature: V = offset + V_f·sin(4πx/λ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterferometerCal {
    pub wavelength: f64,
    pub volts_per_fringe: f64,
    pub quadrature_offset: f64,
}

impl InterferometerCal {
    pub fn new(wavelength: f64, volts_per_fringe: f64, quadrature_offset: f64) -> Result<Self, MetrologyError> {
        if !(wavelength > 0.0 && volts_per_fringe > 0.0 && quadrature_offset.is_finite()) {
            return Err(MetrologyError::Domain(
                "wavelength and volts per fringe must be positive".into(),
            ));
        }
        Ok(InterferometerCal {
            wavelength,
            volts_per_fringe,
            quadrature_offset,
        })
    }
}

/// Detector voltage for arm-length change `x`.
pub fn fringe_forward(displacement: &TimeSeries, cal: &InterferometerCal) -> Result<TimeSeries, MetrologyError> {
    Ok(displacement.map(|x| cal.quadrature_offset + cal.volts_per_fringe * (4.0 * PI * x / cal.wavelength).sin())?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FringeInversion {
    pub displacement: TimeSeries,
    /// Samples with |(V − offset)/V_f| > 1, clamped to ±λ/8.
    pub clipped: Vec<bool>,
    pub clipped_count: usize,
}

/// x = (λ/4π)·asin((V − offset)/V_f). Valid for |x| < λ/8 without unwrapping.
pub fn fringe_to_displacement(signal: &TimeSeries, cal: &InterferometerCal) -> Result<FringeInversion, MetrologyError> {
    let mut clipped = Vec::with_capacity(signal.len());
    let mut x = Vec::with_capacity(signal.len());
    for v in signal.samples() {
        let arg = (v - cal.quadrature_offset) / cal.volts_per_fringe;
        clipped.push(arg.abs() > 1.0);
        x.push(cal.wavelength / (4.0 * PI) * arg.clamp(-1.0, 1.0).asin());
    }
    let clipped_count = clipped.iter().filter(|c| **c).count();
    if clipped_count as f64 > MAX_CLIPPED_FRACTION * signal.len() as f64 {
        return Err(MetrologyError::Clipped {
            clipped: clipped_count,
            total: signal.len(),
        });
    }
    Ok(FringeInversion {
        displacement: TimeSeries::new(signal.t0(), signal.dt(), x)?,
        clipped,
        clipped_count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcursionStats {
    /// Largest |x − window mean| over all windows, m.
    pub max_abs: f64,
    /// Global max − min, m.
    pub peak_to_peak: f64,
    /// Last sample minus first, m.
    pub drift: f64,
}

/// Excursions of a displacement record inside sliding windows of `window`
/// seconds, measured from each window's own mean.
pub fn excursion_stats(displacement: &TimeSeries, window: f64) -> Result<ExcursionStats, MetrologyError> {
    let x = displacement.samples();
    let n = x.len();
    let w = (window / displacement.dt()).round() as usize;
    if !(window > 0.0) || w == 0 || w > n {
        return Err(MetrologyError::Domain(format!(
            "window {window} s must be positive and no longer than the record {} s",
            n as f64 * displacement.dt()
        )));
    }
    // sums of x − x₀, so a constant record has exactly zero excursion
    let x0 = x[0];
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for v in x {
        prefix.push(prefix.last().unwrap() + (v - x0));
    }
    // monotone deques of indices for the running max and min
    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut max_abs = 0.0_f64;
    for i in 0..n {
        while hi.back().is_some_and(|&j| x[j] <= x[i]) {
            hi.pop_back();
        }
        hi.push_back(i);
        while lo.back().is_some_and(|&j| x[j] >= x[i]) {
            lo.pop_back();
        }
        lo.push_back(i);
        if i + 1 >= w {
            let start = i + 1 - w;
            while hi.front().is_some_and(|&j| j < start) {
                hi.pop_front();
            }
            while lo.front().is_some_and(|&j| j < start) {
                lo.pop_front();
            }
            let mean = (prefix[i + 1] - prefix[start]) / w as f64;
            let top = x[*hi.front().unwrap()] - x0 - mean;
            let bottom = mean - (x[*lo.front().unwrap()] - x0);
            max_abs = max_abs.max(top.max(bottom).max(0.0));
        }
    }
    let max = x.iter().cloned().fold(f64::MIN, f64::max);
    let min = x.iter().cloned().fold(f64::MAX, f64::min);
    Ok(ExcursionStats {
        max_abs,
        peak_to_peak: max - min,
        drift: x[n - 1] - x[0],
    })
}
