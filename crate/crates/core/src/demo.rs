//! Seeded synthetic datasets that exercise every analysis path. They stand in
//! for the original measurement records, which are not available.

use crate::physcore::constants::{SPEED_OF_LIGHT, TWO_PI, QUBIT_WAVELENGTH_CA};
use crate::physcore::{seeded_rng, TimeSeries};
use rand_distr::{Distribution, Normal, Poisson};

/// Frequency of the 729 nm qubit laser, Hz.
pub fn qubit_laser_frequency() -> f64 {
    SPEED_OF_LIGHT / QUBIT_WAVELENGTH_CA
}

/// Fractional beat frequency with white FM noise and a linear drift, sampled
/// every 10 ms for 200 s. The two contributions cross so that the Allan
/// deviation bottoms out near 0.33 s at about 2.4e-15.
pub fn allan_record(seed: u64) -> TimeSeries {
    let dt: f64 = 0.01;
    let tau_min: f64 = 0.33;
    let sigma_min = 2.4e-15;
    // σ² = h²/τ + d²τ²/2 has its minimum 1.5·h²/τ at d² = h²/τ³
    let h = sigma_min * (tau_min / 1.5).sqrt();
    let drift = h / tau_min.powf(1.5);
    let white = Normal::new(0.0, h / dt.sqrt()).unwrap();
    let mut rng = seeded_rng(seed);
    let samples = (0..20_000)
        .map(|i| white.sample(&mut rng) + drift * i as f64 * dt)
        .collect();
    TimeSeries::new(0.0, dt, samples).unwrap()
}

/// Vibration tones (Hz, m amplitude) of the demo displacement record.
pub const VIBRATION_TONES: [(f64, f64); 3] = [(30.0, 9e-9), (45.0, 6e-9), (95.0, 3e-9)];

/// 2 s of arm-length change at 1 kHz: three tones plus 0.3 nm white noise.
pub fn vibration_record(seed: u64) -> TimeSeries {
    let noise = Normal::new(0.0, 0.3e-9).unwrap();
    let mut rng = seeded_rng(seed);
    let dt = 1e-3;
    let samples = (0..2000)
        .map(|i| {
            let t = i as f64 * dt;
            VIBRATION_TONES
                .iter()
                .map(|(f, a)| a * (TWO_PI * f * t).sin())
                .sum::<f64>()
                + noise.sample(&mut rng)
        })
        .collect();
    TimeSeries::new(0.0, dt, samples).unwrap()
}

/// Heating-rate scan: (wait s, n̄) for Γ = 2.14 /s, n₀ = 0.1, σ = 0.2.
pub fn heating_points(seed: u64) -> Vec<(f64, f64)> {
    let noise = Normal::new(0.0, 0.2).unwrap();
    let mut rng = seeded_rng(seed);
    (0..6)
        .map(|i| {
            let t = i as f64 * 0.2;
            (t, 0.1 + 2.14 * t + noise.sample(&mut rng))
        })
        .collect()
}

/// Ramsey contrast with a Gaussian 1/e time of 18.2 ms and 2 % noise.
pub fn ramsey_points(seed: u64) -> Vec<(f64, f64)> {
    let noise = Normal::new(0.0, 0.02).unwrap();
    let mut rng = seeded_rng(seed);
    (0..10)
        .map(|i| {
            let t = i as f64 * 30e-3 / 9.0;
            let c = 0.97 * (-(t / 18.2e-3f64).powi(2)).exp() + noise.sample(&mut rng);
            (t, c.clamp(0.0, 1.0))
        })
        .collect()
}

/// Rabi frequency vs ion position through a 3.0 µm waist, 1 % noise.
pub fn waist_scan(seed: u64) -> Vec<(f64, f64)> {
    let peak = TWO_PI * 50e3;
    let noise = Normal::new(0.0, 0.01 * peak).unwrap();
    let mut rng = seeded_rng(seed);
    (0..25)
        .map(|i| {
            let x = -6e-6 + i as f64 * 0.5e-6;
            (x, peak * (-(x / 3.0e-6f64).powi(2)).exp() + noise.sample(&mut rng))
        })
        .collect()
}

/// Beat-note spectrum: 1.58 Hz Lorentzian with 5 % multiplicative noise.
pub fn beat_spectrum(seed: u64) -> Vec<(f64, f64)> {
    let noise = Normal::new(1.0, 0.05).unwrap();
    let mut rng = seeded_rng(seed);
    let half: f64 = 0.79;
    (0..81)
        .map(|i| {
            let f = -10.0 + 0.25 * i as f64;
            let s = half * half / (f * f + half * half) + 0.01;
            (f, s * noise.sample(&mut rng))
        })
        .collect()
}

/// Camera frame of a single ion: 32 × 24 pixels, Poisson counts peaking near
/// 1000 on a background of 20, object-plane σ of 1.84 µm at 16 µm pitch and
/// magnification 15. Returns (row-major counts, columns).
pub fn ion_image(seed: u64) -> (Vec<f64>, usize) {
    let s_px = 1.84e-6 / (16e-6 / 15.0);
    let mut rng = seeded_rng(seed);
    let (cols, rows) = (32usize, 24usize);
    let mut counts = Vec::with_capacity(cols * rows);
    for r in 0..rows {
        for c in 0..cols {
            let u = (c as f64 - 15.4) / s_px;
            let v = (r as f64 - 11.6) / s_px;
            let mean = 980.0 * (-0.5 * (u * u + v * v)).exp() + 20.0;
            counts.push(Poisson::new(mean).unwrap().sample(&mut rng));
        }
    }
    (counts, cols)
}

/// Attenuation (Hz, dB) of a skin-limited shield with −120 dB at 50 Hz,
/// sampled where it still lies above a −58 dB measurement floor.
pub fn skin_attenuation_points(seed: u64) -> Vec<(f64, f64)> {
    let a = 120.0 / 50f64.sqrt();
    let noise = Normal::new(0.0, 0.3).unwrap();
    let mut rng = seeded_rng(seed);
    [2.0, 3.0, 4.0, 5.5, 7.0, 9.0, 11.0]
        .iter()
        .map(|&f| (f, -a * f64::sqrt(f) + noise.sample(&mut rng)))
        .collect()
}
