//! Seeded Monte-Carlo and quadrature oracles shared by the integration and acceptance suites.
#![allow(dead_code)]

use cryoion::metrology::{gaussian_profile_fit, lorentzian_linewidth_fit, ImageAxis, ImageProfile};
use cryoion::physcore::seeded_rng;
use cryoion::qubitsim::{
    carrier_rabi_signal, heating_rate_fit, ramsey_contrast_fit, waist_from_rabi_scan, CarrierModel, DecayModel,
    DriveParams, PhononState,
};
use cryoion::physcore::constants::MU_0;
use rand_distr::{Distribution, Geometric, Normal, Poisson};
use std::f64::consts::PI;

/// Number of trials (out of `trials`) whose estimate lies within 3σ of truth.
pub struct Coverage {
    pub hits: usize,
    pub trials: usize,
}

impl Coverage {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }
}

fn within(estimate: f64, sigma: f64, truth: f64) -> bool {
    sigma.is_finite() && (estimate - truth).abs() <= 3.0 * sigma
}

pub fn heating_coverage(trials: usize, seed: u64) -> Coverage {
    let mut rng = seeded_rng(seed);
    let noise = Normal::new(0.0, 0.2).unwrap();
    let sigma = vec![0.2; 6];
    let hits = (0..trials)
        .filter(|_| {
            let pts: Vec<(f64, f64)> = (0..6)
                .map(|i| i as f64 * 0.2)
                .map(|t| (t, 0.1 + 2.14 * t + noise.sample(&mut rng)))
                .collect();
            let f = heating_rate_fit(&pts, Some(&sigma)).unwrap();
            within(f.rate, f.rate_sigma, 2.14)
        })
        .count();
    Coverage { hits, trials }
}

pub fn ramsey_coverage(trials: usize, seed: u64) -> Coverage {
    let tau = 18.2e-3;
    let mut rng = seeded_rng(seed);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let times: Vec<f64> = (0..10).map(|i| i as f64 * 30e-3 / 9.0).collect();
    let truth: Vec<f64> = times.iter().map(|t| 0.9 * (-(t / tau).powi(2)).exp()).collect();
    let sigma: Vec<f64> = truth.iter().map(|c| 0.02 * c).collect();
    let hits = (0..trials)
        .filter(|_| {
            let pts: Vec<(f64, f64)> = times
                .iter()
                .zip(&truth)
                .zip(&sigma)
                .map(|((t, c), s)| (*t, c + s * noise.sample(&mut rng)))
                .collect();
            match ramsey_contrast_fit(&pts, DecayModel::Gaussian, Some(&sigma)) {
                Ok(f) => within(f.t_1e, f.t_1e_sigma, tau),
                Err(_) => false,
            }
        })
        .count();
    Coverage { hits, trials }
}

pub fn waist_coverage(trials: usize, seed: u64) -> Coverage {
    let w = 3.0e-6;
    let peak = 2.0 * std::f64::consts::PI * 50e3;
    let mut rng = seeded_rng(seed);
    let noise = Normal::new(0.0, 0.01 * peak).unwrap();
    let xs: Vec<f64> = (0..25).map(|i| -6e-6 + i as f64 * 0.5e-6).collect();
    let sigma = vec![0.01 * peak; xs.len()];
    let hits = (0..trials)
        .filter(|_| {
            let scan: Vec<(f64, f64)> = xs
                .iter()
                .map(|&x| (x, peak * (-(x / w).powi(2)).exp() + noise.sample(&mut rng)))
                .collect();
            let f = waist_from_rabi_scan(&scan, Some(&sigma)).unwrap();
            within(f.profile.waist, f.waist_sigma, w)
        })
        .count();
    Coverage { hits, trials }
}

pub fn linewidth_coverage(trials: usize, seed: u64) -> Coverage {
    let gamma: f64 = 1.58;
    let mut rng = seeded_rng(seed);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let freqs: Vec<f64> = (0..81).map(|i| -10.0 + 0.25 * i as f64).collect();
    let half = gamma / 2.0;
    let truth: Vec<f64> = freqs.iter().map(|f| half * half / (f * f + half * half) + 0.01).collect();
    let sigma: Vec<f64> = truth.iter().map(|s| 0.05 * s).collect();
    let hits = (0..trials)
        .filter(|_| {
            let spec: Vec<(f64, f64)> = freqs
                .iter()
                .zip(&truth)
                .map(|(f, s)| (*f, s * (1.0 + 0.05 * noise.sample(&mut rng))))
                .collect();
            let fit = lorentzian_linewidth_fit(&spec, Some(&sigma)).unwrap();
            within(fit.fwhm, fit.fwhm_sigma, gamma)
        })
        .count();
    Coverage { hits, trials }
}

/// One-line camera profile, Poisson counts peaking at 1000.
pub fn image_coverage(trials: usize, seed: u64) -> Coverage {
    let width = 1.84e-6;
    let (pitch, mag) = (16e-6, 15.0);
    let s_px = width / (pitch / mag);
    let mut rng = seeded_rng(seed);
    let means: Vec<f64> = (0..32)
        .map(|i| {
            let u = (i as f64 - 15.3) / s_px;
            980.0 * (-0.5 * u * u).exp() + 20.0
        })
        .collect();
    let sigma: Vec<f64> = means.iter().map(|m| m.sqrt()).collect();
    let hits = (0..trials)
        .filter(|_| {
            let counts: Vec<f64> = means.iter().map(|m| Poisson::new(*m).unwrap().sample(&mut rng)).collect();
            let img = ImageProfile::line(counts, pitch, mag).unwrap();
            let fit = gaussian_profile_fit(&img, ImageAxis::Row, Some(&sigma)).unwrap();
            within(fit.width, fit.width_sigma, width)
        })
        .count();
    Coverage { hits, trials }
}

/// (truncated sum, Monte-Carlo mean, Monte-Carlo standard error) of the carrier
/// excitation at each time, sampling n from the thermal distribution.
pub fn rabi_monte_carlo(nbar: f64, eta: f64, times: &[f64], draws: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let state = PhononState::new(nbar).unwrap();
    let drive = DriveParams::resonant(1.0, eta).unwrap();
    let exact = carrier_rabi_signal(&state, &drive, times, CarrierModel::FirstOrder).unwrap();
    let mut rng = seeded_rng(seed);
    // failures before the first success with p = 1/(1+n̄) is thermal
    let geometric = Geometric::new(1.0 / (1.0 + nbar)).unwrap();
    let ns: Vec<u64> = (0..draws).map(|_| geometric.sample(&mut rng)).collect();
    times
        .iter()
        .zip(&exact.excitation)
        .map(|(&t, &p)| {
            let (mut sum, mut sum2) = (0.0, 0.0);
            for &n in &ns {
                let omega_n = 1.0 - eta * eta * n as f64;
                let v = (0.5 * omega_n * t).sin().powi(2);
                sum += v;
                sum2 += v * v;
            }
            let mean = sum / draws as f64;
            let var = sum2 / draws as f64 - mean * mean;
            (p, mean, (var / draws as f64).sqrt())
        })
        .collect()
}

/// Biot-Savart sum over `n` equal arcs of a circular loop (midpoint rule on
/// the angle, exponentially convergent for points off the wire).
pub fn biot_savart_loop(radius: f64, z0: f64, current: f64, n: usize, p: [f64; 3]) -> [f64; 3] {
    let mut b = [0.0; 3];
    let dphi = 2.0 * PI / n as f64;
    for k in 0..n {
        let phi = (k as f64 + 0.5) * dphi;
        let (s, c) = phi.sin_cos();
        let src = [radius * c, radius * s, z0];
        let dl = [-radius * s * dphi, radius * c * dphi, 0.0];
        let r = [p[0] - src[0], p[1] - src[1], p[2] - src[2]];
        let r3 = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).powf(1.5);
        let cross = [
            dl[1] * r[2] - dl[2] * r[1],
            dl[2] * r[0] - dl[0] * r[2],
            dl[0] * r[1] - dl[1] * r[0],
        ];
        for i in 0..3 {
            b[i] += MU_0 * current / (4.0 * PI) * cross[i] / r3;
        }
    }
    b
}
