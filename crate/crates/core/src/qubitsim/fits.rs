use super::optics::BeamProfile;
use super::QubitError;
use crate::physcore::{lm_fit, FitData, FitResult, LmConfig, Shape};

fn need(points: usize, needed: usize) -> Result<(), QubitError> {
    if points < needed {
        Err(QubitError::InsufficientData { needed, got: points })
    } else {
        Ok(())
    }
}

fn split(points: &[(f64, f64)]) -> (Vec<f64>, Vec<f64>) {
    points.iter().cloned().unzip()
}

fn weights_from_sigma(sigma: Option<&[f64]>) -> Result<Option<Vec<f64>>, QubitError> {
    match sigma {
        None => Ok(None),
        Some(s) => {
            if let Some(bad) = s.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                return Err(QubitError::Domain(format!("uncertainties must be positive, got {bad}")));
            }
            Ok(Some(s.iter().map(|v| 1.0 / (v * v)).collect()))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatingFit {
    /// phonons/s
    pub rate: f64,
    pub rate_sigma: f64,
    pub intercept: f64,
    pub intercept_sigma: f64,
    pub fit: FitResult,
}

/// n̄(t) = n₀ + Γ·t. `sigma` gives per-point 1σ uncertainties of n̄; without
/// it the covariance is scaled by the residual variance.
pub fn heating_rate_fit(points: &[(f64, f64)], sigma: Option<&[f64]>) -> Result<HeatingFit, QubitError> {
    need(points.len(), 3)?;
    let (t, n) = split(points);
    let w = weights_from_sigma(sigma)?;
    let data = match &w {
        Some(w) => FitData::weighted(&t, &n, w),
        None => FitData::new(&t, &n),
    };
    let fit = Shape::Line.fit(&data, &[0.0, n.iter().sum::<f64>() / n.len() as f64])?;
    Ok(HeatingFit {
        rate: fit.params[0],
        rate_sigma: fit.sigma_at(0),
        intercept: fit.params[1],
        intercept_sigma: fit.sigma_at(1),
        fit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DecayModel {
    /// C₀·exp(−(t/τ)²)
    #[default]
    Gaussian,
    /// C₀·exp(−t/τ)
    Exponential,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamseyFit {
    pub model: DecayModel,
    pub c0: f64,
    /// 1/e time τ, s; infinite when the data show no decay.
    pub t_1e: f64,
    pub t_1e_sigma: f64,
    /// σ(τ)/τ > 1, or the fitted curve falls by less than 0.1 % over the window.
    pub unconstrained: bool,
    /// Fit in terms of the decay rate k (k = 1/τ² or 1/τ).
    pub fit: FitResult,
}

/// Ramsey contrast decay. The fit runs on the rate k = τ⁻² (Gaussian) or
/// τ⁻¹ (exponential), which stays finite for non-decaying data. `sigma` holds
/// optional per-point 1σ contrast uncertainties.
pub fn ramsey_contrast_fit(
    points: &[(f64, f64)],
    model: DecayModel,
    sigma: Option<&[f64]>,
) -> Result<RamseyFit, QubitError> {
    need(points.len(), 4)?;
    if let Some(&(_, c)) = points.iter().find(|(_, c)| !(0.0..=1.0).contains(c)) {
        return Err(QubitError::Domain(format!("contrast {c} outside [0, 1]")));
    }
    let (t, c) = split(points);
    let x: Vec<f64> = match model {
        DecayModel::Gaussian => t.iter().map(|v| v * v).collect(),
        DecayModel::Exponential => t.clone(),
    };
    // log-linear start on the positive points
    let pos: Vec<(f64, f64)> = x.iter().zip(&c).filter(|(_, c)| **c > 0.0).map(|(x, c)| (*x, c.ln())).collect();
    let (c0_guess, k_guess) = if pos.len() >= 2 {
        let n = pos.len() as f64;
        let mx = pos.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pos.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pos.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pos.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        ((my - slope * mx).exp(), -slope)
    } else {
        (c.iter().cloned().fold(0.0, f64::max), 0.0)
    };
    let w = weights_from_sigma(sigma)?;
    let data = match &w {
        Some(w) => FitData::weighted(&x, &c, w),
        None => FitData::new(&x, &c),
    };
    let fit = Shape::Exponential.fit(&data, &[c0_guess, k_guess])?;
    let c0 = fit.params[0];
    let k = fit.params[1];
    let k_sigma = fit.sigma_at(1);
    let (t_1e, t_1e_sigma) = if k > 0.0 {
        match model {
            DecayModel::Gaussian => (k.powf(-0.5), 0.5 * k_sigma * k.powf(-1.5)),
            DecayModel::Exponential => (1.0 / k, k_sigma / (k * k)),
        }
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    let x_max = x.iter().cloned().fold(0.0, f64::max);
    let drop = 1.0 - (-k * x_max).exp();
    let unconstrained = !(t_1e_sigma <= t_1e) || drop < 1e-3;
    Ok(RamseyFit {
        model,
        c0,
        t_1e,
        t_1e_sigma,
        unconstrained,
        fit,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaistFit {
    pub profile: BeamProfile,
    pub waist_sigma: f64,
    /// σ(w)/w > 1, or a fitted waist wider than the scanned span.
    pub unconstrained: bool,
    pub fit: FitResult,
}

/// Ω(x) = Ω₀·exp(−(x−x₀)²/w²): Rabi frequency follows the field amplitude, so
/// w is the 1/e² intensity radius. `sigma` holds optional 1σ of each Ω.
pub fn waist_from_rabi_scan(scan: &[(f64, f64)], sigma: Option<&[f64]>) -> Result<WaistFit, QubitError> {
    need(scan.len(), 4)?;
    let (x, omega) = split(scan);
    let peak = omega.iter().cloned().fold(f64::MIN, f64::max);
    let total: f64 = omega.iter().map(|v| v.max(0.0)).sum();
    let (center, width) = if total > 0.0 {
        let c = x.iter().zip(&omega).map(|(x, w)| x * w.max(0.0)).sum::<f64>() / total;
        let var = x.iter().zip(&omega).map(|(x, w)| (x - c).powi(2) * w.max(0.0)).sum::<f64>() / total;
        (c, (2.0 * var).sqrt())
    } else {
        (x[0], 1.0)
    };
    let span = x.iter().cloned().fold(f64::MIN, f64::max) - x.iter().cloned().fold(f64::MAX, f64::min);
    let width = if width > 0.0 { width } else { span.max(f64::MIN_POSITIVE) };
    let model = |x: f64, p: &[f64]| {
        let u = (x - p[1]) / p[2];
        p[0] * (-u * u).exp()
    };
    let w = weights_from_sigma(sigma)?;
    let data = match &w {
        Some(w) => FitData::weighted(&x, &omega, w),
        None => FitData::new(&x, &omega),
    };
    let fit = lm_fit(
        model,
        &data,
        &[peak, center, width],
        &["peak_rabi", "center", "waist"],
        &LmConfig::default(),
    )?;
    let waist = fit.params[2].abs();
    let waist_sigma = fit.sigma_at(2);
    let unconstrained = !(waist_sigma <= waist) || waist > span;
    Ok(WaistFit {
        profile: BeamProfile {
            waist,
            center: fit.params[1],
            peak_rabi: fit.params[0],
        },
        waist_sigma,
        unconstrained,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::seeded_rng;
    use rand_distr::{Distribution, Normal};

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn heating_line_round_trip() {
        let pts: Vec<(f64, f64)> = (0..6).map(|i| i as f64 * 0.2).map(|t| (t, 0.1 + 2.14 * t)).collect();
        let f = heating_rate_fit(&pts, None).unwrap();
        assert!(rel(f.rate, 2.14) < 1e-6 && rel(f.intercept, 0.1) < 1e-6);
        let flat: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0)).collect();
        assert!(heating_rate_fit(&flat, None).unwrap().rate.abs() < 1e-12);
        assert!(matches!(
            heating_rate_fit(&pts[..2], None),
            Err(QubitError::InsufficientData { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn heating_noise_sets_uncertainty_scale() {
        let mut rng = seeded_rng(3);
        let noise = Normal::new(0.0, 0.2).unwrap();
        let t: Vec<f64> = (0..6).map(|i| i as f64 * 0.2).collect();
        let sig = vec![0.2; 6];
        let pts: Vec<(f64, f64)> = t.iter().map(|&t| (t, 0.1 + 2.14 * t + noise.sample(&mut rng))).collect();
        let f = heating_rate_fit(&pts, Some(&sig)).unwrap();
        // σ_Γ = σ/sqrt(Σ(t−t̄)²) = 0.2/sqrt(0.7)
        assert!((f.rate_sigma - 0.2 / 0.7f64.sqrt()).abs() < 1e-9);
        assert!((f.rate - 2.14).abs() < 3.0 * f.rate_sigma);
    }

    #[test]
    fn ramsey_round_trip() {
        let tau = 18.2e-3;
        let pts: Vec<(f64, f64)> = (0..10)
            .map(|i| i as f64 * 3e-3)
            .map(|t| (t, 0.95 * (-(t / tau).powi(2)).exp()))
            .collect();
        let f = ramsey_contrast_fit(&pts, DecayModel::Gaussian, None).unwrap();
        assert!(rel(f.t_1e, tau) < 1e-6, "{}", f.t_1e);
        assert!(rel(f.c0, 0.95) < 1e-6);
        assert!(!f.unconstrained);
        let e = ramsey_contrast_fit(&pts, DecayModel::Exponential, None).unwrap();
        assert!(e.fit.residual_rms > f.fit.residual_rms);
    }

    #[test]
    fn ramsey_flat_is_unconstrained() {
        let pts: Vec<(f64, f64)> = (0..8).map(|i| (i as f64 * 4e-3, 0.8)).collect();
        let f = ramsey_contrast_fit(&pts, DecayModel::Gaussian, None).unwrap();
        assert!(f.unconstrained);
        assert!(ramsey_contrast_fit(&pts[..3], DecayModel::Gaussian, None).is_err());
        assert!(ramsey_contrast_fit(&[(0.0, 1.2), (1.0, 0.5), (2.0, 0.4), (3.0, 0.3)], DecayModel::Gaussian, None).is_err());
    }

    #[test]
    fn waist_round_trip_and_pedestal() {
        let w = 3.0e-6;
        let gen = |x: f64| 2.0e5 * (-((x - 0.4e-6) / w).powi(2)).exp();
        let xs: Vec<f64> = (0..25).map(|i| -6e-6 + i as f64 * 0.5e-6).collect();
        let pts: Vec<(f64, f64)> = xs.iter().map(|&x| (x, gen(x))).collect();
        let f = waist_from_rabi_scan(&pts, None).unwrap();
        assert!(rel(f.profile.waist, w) < 1e-6, "{}", f.profile.waist);
        assert!(rel(f.profile.center, 0.4e-6) < 1e-6);
        assert!(!f.unconstrained);
        let ped: Vec<(f64, f64)> = xs.iter().map(|&x| (x, gen(x) + 0.01 * 2.0e5)).collect();
        let g = waist_from_rabi_scan(&ped, None).unwrap();
        assert!(rel(g.profile.waist, w) < 0.05);
    }

    #[test]
    fn flat_scan_is_unconstrained() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64 * 1e-6, 1e5)).collect();
        assert!(waist_from_rabi_scan(&pts, None).unwrap().unconstrained);
    }
}
