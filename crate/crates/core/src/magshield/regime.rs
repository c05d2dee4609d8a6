//! Classifying a measured attenuation curve as skin-effect or contact limited
//! and extrapolating it to the power-line frequency.
//!
//! Skin limited: `dB(f) = −a·√f`, so the slope on a log-frequency axis grows
//! with frequency. Contact limited: `dB(f) = b − 20·s·log10(f)`, a straight
//! line on a double-logarithmic plot. Points at or below the measurement floor
//! are censored and never enter either fit.

use super::ShieldError;
use crate::physcore::{lm_fit, FitData, FitResult, LmConfig};

pub const EXTRAPOLATION_FREQUENCY_HZ: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldAxis {
    AlongQuantization,
    Perpendicular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttenuationCurve {
    points: Vec<(f64, f64)>,
    pub floor_db: f64,
    pub axis: FieldAxis,
}

impl AttenuationCurve {
    /// `points` are (frequency Hz, attenuation dB ≤ 0) with strictly increasing frequency.
    pub fn new(points: Vec<(f64, f64)>, floor_db: f64, axis: FieldAxis) -> Result<Self, ShieldError> {
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(ShieldError::Domain("frequencies must be strictly increasing".into()));
        }
        if let Some(&(f, db)) = points
            .iter()
            .find(|(f, db)| !(*f > 0.0 && f.is_finite() && *db <= 0.0 && db.is_finite()))
        {
            return Err(ShieldError::Domain(format!(
                "invalid point ({f} Hz, {db} dB): need f > 0 and attenuation <= 0"
            )));
        }
        Ok(AttenuationCurve {
            points,
            floor_db,
            axis,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Points strictly above the noise floor.
    pub fn usable(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().copied().filter(move |&(_, db)| db > self.floor_db)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    SkinLimited,
    ContactLimited,
}

/// A fitted attenuation law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegimeModel {
    /// `dB = −a·√f`
    Skin { a: f64 },
    /// `dB = b − 20·s·log10(f)`
    Contact { b: f64, s: f64 },
}

impl RegimeModel {
    pub fn value_at(&self, frequency: f64) -> f64 {
        match *self {
            RegimeModel::Skin { a } => -a * frequency.sqrt(),
            RegimeModel::Contact { b, s } => b - 20.0 * s * frequency.log10(),
        }
    }

    /// d(dB)/d(ln f).
    pub fn log_slope(&self, frequency: f64) -> f64 {
        match *self {
            RegimeModel::Skin { a } => -0.5 * a * frequency.sqrt(),
            RegimeModel::Contact { s, .. } => -20.0 * s / std::f64::consts::LN_10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelFit {
    pub model: RegimeModel,
    pub residual_rms: f64,
    pub fit: FitResult,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegimeFit {
    pub regime: Regime,
    /// Chosen model evaluated at 50 Hz.
    pub extrapolated_50hz_db: f64,
    /// The other model's 50 Hz value when its residual is within a factor two.
    pub alternative_50hz_db: Option<f64>,
    pub skin: ModelFit,
    pub contact: ModelFit,
    pub usable_points: usize,
}

impl RegimeFit {
    pub fn chosen(&self) -> &ModelFit {
        match self.regime {
            Regime::SkinLimited => &self.skin,
            Regime::ContactLimited => &self.contact,
        }
    }
}

pub fn fit_attenuation_regime(curve: &AttenuationCurve) -> Result<RegimeFit, ShieldError> {
    let (freqs, dbs): (Vec<f64>, Vec<f64>) = curve.usable().unzip();
    if freqs.len() < 3 {
        return Err(ShieldError::InsufficientData { usable: freqs.len() });
    }
    let data = FitData::new(&freqs, &dbs);
    let config = LmConfig::default();

    // closed-form starting points
    let a0 = -dbs.iter().zip(&freqs).map(|(y, f)| y * f.sqrt()).sum::<f64>() / freqs.iter().sum::<f64>();
    let skin_fit = lm_fit(|f, p| -p[0] * f.sqrt(), &data, &[a0], &["a"], &config)?;
    let skin = ModelFit {
        model: RegimeModel::Skin {
            a: skin_fit.params[0],
        },
        residual_rms: skin_fit.residual_rms,
        fit: skin_fit,
    };

    let (b0, s0) = log_line_start(&freqs, &dbs);
    let contact_fit = lm_fit(
        |f, p| p[0] - 20.0 * p[1] * f.log10(),
        &data,
        &[b0, s0],
        &["b", "s"],
        &config,
    )?;
    let contact = ModelFit {
        model: RegimeModel::Contact {
            b: contact_fit.params[0],
            s: contact_fit.params[1],
        },
        residual_rms: contact_fit.residual_rms,
        fit: contact_fit,
    };

    let regime = if skin.residual_rms <= contact.residual_rms {
        Regime::SkinLimited
    } else {
        Regime::ContactLimited
    };
    let (chosen, other) = match regime {
        Regime::SkinLimited => (&skin, &contact),
        Regime::ContactLimited => (&contact, &skin),
    };
    let close = other.residual_rms < 2.0 * chosen.residual_rms;
    let extrapolated_50hz_db = chosen.model.value_at(EXTRAPOLATION_FREQUENCY_HZ);
    let alternative_50hz_db = close.then(|| other.model.value_at(EXTRAPOLATION_FREQUENCY_HZ));
    Ok(RegimeFit {
        regime,
        extrapolated_50hz_db,
        alternative_50hz_db,
        skin,
        contact,
        usable_points: freqs.len(),
    })
}

/// Endpoints of the usable range give a straight line in log frequency.
fn log_line_start(freqs: &[f64], dbs: &[f64]) -> (f64, f64) {
    let (f1, f2) = (freqs[0].log10(), freqs[freqs.len() - 1].log10());
    let (y1, y2) = (dbs[0], dbs[dbs.len() - 1]);
    let s = -(y2 - y1) / (20.0 * (f2 - f1));
    (y1 + 20.0 * s * f1, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::seeded_rng;
    use rand_distr::{Distribution, Normal};

    fn skin_curve(freqs: &[f64], db_at_50: f64, floor: f64) -> AttenuationCurve {
        let a = -db_at_50 / 50f64.sqrt();
        let pts = freqs.iter().map(|&f| (f, -a * f.sqrt())).collect();
        AttenuationCurve::new(pts, floor, FieldAxis::AlongQuantization).unwrap()
    }

    fn contact_curve(freqs: &[f64], b: f64, s: f64, offset: f64) -> AttenuationCurve {
        let pts = freqs
            .iter()
            .map(|&f| (f, (b - 20.0 * s * f.log10() + offset).min(0.0)))
            .collect();
        AttenuationCurve::new(pts, -200.0, FieldAxis::Perpendicular).unwrap()
    }

    #[test]
    fn skin_round_trip_to_50hz() {
        let curve = skin_curve(&[100.0, 200.0, 400.0], -120.0, -1000.0);
        let fit = fit_attenuation_regime(&curve).unwrap();
        assert_eq!(fit.regime, Regime::SkinLimited);
        assert!((fit.extrapolated_50hz_db + 120.0).abs() < 1.0, "{}", fit.extrapolated_50hz_db);
    }

    #[test]
    fn contact_data_is_classified_contact() {
        let curve = contact_curve(&[1.0, 3.0, 10.0, 30.0, 100.0], -5.0, 1.2, 0.0);
        let fit = fit_attenuation_regime(&curve).unwrap();
        assert_eq!(fit.regime, Regime::ContactLimited);
        let RegimeModel::Contact { s, .. } = fit.contact.model else { unreachable!() };
        assert!((s - 1.2).abs() < 1e-6);
    }

    #[test]
    fn floor_points_are_censored() {
        let curve = skin_curve(&[1.0, 2.0, 4.0, 8.0, 100.0, 200.0], -120.0, -58.0);
        assert_eq!(curve.usable().count(), 4);
        let fit = fit_attenuation_regime(&curve).unwrap();
        assert_eq!(fit.usable_points, 4);
        assert!((fit.extrapolated_50hz_db + 120.0).abs() < 1e-3);
    }

    #[test]
    fn everything_at_floor_is_insufficient() {
        let pts = vec![(10.0, -58.0), (20.0, -58.0), (40.0, -58.0)];
        let curve = AttenuationCurve::new(pts, -58.0, FieldAxis::AlongQuantization).unwrap();
        assert_eq!(
            fit_attenuation_regime(&curve),
            Err(ShieldError::InsufficientData { usable: 0 })
        );
    }

    #[test]
    fn curve_validation() {
        assert!(AttenuationCurve::new(vec![(2.0, -1.0), (1.0, -2.0)], -60.0, FieldAxis::Perpendicular).is_err());
        assert!(AttenuationCurve::new(vec![(1.0, 3.0)], -60.0, FieldAxis::Perpendicular).is_err());
    }

    #[test]
    fn local_log_slope_shapes() {
        let skin = fit_attenuation_regime(&skin_curve(&[2.0, 4.0, 8.0, 11.0], -120.0, -58.0)).unwrap();
        let contact =
            fit_attenuation_regime(&contact_curve(&[1.0, 3.0, 10.0, 30.0], -10.0, 1.0, 0.0)).unwrap();
        let freqs = [1.0, 5.0, 25.0, 125.0];
        let skin_slopes: Vec<f64> = freqs.iter().map(|&f| skin.skin.model.log_slope(f).abs()).collect();
        assert!(skin_slopes.windows(2).all(|w| w[1] > w[0]));
        let contact_slopes: Vec<f64> =
            freqs.iter().map(|&f| contact.contact.model.log_slope(f)).collect();
        assert!(contact_slopes.windows(2).all(|w| (w[1] - w[0]).abs() < 1e-9));
    }

    #[test]
    fn contact_fit_absorbs_a_constant_gain_error() {
        let freqs: [f64; 5] = [1.0, 2.0, 5.0, 10.0, 20.0];
        let mut rng = seeded_rng(11);
        let noise = Normal::new(0.0, 0.3).unwrap();
        let base: Vec<(f64, f64)> = freqs
            .iter()
            .map(|&f| (f, -20.0 - 24.0 * f.log10() + noise.sample(&mut rng)))
            .collect();
        let shift = -7.5;
        let shifted: Vec<(f64, f64)> = base.iter().map(|&(f, db)| (f, db + shift)).collect();
        let a = fit_attenuation_regime(&AttenuationCurve::new(base, -200.0, FieldAxis::Perpendicular).unwrap()).unwrap();
        let b = fit_attenuation_regime(&AttenuationCurve::new(shifted, -200.0, FieldAxis::Perpendicular).unwrap()).unwrap();
        assert_eq!(a.regime, Regime::ContactLimited);
        assert_eq!(b.regime, Regime::ContactLimited);
        let a50 = a.contact.model.value_at(50.0);
        let b50 = b.contact.model.value_at(50.0);
        assert!((b50 - shift - a50).abs() < 1e-6, "{a50} {b50}");
        assert!((a.contact.residual_rms - b.contact.residual_rms).abs() < 1e-9);
    }
}
