use std::f64::consts::PI;

use super::ShieldError;
use crate::physcore::constants::{DB_PER_NEPER, MU_0};

const ROOM_TEMPERATURE: f64 = 293.0;
const NITROGEN_ANCHOR: f64 = 77.0;
const SATURATION_TEMPERATURE: f64 = 20.0;

/// Conductor of a shield wall.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConductorSpec {
    /// Conductivity at 293 K, S/m.
    pub sigma_293k: f64,
    /// Residual-resistivity ratio, the conductivity gain reached at and below 20 K.
    pub rrr: f64,
    pub mu_r: f64,
    /// Conductivity ratio σ(77 K)/σ(293 K) used as the intermediate anchor.
    pub ratio_77k: f64,
}

impl ConductorSpec {
    pub fn new(sigma_293k: f64, rrr: f64, mu_r: f64) -> Result<Self, ShieldError> {
        let spec = ConductorSpec {
            sigma_293k,
            rrr,
            mu_r,
            ratio_77k: 8.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// OFHC copper, σ = 5.96e7 S/m at room temperature.
    pub fn copper(rrr: f64) -> Self {
        ConductorSpec {
            sigma_293k: 5.96e7,
            rrr,
            mu_r: 1.0,
            ratio_77k: 8.0,
        }
    }

    pub fn with_ratio_77k(mut self, ratio: f64) -> Result<Self, ShieldError> {
        self.ratio_77k = ratio;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), ShieldError> {
        if !(self.sigma_293k > 0.0 && self.sigma_293k.is_finite()) {
            return Err(ShieldError::Domain(format!(
                "conductivity must be positive, got {}",
                self.sigma_293k
            )));
        }
        if !(self.rrr >= 1.0) || !(self.mu_r >= 1.0) || !(self.ratio_77k >= 1.0) {
            return Err(ShieldError::Domain(
                "rrr, mu_r and the 77 K ratio must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// One wall of a shield stack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShieldLayer {
    pub thickness: f64,
    pub conductor: ConductorSpec,
    pub temperature: f64,
}

impl ShieldLayer {
    pub fn new(thickness: f64, conductor: ConductorSpec, temperature: f64) -> Result<Self, ShieldError> {
        if !(thickness >= 0.0) || !(temperature > 0.0) {
            return Err(ShieldError::Domain(format!(
                "need thickness >= 0 and temperature > 0, got {thickness} m, {temperature} K"
            )));
        }
        Ok(ShieldLayer {
            thickness,
            conductor,
            temperature,
        })
    }
}

/// σ(T) = σ₂₉₃·min(rrr, r(T)).
///
/// `r` is interpolated linearly in log(r) between 1 at 293 K, `ratio_77k` at
/// 77 K and `rrr` at 20 K, and held constant below 20 K. Above 293 K the upper
/// segment is extrapolated.
pub fn conductivity_at(conductor: &ConductorSpec, temperature: f64) -> Result<f64, ShieldError> {
    if !(temperature > 0.0) {
        return Err(ShieldError::Domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let ln_77 = conductor.ratio_77k.ln();
    let ln_rrr = conductor.rrr.ln();
    let ln_ratio = if temperature >= NITROGEN_ANCHOR {
        ln_77 * (ROOM_TEMPERATURE - temperature) / (ROOM_TEMPERATURE - NITROGEN_ANCHOR)
    } else if temperature > SATURATION_TEMPERATURE {
        let t = (NITROGEN_ANCHOR - temperature) / (NITROGEN_ANCHOR - SATURATION_TEMPERATURE);
        ln_77 + t * (ln_rrr - ln_77)
    } else {
        ln_rrr
    };
    Ok(conductor.sigma_293k * ln_ratio.exp().min(conductor.rrr))
}

/// δ = sqrt(2/(ωσ(T)µ)).
pub fn skin_depth(frequency: f64, conductor: &ConductorSpec, temperature: f64) -> Result<f64, ShieldError> {
    if !(frequency > 0.0 && frequency.is_finite()) {
        return Err(ShieldError::Domain(format!(
            "frequency must be positive, got {frequency}"
        )));
    }
    let sigma = conductivity_at(conductor, temperature)?;
    let omega = 2.0 * PI * frequency;
    Ok((2.0 / (omega * sigma * conductor.mu_r * MU_0)).sqrt())
}

/// Plane-wall skin attenuation −20·log10(e)·d/δ in dB.
pub fn attenuation_skin(layer: &ShieldLayer, frequency: f64) -> Result<f64, ShieldError> {
    let delta = skin_depth(frequency, &layer.conductor, layer.temperature)?;
    Ok(-DB_PER_NEPER * layer.thickness / delta)
}

/// Attenuation of nested walls; dB values add.
pub fn attenuation_series(layers: &[ShieldLayer], frequency: f64) -> Result<f64, ShieldError> {
    if layers.is_empty() {
        return Err(ShieldError::Domain("shield stack has no layers".into()));
    }
    layers
        .iter()
        .map(|layer| attenuation_skin(layer, frequency))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SIGMA_CU: f64 = 5.96e7;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn room_temperature_copper_at_50hz() {
        let d = skin_depth(50.0, &ConductorSpec::copper(100.0), 293.0).unwrap();
        assert!(rel(d, 9.2e-3) < 0.01, "{d}");
    }

    #[test]
    fn cold_copper_skin_depths() {
        // rrr as the low-temperature gain; 20 K is in the saturated regime
        let d100 = skin_depth(50.0, &ConductorSpec::copper(100.0), 20.0).unwrap();
        let d1000 = skin_depth(50.0, &ConductorSpec::copper(1000.0), 20.0).unwrap();
        assert!((d100 * 1e3 - 0.92).abs() < 0.005, "{d100}");
        assert!((d1000 * 1e3 - 0.29).abs() < 0.005, "{d1000}");
    }

    #[test]
    fn quadrupling_frequency_halves_depth() {
        let cu = ConductorSpec::copper(100.0);
        let d1 = skin_depth(50.0, &cu, 150.0).unwrap();
        let d4 = skin_depth(200.0, &cu, 150.0).unwrap();
        assert!(rel(d1, 2.0 * d4) < 1e-14);
    }

    #[test]
    fn nonpositive_frequency_is_domain_error() {
        let cu = ConductorSpec::copper(100.0);
        assert!(matches!(skin_depth(0.0, &cu, 293.0), Err(ShieldError::Domain(_))));
        assert!(matches!(skin_depth(-5.0, &cu, 293.0), Err(ShieldError::Domain(_))));
    }

    #[test]
    fn conductivity_anchor_points() {
        let cu = ConductorSpec::copper(100.0);
        assert_eq!(conductivity_at(&cu, 293.0).unwrap(), SIGMA_CU);
        assert!(rel(conductivity_at(&cu, 20.0).unwrap(), 100.0 * SIGMA_CU) < 1e-12);
        assert!(rel(conductivity_at(&cu, 77.0).unwrap(), 8.0 * SIGMA_CU) < 1e-12);
        assert_eq!(
            conductivity_at(&cu, 10.0).unwrap(),
            conductivity_at(&cu, 20.0).unwrap()
        );
        // rrr below the 77 K anchor clamps
        let dirty = ConductorSpec::copper(5.0);
        assert!(rel(conductivity_at(&dirty, 77.0).unwrap(), 5.0 * SIGMA_CU) < 1e-12);
    }

    #[test]
    fn attenuation_at_rounded_skin_depths() {
        // Conductor chosen so that δ(50 Hz) is exactly the rounded depth.
        let layer_for = |delta: f64| {
            let sigma = 2.0 / (2.0 * std::f64::consts::PI * 50.0 * MU_0 * delta * delta);
            let c = ConductorSpec::new(sigma, 1.0, 1.0).unwrap();
            ShieldLayer::new(0.02, c, 293.0).unwrap()
        };
        let a = attenuation_skin(&layer_for(0.92e-3), 50.0).unwrap();
        assert!((a + 188.8).abs() < 0.05, "{a}");
        let a = attenuation_skin(&layer_for(0.292e-3), 50.0).unwrap();
        assert!((a + 595.0).abs() < 0.5, "{a}");
        let zero = ShieldLayer::new(0.0, ConductorSpec::copper(100.0), 20.0).unwrap();
        assert_eq!(attenuation_skin(&zero, 50.0).unwrap(), 0.0);
    }

    #[test]
    fn series_is_additive_and_order_free() {
        let cu = ConductorSpec::copper(300.0);
        let inner = ShieldLayer::new(0.02, cu, 20.0).unwrap();
        let outer = ShieldLayer::new(0.005, cu, 77.0).unwrap();
        let one = attenuation_skin(&inner, 50.0).unwrap();
        assert_eq!(attenuation_series(&[inner], 50.0).unwrap(), one);
        assert_eq!(attenuation_series(&[inner, inner], 50.0).unwrap(), 2.0 * one);
        assert_eq!(
            attenuation_series(&[inner, outer], 50.0).unwrap(),
            attenuation_series(&[outer, inner], 50.0).unwrap()
        );
        assert!(attenuation_series(&[], 50.0).is_err());
    }

    proptest! {
        #[test]
        fn depth_decreases_in_frequency_and_conductivity(
            f in 1e-2f64..1e6, df in 1.001f64..100.0,
            sigma in 1e5f64..1e10, ds in 1.001f64..100.0,
        ) {
            let c = ConductorSpec::new(sigma, 1.0, 1.0).unwrap();
            let c2 = ConductorSpec::new(sigma * ds, 1.0, 1.0).unwrap();
            let d = skin_depth(f, &c, 293.0).unwrap();
            prop_assert!(skin_depth(f * df, &c, 293.0).unwrap() < d);
            prop_assert!(skin_depth(f, &c2, 293.0).unwrap() < d);
        }

        #[test]
        fn doubling_thickness_doubles_db(t in 1e-4f64..0.1, temp in 4.0f64..300.0) {
            let c = ConductorSpec::copper(200.0);
            let a = attenuation_skin(&ShieldLayer::new(t, c, temp).unwrap(), 50.0).unwrap();
            let b = attenuation_skin(&ShieldLayer::new(2.0 * t, c, temp).unwrap(), 50.0).unwrap();
            prop_assert_eq!(b, 2.0 * a);
        }
    }
}
