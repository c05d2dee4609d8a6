use super::QubitError;
use std::f64::consts::PI;

/// Gaussian addressing beam along the trap axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamProfile {
    /// 1/e² intensity radius, m.
    pub waist: f64,
    pub center: f64,
    /// rad/s
    pub peak_rabi: f64,
}

/// Fraction of isotropic emission collected by a lens of numerical aperture
/// `na`: (1 − sqrt(1 − NA²))/2.
pub fn collection_efficiency(na: f64) -> Result<f64, QubitError> {
    if !(0.0..=1.0).contains(&na) {
        return Err(QubitError::Domain(format!("NA must lie in [0, 1], got {na}")));
    }
    Ok(0.5 * (1.0 - (1.0 - na * na).sqrt()))
}

/// Focused 1/e² intensity radius w₀ = λ/(π·NA).
pub fn diffraction_limited_waist(wavelength: f64, na: f64) -> Result<f64, QubitError> {
    if !(na > 0.0 && na <= 1.0) {
        return Err(QubitError::Domain(format!("NA must lie in (0, 1], got {na}")));
    }
    if !(wavelength > 0.0) {
        return Err(QubitError::Domain(format!("wavelength must be positive, got {wavelength}")));
    }
    Ok(wavelength / (PI * na))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::constants::QUBIT_WAVELENGTH_CA;
    use proptest::prelude::*;

    #[test]
    fn collection_known_values() {
        assert!((collection_efficiency(0.23).unwrap() - 0.0134).abs() < 5e-5);
        assert_eq!(collection_efficiency(1.0).unwrap(), 0.5);
        assert_eq!(collection_efficiency(0.0).unwrap(), 0.0);
        assert!(collection_efficiency(1.1).is_err());
    }

    #[test]
    fn waist_known_values() {
        let w = diffraction_limited_waist(QUBIT_WAVELENGTH_CA, 0.23).unwrap();
        assert!((w - 1.01e-6).abs() < 0.005e-6);
        let w2 = diffraction_limited_waist(QUBIT_WAVELENGTH_CA, 0.2).unwrap();
        assert!((w2 - 1.16e-6).abs() < 0.005e-6);
        let half = diffraction_limited_waist(QUBIT_WAVELENGTH_CA, 0.1).unwrap();
        assert!((half / w2 - 2.0).abs() < 1e-12);
        assert!(diffraction_limited_waist(QUBIT_WAVELENGTH_CA, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn collection_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(collection_efficiency(lo).unwrap() <= collection_efficiency(hi).unwrap());
        }
    }
}
