use super::{IonSpecies, TrapError};
use crate::physcore::constants::{EPSILON_0, TWO_PI};

fn positive(name: &str, v: f64) -> Result<(), TrapError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(TrapError::Domain(format!("{name} must be positive, got {v}")))
    }
}

/// C = 1/(L·(2πf₀)²), F.
pub fn resonator_capacitance(inductance: f64, resonance: f64) -> Result<f64, TrapError> {
    positive("inductance", inductance)?;
    positive("resonance frequency", resonance)?;
    Ok(1.0 / (inductance * (TWO_PI * resonance).powi(2)))
}

/// f₀ = 1/(2π·sqrt(LC)), Hz.
pub fn resonance_frequency(inductance: f64, capacitance: f64) -> Result<f64, TrapError> {
    positive("inductance", inductance)?;
    positive("capacitance", capacitance)?;
    Ok(1.0 / (TWO_PI * (inductance * capacitance).sqrt()))
}

/// Equilibrium separation of two ions in a harmonic axial well of
/// `axial_frequency` Hz, m.
pub fn two_ion_spacing(species: &IonSpecies, axial_frequency: f64) -> Result<f64, TrapError> {
    positive("axial frequency", axial_frequency)?;
    let w = TWO_PI * axial_frequency;
    Ok((species.charge * species.charge / (TWO_PI * EPSILON_0 * species.mass * w * w)).cbrt())
}

/// Neighbouring ions can be addressed one at a time when their spacing
/// exceeds the beam waist.
pub fn addressable(spacing: f64, waist: f64) -> bool {
    spacing > waist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::constants::{ELEMENTARY_CHARGE, MASS_CA40_ION};
    use std::f64::consts::PI;

    #[test]
    fn capacitance_round_trip() {
        let c = resonator_capacitance(1.6e-6, 49.9e6).unwrap();
        assert!((c - 6.358e-12).abs() < 0.005e-12, "{c}");
        let f = resonance_frequency(1.6e-6, c).unwrap();
        assert!((f / 49.9e6 - 1.0).abs() < 1e-12);
        let f4 = resonance_frequency(1.6e-6, 4.0 * c).unwrap();
        assert!((f4 / f - 0.5).abs() < 1e-12);
        assert!(resonator_capacitance(0.0, 1e6).is_err());
    }

    #[test]
    fn calcium_spacing_at_one_megahertz() {
        let s = two_ion_spacing(&IonSpecies::CA40, 1e6).unwrap();
        // Coulomb force balance e²/(4πε₀s²) = m ω² s/2 written out directly
        let w = 2.0 * PI * 1e6;
        let oracle = (2.0 * ELEMENTARY_CHARGE.powi(2) / (4.0 * PI * EPSILON_0 * MASS_CA40_ION * w * w)).cbrt();
        assert!((s / oracle - 1.0).abs() < 1e-12);
        assert!((s - 5.605e-6).abs() < 0.001e-6, "{s}");
        let ratio = s / two_ion_spacing(&IonSpecies::CA40, 2e6).unwrap();
        assert!((ratio - 2f64.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!(addressable(s, 3.0e-6));
        assert!(!addressable(2.0e-6, 3.0e-6));
    }
}
