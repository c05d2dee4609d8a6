//! Physical constants (CODATA 2018) and species data, SI units.

use std::f64::consts::PI;

/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Atomic mass constant, kg.
pub const ATOMIC_MASS: f64 = 1.660_539_066_60e-27;
/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Decibels per neper of field amplitude, 20·log10(e).
pub const DB_PER_NEPER: f64 = 8.685_889_638_065_037;

/// Singly ionised calcium-40, kg.
pub const MASS_CA40_ION: f64 = 39.962_590_863 * ATOMIC_MASS - ELECTRON_MASS;
/// Singly ionised strontium-88, kg.
pub const MASS_SR88_ION: f64 = 87.905_612_5 * ATOMIC_MASS - ELECTRON_MASS;

/// S1/2 to D5/2 qubit wavelength of Ca+, m.
pub const QUBIT_WAVELENGTH_CA: f64 = 729e-9;
/// S1/2 to D5/2 qubit wavelength of Sr+, m.
pub const QUBIT_WAVELENGTH_SR: f64 = 674e-9;
/// Ca+ S1/2 to P1/2 detection wavelength, m.
pub const DETECTION_WAVELENGTH_CA: f64 = 397e-9;

pub const TWO_PI: f64 = 2.0 * PI;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values_are_consistent() {
        // mu0 eps0 c^2 = 1
        let check = MU_0 * EPSILON_0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
        assert!((check - 1.0).abs() < 1e-9);
        assert!((MASS_CA40_ION / 6.636e-26 - 1.0).abs() < 1e-3);
        assert!((MASS_SR88_ION / 1.4597e-25 - 1.0).abs() < 1e-3);
        assert!((DB_PER_NEPER - 20.0 * std::f64::consts::E.log10()).abs() < 1e-12);
    }
}
