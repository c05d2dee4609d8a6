//! AC magnetic shielding by thick conductive walls, field-noise budgets and
//! Helmholtz-coil homogeneity.

mod budget;
mod coil;
mod regime;
mod skin;

pub use budget::{field_noise_budget, NoiseBudget};
pub use coil::{coil_field, coil_homogeneity, elliptic_ke, CoilPair, CurrentLoop};
pub use regime::{
    fit_attenuation_regime, AttenuationCurve, FieldAxis, Regime, RegimeFit, RegimeModel,
    EXTRAPOLATION_FREQUENCY_HZ,
};
pub use skin::{
    attenuation_series, attenuation_skin, conductivity_at, skin_depth, ConductorSpec, ShieldLayer,
};

use crate::physcore::FitError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShieldError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient data: {usable} usable points above the floor, need at least 3")]
    InsufficientData { usable: usize },
    #[error("field evaluated on a coil filament at {0:?}")]
    Singularity([f64; 3]),
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// Measured 50 Hz attenuation of the inner shield along the quantization axis,
/// as (temperature K, attenuation dB, extrapolated). The two coldest entries
/// are extrapolations from data above the measurement floor.
pub const MEASURED_50HZ_ATTENUATION: [(f64, f64, bool); 4] = [
    (294.0, -21.0, false),
    (97.0, -46.0, false),
    (40.0, -85.0, true),
    (20.0, -120.0, true),
];
