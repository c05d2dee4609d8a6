//! Single-mode qubit dynamics in the Lamb-Dicke regime and the fits used to
//! characterise the trap: thermal Rabi flops, sideband thermometry, heating
//! rate, Ramsey coherence, beam waist and imaging optics.
//!
//! One effective motional mode couples to the qubit; the distinction between
//! the axial mode probed by thermometry and the radial modes that dephase the
//! carrier is not modelled.

mod dynamics;
mod fits;
mod optics;

pub use dynamics::{
    carrier_rabi_signal, nbar_to_sideband_ratio, sideband_ratio_to_nbar, thermal_distribution, CarrierModel,
    DriveParams, PhononState, RabiSignal, LAMB_DICKE_LIMIT,
};
pub use fits::{
    heating_rate_fit, ramsey_contrast_fit, waist_from_rabi_scan, DecayModel, HeatingFit, RamseyFit, WaistFit,
};
pub use optics::{collection_efficiency, diffraction_limited_waist, BeamProfile};

use crate::physcore::FitError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QubitError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("sideband ratio {0} is outside [0, 1)")]
    RatioOutOfRange(f64),
    #[error("need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error(transparent)]
    Fit(#[from] FitError),
}
