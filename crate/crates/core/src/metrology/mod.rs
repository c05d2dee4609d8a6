//! Instrument characterisation from time series: overlapping Allan
//! deviation, beat-note linewidth, interferometric vibration records and
//! ion-image profiles.

mod allan;
mod fringe;
mod image;
mod spectrum;

pub use allan::{allan_deviation, octave_taus, AllanPoint, FrequencyRecord, RecordKind};
pub use fringe::{
    excursion_stats, fringe_forward, fringe_to_displacement, ExcursionStats, FringeInversion, InterferometerCal,
    MAX_CLIPPED_FRACTION,
};
pub use image::{gaussian_profile_fit, lorentzian_linewidth_fit, ImageAxis, ImageProfile, LinewidthFit, ProfileFit};
pub use spectrum::{peak_find, power_spectrum, Peak, Spectrum, Window};

use crate::physcore::{FitError, SeriesError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetrologyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("{clipped} of {total} samples clipped, above the 1 % limit")]
    Clipped { clipped: usize, total: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Fit(#[from] FitError),
}
