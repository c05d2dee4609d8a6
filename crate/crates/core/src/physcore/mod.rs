//! Shared foundation: units, constants, sampled records, and the optimisers.

pub mod constants;
pub mod fit;
pub mod series;
pub mod simplex;
pub mod units;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use fit::{lm_fit, numeric_jacobian, FitData, FitError, FitResult, LmConfig, Shape, StepPolicy};
pub use series::{SeriesError, TimeSeries};
pub use units::{Quantity, Unit, UnitError};

/// The generator used for every synthetic data set in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
