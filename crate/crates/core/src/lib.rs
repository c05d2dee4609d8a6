//! Models and analysis routines for a cryogenic surface-electrode ion trap
//! apparatus: eddy-current magnetic shielding, trap electrostatics, qubit
//! thermometry and coherence fits, frequency and vibration metrology, and
//! heat-load bookkeeping.
//!
//! All values are SI internally. [`physcore::Quantity`] carries units across
//! the I/O boundary.

pub mod physcore;
pub mod magshield;
pub mod cryotherm;
pub mod trapfield;
pub mod qubitsim;
pub mod metrology;
pub mod demo;
