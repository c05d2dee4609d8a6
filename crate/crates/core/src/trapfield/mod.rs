//! Gapless-plane electrostatics of a planar segmented Paul trap.
//!
//! Every electrode is a rectangle in the z = 0 plane; the rest of the plane is
//! grounded and gaps are split between neighbours. A unit potential on one
//! rectangle gives the basis function [`rect_potential`]; RF and DC
//! potentials are weighted sums of these.

mod circuit;
mod geometry;
mod potential;
mod solve;

pub use circuit::{addressable, resonance_frequency, resonator_capacitance, two_ion_spacing};
pub use geometry::FiveWireGeometry;
pub use potential::{
    dc_potential, pseudopotential, rect_gradient, rect_potential, rf_field, rf_field_numeric,
    rf_potential,
};
pub use solve::{find_rf_null, secular_spectrum, total_hessian, RfNull, TrapSolution};

use crate::physcore::constants::{ELEMENTARY_CHARGE, MASS_CA40_ION, MASS_SR88_ION};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrapError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid layout: {0}")]
    Layout(String),
    #[error("no RF null with an interior pseudopotential minimum was found")]
    NoTrap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Rf,
    Dc(usize),
    Center,
}

/// Rectangular electrode, all coordinates in metres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Strip {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub role: Role,
}

impl Strip {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, role: Role) -> Result<Self, TrapError> {
        if !(x_max > x_min && y_max > y_min) || ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
            return Err(TrapError::Layout(format!(
                "degenerate strip x {x_min}..{x_max}, y {y_min}..{y_max}"
            )));
        }
        Ok(Strip {
            x_min,
            x_max,
            y_min,
            y_max,
            role,
        })
    }

    fn overlaps(&self, other: &Strip) -> bool {
        self.x_min < other.x_max
            && other.x_min < self.x_max
            && self.y_min < other.y_max
            && other.y_min < self.y_max
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Strip {
        Strip {
            x_min: self.x_min + dx,
            x_max: self.x_max + dx,
            y_min: self.y_min + dy,
            y_max: self.y_max + dy,
            role: self.role,
        }
    }

    pub fn scaled(&self, c: f64) -> Strip {
        Strip {
            x_min: self.x_min * c,
            x_max: self.x_max * c,
            y_min: self.y_min * c,
            y_max: self.y_max * c,
            role: self.role,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElectrodeLayout {
    strips: Vec<Strip>,
    /// Peak RF voltage, V.
    pub rf_voltage_amplitude: f64,
    /// RF drive Ω, rad/s.
    pub rf_frequency: f64,
}

impl ElectrodeLayout {
    pub fn new(strips: Vec<Strip>, rf_voltage_amplitude: f64, rf_frequency: f64) -> Result<Self, TrapError> {
        if !strips.iter().any(|s| s.role == Role::Rf) {
            return Err(TrapError::Layout("layout has no RF electrode".into()));
        }
        if !(rf_frequency > 0.0 && rf_frequency.is_finite()) {
            return Err(TrapError::Layout(format!("RF frequency must be positive, got {rf_frequency}")));
        }
        if !rf_voltage_amplitude.is_finite() {
            return Err(TrapError::Layout("RF amplitude must be finite".into()));
        }
        for (i, a) in strips.iter().enumerate() {
            if let Some(j) = strips[i + 1..].iter().position(|b| a.overlaps(b)) {
                return Err(TrapError::Layout(format!("strips {i} and {} overlap", i + 1 + j)));
            }
        }
        Ok(ElectrodeLayout {
            strips,
            rf_voltage_amplitude,
            rf_frequency,
        })
    }

    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn rf_strips(&self) -> impl Iterator<Item = &Strip> + '_ {
        self.strips.iter().filter(|s| s.role == Role::Rf)
    }

    /// Centre of the bounding box of the RF electrodes, (x, y).
    pub fn rf_center(&self) -> (f64, f64) {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for s in self.rf_strips() {
            x0 = x0.min(s.x_min);
            x1 = x1.max(s.x_max);
            y0 = y0.min(s.y_min);
            y1 = y1.max(s.y_max);
        }
        (0.5 * (x0 + x1), 0.5 * (y0 + y1))
    }

    /// Lateral size of the RF electrode region, used as a length scale.
    pub fn rf_extent_x(&self) -> f64 {
        let (x0, x1) = self
            .rf_strips()
            .fold((f64::MAX, f64::MIN), |(a, b), s| (a.min(s.x_min), b.max(s.x_max)));
        x1 - x0
    }

    pub fn translated(&self, dx: f64, dy: f64) -> ElectrodeLayout {
        ElectrodeLayout {
            strips: self.strips.iter().map(|s| s.translated(dx, dy)).collect(),
            ..self.clone()
        }
    }

    /// Every lateral dimension multiplied by `c`.
    pub fn scaled(&self, c: f64) -> ElectrodeLayout {
        ElectrodeLayout {
            strips: self.strips.iter().map(|s| s.scaled(c)).collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpeciesLabel {
    Ca40,
    Sr88,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IonSpecies {
    pub mass: f64,
    pub charge: f64,
    pub label: SpeciesLabel,
}

impl IonSpecies {
    pub const CA40: IonSpecies = IonSpecies {
        mass: MASS_CA40_ION,
        charge: ELEMENTARY_CHARGE,
        label: SpeciesLabel::Ca40,
    };
    pub const SR88: IonSpecies = IonSpecies {
        mass: MASS_SR88_ION,
        charge: ELEMENTARY_CHARGE,
        label: SpeciesLabel::Sr88,
    };
}

/// Static voltages: `dc[i]` drives every `Role::Dc(i)` electrode.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DcVoltages {
    pub dc: Vec<f64>,
    pub center: f64,
}

impl DcVoltages {
    pub fn zero() -> Self {
        DcVoltages::default()
    }

    pub fn voltage(&self, role: Role) -> f64 {
        match role {
            Role::Rf => 0.0,
            Role::Center => self.center,
            Role::Dc(i) => self.dc.get(i).copied().unwrap_or(0.0),
        }
    }
}
