//! Conduction heat load through support structures and coolant boil-off.
//!
//! The built-in 316 stainless conductivity is the NIST cryogenic material
//! property fit (Marquardt, Le and Radebaugh, "Cryogenic Material Properties
//! Database", 2000), `log10 k = Σ cᵢ·(log10 T)ⁱ`, tabulated here on a 1 K grid
//! from 4 K to 300 K. Heat loads integrate the table with the trapezoid rule
//! on the same grid.

use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("temperature span {low} K .. {high} K leaves the table range {min} K .. {max} K")]
    OutOfTable {
        low: f64,
        high: f64,
        min: f64,
        max: f64,
    },
}

/// Coefficients of the NIST 316 stainless fit, lowest order first.
pub const SS316_FIT: [f64; 9] = [
    -1.4087, 1.3982, 0.2543, -0.6260, 0.2334, 0.4256, -0.4658, 0.1650, -0.0199,
];

fn ss316_fit(temperature: f64) -> f64 {
    let x = temperature.log10();
    let exponent = SS316_FIT.iter().rev().fold(0.0, |acc, c| acc * x + c);
    10f64.powf(exponent)
}

/// Thermal conductivity table, (T K, k W/(m·K)), linearly interpolated.
#[derive(Clone, Debug, PartialEq)]
pub struct ConductivityTable {
    points: Vec<(f64, f64)>,
}

impl ConductivityTable {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, ThermalError> {
        if points.len() < 2 {
            return Err(ThermalError::Domain("conductivity table needs at least two rows".into()));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(ThermalError::Domain("table temperatures must be strictly increasing".into()));
        }
        if points.iter().any(|&(t, k)| !(t > 0.0 && k >= 0.0 && t.is_finite() && k.is_finite())) {
            return Err(ThermalError::Domain("table needs T > 0 and k >= 0".into()));
        }
        Ok(ConductivityTable { points })
    }

    /// 316 stainless, 4 K to 300 K in 1 K steps.
    pub fn ss316() -> &'static ConductivityTable {
        static TABLE: OnceLock<ConductivityTable> = OnceLock::new();
        TABLE.get_or_init(|| ConductivityTable {
            points: (4..=300).map(|t| (t as f64, ss316_fit(t as f64))).collect(),
        })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn conductivity(&self, temperature: f64) -> Result<f64, ThermalError> {
        let (min, max) = self.range();
        if !(temperature >= min && temperature <= max) {
            return Err(ThermalError::OutOfTable {
                low: temperature,
                high: temperature,
                min,
                max,
            });
        }
        let i = self.points.partition_point(|&(t, _)| t <= temperature);
        if i == self.points.len() {
            return Ok(self.points[i - 1].1);
        }
        let (t0, k0) = self.points[i - 1];
        let (t1, k1) = self.points[i];
        Ok(k0 + (k1 - k0) * (temperature - t0) / (t1 - t0))
    }

    /// ∫ k dT by trapezoids on a 1 K grid starting at `low`; the last panel
    /// is shortened to end on `high`.
    pub fn integral(&self, low: f64, high: f64) -> Result<f64, ThermalError> {
        let (min, max) = self.range();
        if !(low >= min && high <= max && low <= high) {
            return Err(ThermalError::OutOfTable { low, high, min, max });
        }
        let mut total = 0.0;
        let mut t = low;
        let mut k_prev = self.conductivity(t)?;
        while t < high {
            let next = (t + 1.0).min(high);
            let k_next = self.conductivity(next)?;
            total += 0.5 * (k_prev + k_next) * (next - t);
            t = next;
            k_prev = k_next;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Material {
    Ss316,
    Custom(ConductivityTable),
}

impl Material {
    pub fn table(&self) -> &ConductivityTable {
        match self {
            Material::Ss316 => ConductivityTable::ss316(),
            Material::Custom(t) => t,
        }
    }
}

/// A conducting support between two temperature stages.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSpec {
    pub cross_section_area: f64,
    pub length: f64,
    pub material: Material,
    pub t_cold: f64,
    pub t_hot: f64,
}

impl SupportSpec {
    pub fn new(
        cross_section_area: f64,
        length: f64,
        material: Material,
        t_cold: f64,
        t_hot: f64,
    ) -> Result<Self, ThermalError> {
        if !(cross_section_area > 0.0 && length > 0.0) {
            return Err(ThermalError::Domain("area and length must be positive".into()));
        }
        if !(t_cold > 0.0 && t_cold < t_hot) {
            return Err(ThermalError::Domain(format!(
                "need 0 < T_cold < T_hot, got {t_cold} K, {t_hot} K"
            )));
        }
        Ok(SupportSpec {
            cross_section_area,
            length,
            material,
            t_cold,
            t_hot,
        })
    }

    /// Thin-walled tube: area π·D·t.
    pub fn thin_tube(
        diameter: f64,
        wall: f64,
        length: f64,
        material: Material,
        t_cold: f64,
        t_hot: f64,
    ) -> Result<Self, ThermalError> {
        SupportSpec::new(std::f64::consts::PI * diameter * wall, length, material, t_cold, t_hot)
    }
}

/// Q = (A/L)·∫ k(T) dT between the two stages, W.
pub fn conduction_load(support: &SupportSpec) -> Result<f64, ThermalError> {
    let integral = support.material.table().integral(support.t_cold, support.t_hot)?;
    Ok(support.cross_section_area / support.length * integral)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoolantKind {
    LHe,
    LN2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoolantSpec {
    pub name: CoolantKind,
    /// kg/l
    pub density: f64,
    /// J/g
    pub latent_heat: f64,
}

impl CoolantSpec {
    /// Liquid helium at 4.2 K.
    pub const LHE: CoolantSpec = CoolantSpec {
        name: CoolantKind::LHe,
        density: 0.125,
        latent_heat: 20.8,
    };
    /// Liquid nitrogen at 77 K.
    pub const LN2: CoolantSpec = CoolantSpec {
        name: CoolantKind::LN2,
        density: 0.807,
        latent_heat: 199.2,
    };
}

/// Heat absorbed by evaporating `rate_l_per_h` litres per hour, W.
pub fn boiloff_power(rate_l_per_h: f64, coolant: &CoolantSpec) -> Result<f64, ThermalError> {
    if !(rate_l_per_h >= 0.0) {
        return Err(ThermalError::Domain(format!("rate must be >= 0, got {rate_l_per_h}")));
    }
    // l/h · kg/l · 1000 g/kg · J/g / 3600 s/h
    Ok(rate_l_per_h * coolant.density * 1000.0 * coolant.latent_heat / 3600.0)
}

/// Mount used for the heat-budget report: thin 316 stainless tube between
/// the inner (20 K) and outer shield. Neither the tube dimensions nor the
/// outer-shield temperature are known; these are representative values.
pub fn reference_mount() -> SupportSpec {
    SupportSpec::thin_tube(0.060, 0.5e-3, 0.050, Material::Ss316, 20.0, 40.0)
        .expect("reference mount is valid")
}
