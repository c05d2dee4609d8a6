//! Fields of coaxial circular loops from complete elliptic integrals.
//!
//! Loops are centred on the z axis. For a loop of radius `a` at height `z0`
//! carrying `NI` ampere-turns, with `ρ` the distance from the axis and
//! `z = z_point − z0`:
//!
//! ```text
//! α² = a² + ρ² + z² − 2aρ,   β² = a² + ρ² + z² + 2aρ,   m = 1 − α²/β²
//! Bρ = µ0·NI·z / (2π α² β ρ) · [(a² + ρ² + z²) E(m) − α² K(m)]
//! Bz = µ0·NI   / (2π α² β)   · [(a² − ρ² − z²) E(m) + α² K(m)]
//! ```

use std::f64::consts::PI;

use super::ShieldError;
use crate::physcore::constants::MU_0;

/// Complete elliptic integrals K(m) and E(m), parameter `m = k²`, by the
/// arithmetic-geometric mean.
pub fn elliptic_ke(m: f64) -> (f64, f64) {
    debug_assert!((0.0..1.0).contains(&m));
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..64 {
        if c.abs() <= 1e-16 * a {
            break;
        }
        c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        weight *= 2.0;
        sum += weight * c * c;
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurrentLoop {
    pub radius: f64,
    /// Axial position of the loop plane.
    pub z_center: f64,
    pub ampere_turns: f64,
}

impl CurrentLoop {
    pub fn field(&self, point: [f64; 3]) -> Result<[f64; 3], ShieldError> {
        let a = self.radius;
        let [x, y, zp] = point;
        let z = zp - self.z_center;
        let rho = x.hypot(y);
        let r2 = a * a + rho * rho + z * z;
        let alpha2 = r2 - 2.0 * a * rho;
        if alpha2 <= (1e-9 * a).powi(2) {
            return Err(ShieldError::Singularity(point));
        }
        let scale = MU_0 * self.ampere_turns / PI;
        if rho <= 1e-12 * a {
            let bz = MU_0 * self.ampere_turns * a * a / (2.0 * (a * a + z * z).powf(1.5));
            return Ok([0.0, 0.0, bz]);
        }
        let beta2 = r2 + 2.0 * a * rho;
        let beta = beta2.sqrt();
        let m = 1.0 - alpha2 / beta2;
        let (k, e) = elliptic_ke(m);
        let bz = scale / (2.0 * alpha2 * beta) * ((a * a - rho * rho - z * z) * e + alpha2 * k);
        let brho = scale * z / (2.0 * alpha2 * beta * rho) * (r2 * e - alpha2 * k);
        Ok([brho * x / rho, brho * y / rho, bz])
    }
}

/// Two identical coaxial coils centred on the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoilPair {
    pub radius: f64,
    pub separation: f64,
    pub turns: f64,
    pub current: f64,
}

impl CoilPair {
    pub fn new(radius: f64, separation: f64, turns: f64, current: f64) -> Result<Self, ShieldError> {
        if !(radius > 0.0 && separation > 0.0) {
            return Err(ShieldError::Domain(format!(
                "radius and separation must be positive, got {radius}, {separation}"
            )));
        }
        Ok(CoilPair {
            radius,
            separation,
            turns,
            current,
        })
    }

    /// Separation equal to the radius.
    pub fn helmholtz(radius: f64, turns: f64, current: f64) -> Result<Self, ShieldError> {
        CoilPair::new(radius, radius, turns, current)
    }

    pub fn loops(&self) -> [CurrentLoop; 2] {
        let ni = self.turns * self.current;
        [-0.5, 0.5].map(|sign| CurrentLoop {
            radius: self.radius,
            z_center: sign * self.separation,
            ampere_turns: ni,
        })
    }
}

pub fn coil_field(pair: &CoilPair, point: [f64; 3]) -> Result<[f64; 3], ShieldError> {
    let mut total = [0.0; 3];
    for lp in pair.loops() {
        let b = lp.field(point)?;
        for (t, v) in total.iter_mut().zip(b) {
            *t += v;
        }
    }
    Ok(total)
}

/// Number of axial samples used by [`coil_homogeneity`].
const HOMOGENEITY_SAMPLES: usize = 201;

/// Largest `|B(z) − B(0)|/|B(0)|` over the axial segment `|z| ≤ extent/2`.
pub fn coil_homogeneity(pair: &CoilPair, extent: f64) -> Result<f64, ShieldError> {
    if !(extent >= 0.0 && extent < pair.radius / 10.0) {
        return Err(ShieldError::Domain(format!(
            "extent must be below radius/10 = {}, got {extent}",
            pair.radius / 10.0
        )));
    }
    let norm = |b: [f64; 3]| (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    let b0 = norm(coil_field(pair, [0.0; 3])?);
    let mut worst = 0.0_f64;
    for i in 0..HOMOGENEITY_SAMPLES {
        let z = extent * (i as f64 / (HOMOGENEITY_SAMPLES - 1) as f64 - 0.5);
        let b = norm(coil_field(pair, [0.0, 0.0, z])?);
        worst = worst.max((b - b0).abs() / b0);
    }
    Ok(worst)
}
