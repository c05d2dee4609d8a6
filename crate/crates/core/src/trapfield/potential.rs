use super::{DcVoltages, ElectrodeLayout, IonSpecies, Role, Strip, TrapError};
use std::f64::consts::PI;

fn check_height(point: [f64; 3]) -> Result<(), TrapError> {
    if !(point[2] > 0.0) || point.iter().any(|v| !v.is_finite()) {
        return Err(TrapError::Domain(format!(
            "evaluation point must lie above the electrode plane, got {point:?}"
        )));
    }
    Ok(())
}

/// Potential at `point` of a unit-potential rectangle in an otherwise grounded
/// plane (solid angle subtended by the rectangle over 2π).
pub fn rect_potential(strip: &Strip, point: [f64; 3]) -> Result<f64, TrapError> {
    check_height(point)?;
    Ok(rect_potential_unchecked(strip, point))
}

fn rect_potential_unchecked(strip: &Strip, [x, y, z]: [f64; 3]) -> f64 {
    let corner = |xi: f64, yj: f64| {
        let a = xi - x;
        let b = yj - y;
        let r = (a * a + b * b + z * z).sqrt();
        (a * b / (z * r)).atan()
    };
    (corner(strip.x_max, strip.y_max) - corner(strip.x_min, strip.y_max) - corner(strip.x_max, strip.y_min)
        + corner(strip.x_min, strip.y_min))
        / (2.0 * PI)
}

/// Analytic gradient of [`rect_potential`] with respect to the point.
pub fn rect_gradient(strip: &Strip, point: [f64; 3]) -> Result<[f64; 3], TrapError> {
    check_height(point)?;
    Ok(rect_gradient_unchecked(strip, point))
}

fn rect_gradient_unchecked(strip: &Strip, [x, y, z]: [f64; 3]) -> [f64; 3] {
    // F = atan(ab/(zR)) with a = xi − x, b = yj − y:
    // ∂F/∂a = bz/(R(a²+z²)), ∂F/∂b = az/(R(b²+z²)),
    // ∂F/∂z = −ab(R²+z²)/(R(a²+z²)(b²+z²))
    let corner = |xi: f64, yj: f64| -> [f64; 3] {
        let a = xi - x;
        let b = yj - y;
        let z2 = z * z;
        let r = (a * a + b * b + z2).sqrt();
        let az = a * a + z2;
        let bz = b * b + z2;
        [
            -b * z / (r * az),
            -a * z / (r * bz),
            -a * b * (r * r + z2) / (r * az * bz),
        ]
    };
    let c = [
        (corner(strip.x_max, strip.y_max), 1.0),
        (corner(strip.x_min, strip.y_max), -1.0),
        (corner(strip.x_max, strip.y_min), -1.0),
        (corner(strip.x_min, strip.y_min), 1.0),
    ];
    let mut g = [0.0; 3];
    for (v, sign) in c {
        for k in 0..3 {
            g[k] += sign * v[k];
        }
    }
    g.map(|v| v / (2.0 * PI))
}

/// RF potential amplitude, V.
pub fn rf_potential(layout: &ElectrodeLayout, point: [f64; 3]) -> Result<f64, TrapError> {
    check_height(point)?;
    Ok(layout.rf_voltage_amplitude
        * layout
            .rf_strips()
            .map(|s| rect_potential_unchecked(s, point))
            .sum::<f64>())
}

/// RF field amplitude `E = −∇V_rf`, V/m, from the analytic basis gradients.
pub fn rf_field(layout: &ElectrodeLayout, point: [f64; 3]) -> Result<[f64; 3], TrapError> {
    check_height(point)?;
    Ok(rf_field_unchecked(layout, point))
}

pub(super) fn rf_field_unchecked(layout: &ElectrodeLayout, point: [f64; 3]) -> [f64; 3] {
    let mut g = [0.0; 3];
    for s in layout.rf_strips() {
        let d = rect_gradient_unchecked(s, point);
        for k in 0..3 {
            g[k] += d[k];
        }
    }
    g.map(|v| -layout.rf_voltage_amplitude * v)
}

/// RF field by central differences of the RF potential with step `h`.
pub fn rf_field_numeric(layout: &ElectrodeLayout, point: [f64; 3], h: f64) -> Result<[f64; 3], TrapError> {
    check_height(point)?;
    if !(h > 0.0 && h < point[2]) {
        return Err(TrapError::Domain(format!("step {h} must be positive and below the height")));
    }
    let mut e = [0.0; 3];
    for (k, ek) in e.iter_mut().enumerate() {
        let mut up = point;
        let mut dn = point;
        up[k] += h;
        dn[k] -= h;
        *ek = -(rf_potential(layout, up)? - rf_potential(layout, dn)?) / (2.0 * h);
    }
    Ok(e)
}

/// Ψ = q²|E|²/(4mΩ²), J.
pub fn pseudopotential(layout: &ElectrodeLayout, species: &IonSpecies, point: [f64; 3]) -> Result<f64, TrapError> {
    check_height(point)?;
    Ok(pseudopotential_unchecked(layout, species, point))
}

pub(super) fn pseudopotential_unchecked(layout: &ElectrodeLayout, species: &IonSpecies, point: [f64; 3]) -> f64 {
    let e = rf_field_unchecked(layout, point);
    let e2 = e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
    species.charge * species.charge * e2 / (4.0 * species.mass * layout.rf_frequency * layout.rf_frequency)
}

/// Static potential from the DC and centre electrodes, V.
pub fn dc_potential(layout: &ElectrodeLayout, voltages: &DcVoltages, point: [f64; 3]) -> Result<f64, TrapError> {
    check_height(point)?;
    Ok(layout
        .strips()
        .iter()
        .filter(|s| s.role != Role::Rf)
        .map(|s| voltages.voltage(s.role) * rect_potential_unchecked(s, point))
        .sum())
}

pub(super) fn dc_gradient_unchecked(layout: &ElectrodeLayout, voltages: &DcVoltages, point: [f64; 3]) -> [f64; 3] {
    let mut g = [0.0; 3];
    for s in layout.strips().iter().filter(|s| s.role != Role::Rf) {
        let v = voltages.voltage(s.role);
        if v == 0.0 {
            continue;
        }
        let d = rect_gradient_unchecked(s, point);
        for k in 0..3 {
            g[k] += v * d[k];
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::seeded_rng;
    use rand::Rng;

    fn strip(w: f64, l: f64) -> Strip {
        Strip::new(-w / 2.0, w / 2.0, -l / 2.0, l / 2.0, Role::Rf).unwrap()
    }

    #[test]
    fn decays_far_above() {
        let s = strip(100e-6, 100e-6);
        let v = rect_potential(&s, [0.0, 0.0, 100.0 * 100e-6]).unwrap();
        assert!(v < 1e-3 && v > 0.0);
    }

    #[test]
    fn half_space_limit() {
        let s = strip(1.0, 1.0);
        let v = rect_potential(&s, [0.0, 0.0, 1e-6]).unwrap();
        assert!((v - 1.0).abs() < 1e-4);
    }

    #[test]
    fn below_plane_is_domain_error() {
        let s = strip(1e-4, 1e-4);
        assert!(rect_potential(&s, [0.0, 0.0, 0.0]).is_err());
        assert!(rect_potential(&s, [0.0, 0.0, -1e-6]).is_err());
    }

    #[test]
    fn superposition_of_adjacent_strips() {
        let left = Strip::new(-1e-4, 0.0, -2e-4, 2e-4, Role::Dc(0)).unwrap();
        let right = Strip::new(0.0, 1e-4, -2e-4, 2e-4, Role::Dc(1)).unwrap();
        let joined = Strip::new(-1e-4, 1e-4, -2e-4, 2e-4, Role::Dc(0)).unwrap();
        let p = [3e-5, 1e-5, 7e-5];
        let sum = rect_potential(&left, p).unwrap() + rect_potential(&right, p).unwrap();
        assert!((sum - rect_potential(&joined, p).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn analytic_gradient_matches_refined_differences() {
        let s = Strip::new(-3e-5, 8e-5, -2e-4, 1e-4, Role::Rf).unwrap();
        let mut rng = seeded_rng(5);
        for _ in 0..5 {
            let p = [
                rng.random_range(-1e-4..1e-4),
                rng.random_range(-1e-4..1e-4),
                rng.random_range(3e-5..2e-4),
            ];
            let g = rect_gradient(&s, p).unwrap();
            let scale = g.iter().map(|v| v.abs()).fold(0.0, f64::max);
            for k in 0..3 {
                let diff = |h: f64| {
                    let mut up = p;
                    let mut dn = p;
                    up[k] += h;
                    dn[k] -= h;
                    (rect_potential(&s, up).unwrap() - rect_potential(&s, dn).unwrap()) / (2.0 * h)
                };
                let h = p[2] / 1e3;
                let richardson = (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
                assert!((g[k] - richardson).abs() < 1e-7 * scale, "{k}: {} vs {richardson}", g[k]);
            }
        }
    }

    fn five_wire(v: f64, omega: f64) -> ElectrodeLayout {
        crate::trapfield::FiveWireGeometry::default().layout(v, omega).unwrap()
    }

    #[test]
    fn field_symmetry_and_linearity() {
        let l = five_wire(100.0, 2e8);
        let p = [0.0, 0.0, 7e-5];
        let e = rf_field(&l, p).unwrap();
        let scale = e.iter().map(|v| v.abs()).fold(0.0, f64::max);
        assert!(e[0].abs() <= 1e-12 * scale);
        let e3 = rf_field(&five_wire(300.0, 2e8), p).unwrap();
        for k in 0..3 {
            assert!((e3[k] - 3.0 * e[k]).abs() <= 1e-12 * scale * 3.0);
        }
    }

    #[test]
    fn numeric_field_converges_to_analytic() {
        let l = five_wire(100.0, 2e8);
        let p = [2e-5, 1e-5, 9e-5];
        let e = rf_field(&l, p).unwrap();
        let h = p[2] / 1e4;
        let a = rf_field_numeric(&l, p, h).unwrap();
        let b = rf_field_numeric(&l, p, h / 2.0).unwrap();
        let scale = e.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-6 * scale);
            assert!((e[k] - b[k]).abs() < 1e-6 * scale);
        }
    }

    #[test]
    fn pseudopotential_scalings() {
        let l = five_wire(100.0, 2e8);
        let p = [1e-5, 0.0, 6e-5];
        let ca = pseudopotential(&l, &IonSpecies::CA40, p).unwrap();
        let sr = pseudopotential(&l, &IonSpecies::SR88, p).unwrap();
        assert!((sr / ca - IonSpecies::CA40.mass / IonSpecies::SR88.mass).abs() < 1e-12);
        assert!((sr / ca - 0.4545).abs() < 5e-4);
        let fast = pseudopotential(&five_wire(100.0, 4e8), &IonSpecies::CA40, p).unwrap();
        assert!((fast / ca - 0.25).abs() < 1e-12);
        let off = ElectrodeLayout { rf_voltage_amplitude: 0.0, ..l };
        assert_eq!(pseudopotential(&off, &IonSpecies::CA40, p).unwrap(), 0.0);
    }

    #[test]
    fn harmonic_at_random_points() {
        let s = Strip::new(-5e-5, 5e-5, -3e-4, 3e-4, Role::Rf).unwrap();
        let mut rng = seeded_rng(17);
        for _ in 0..10 {
            let p = [
                rng.random_range(-2e-4..2e-4),
                rng.random_range(-2e-4..2e-4),
                rng.random_range(4e-5..2e-4),
            ];
            // Laplacian as the divergence of the analytic gradient
            let h = p[2] * 1e-4;
            let mut lap = 0.0;
            let mut scale = 0.0_f64;
            for k in 0..3 {
                let mut up = p;
                let mut dn = p;
                up[k] += h;
                dn[k] -= h;
                let d2 = (rect_gradient(&s, up).unwrap()[k] - rect_gradient(&s, dn).unwrap()[k]) / (2.0 * h);
                lap += d2;
                scale = scale.max(d2.abs());
            }
            assert!(lap.abs() < 1e-6 * scale, "laplacian {lap} vs {scale}");
        }
    }
}
