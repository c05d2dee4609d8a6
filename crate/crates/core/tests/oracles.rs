//! Independent numerical oracles for the closed-form field and heat models.

use cryoion::cryotherm::{conduction_load, Material, SupportSpec, SS316_FIT};
use cryoion::magshield::{coil_field, CoilPair};
use cryoion::physcore::seeded_rng;
use cryoion::trapfield::{rect_potential, Role, Strip};
use rand::Rng;
use std::f64::consts::PI;

mod common;

use common::biot_savart_loop;

#[test]
fn coil_field_matches_biot_savart() {
    let pair = CoilPair::helmholtz(0.195, 20.0, 0.5).unwrap();
    let mut rng = seeded_rng(2024);
    for _ in 0..10 {
        let p = [
            rng.random_range(-0.15..0.15),
            rng.random_range(-0.15..0.15),
            rng.random_range(-0.2..0.2),
        ];
        let b = coil_field(&pair, p).unwrap();
        let mut oracle = [0.0; 3];
        for z0 in [-pair.separation / 2.0, pair.separation / 2.0] {
            let part = biot_savart_loop(pair.radius, z0, pair.turns * pair.current, 4096, p);
            for i in 0..3 {
                oracle[i] += part[i];
            }
        }
        let norm = oracle.iter().map(|v| v * v).sum::<f64>().sqrt();
        for i in 0..3 {
            assert!((b[i] - oracle[i]).abs() < 1e-9 * norm, "{p:?}: {b:?} vs {oracle:?}");
        }
    }
}

/// Half-space Dirichlet solution z/(2π)·∬ dx'dy'/R³ over the rectangle, by a
/// 1024 × 1024 midpoint rule.
fn quadrature_potential(s: &Strip, p: [f64; 3]) -> f64 {
    let n = 1024;
    let hx = (s.x_max - s.x_min) / n as f64;
    let hy = (s.y_max - s.y_min) / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let dx = s.x_min + (i as f64 + 0.5) * hx - p[0];
        for j in 0..n {
            let dy = s.y_min + (j as f64 + 0.5) * hy - p[1];
            let r2 = dx * dx + dy * dy + p[2] * p[2];
            sum += 1.0 / (r2 * r2.sqrt());
        }
    }
    p[2] / (2.0 * PI) * sum * hx * hy
}

#[test]
fn rect_potential_matches_surface_quadrature() {
    let s = Strip::new(-30e-6, 50e-6, -40e-6, 60e-6, Role::Rf).unwrap();
    let mut rng = seeded_rng(9);
    for _ in 0..5 {
        let p = [
            rng.random_range(-80e-6..80e-6),
            rng.random_range(-80e-6..80e-6),
            rng.random_range(40e-6..150e-6),
        ];
        let v = rect_potential(&s, p).unwrap();
        let oracle = quadrature_potential(&s, p);
        assert!((v - oracle).abs() < 1e-6, "{p:?}: {v} vs {oracle}");
    }
}

fn ss316(t: f64) -> f64 {
    let x = t.log10();
    let mut e = 0.0;
    for (i, c) in SS316_FIT.iter().enumerate() {
        e += c * x.powi(i as i32);
    }
    10f64.powf(e)
}

/// Composite Simpson integral of the conductivity fit itself.
fn simpson(low: f64, high: f64, n: usize) -> f64 {
    let h = (high - low) / n as f64;
    let mut s = ss316(low) + ss316(high);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * ss316(low + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn tube_load_matches_direct_integration() {
    // Ø60 mm, 0.5 mm wall, 50 mm long between 20 K and 80 K
    let area = PI * 0.060 * 0.5e-3;
    let tube = SupportSpec::thin_tube(0.060, 0.5e-3, 0.050, Material::Ss316, 20.0, 80.0).unwrap();
    let q = conduction_load(&tube).unwrap();
    let oracle = area / 0.050 * simpson(20.0, 80.0, 6000);
    assert!((q / oracle - 1.0).abs() < 1e-3, "{q} vs {oracle}");
    assert!((q - 0.6248).abs() < 0.001, "{q}");
}
